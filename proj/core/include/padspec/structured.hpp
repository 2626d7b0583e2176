#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "padspec/pmatrix.hpp"

namespace padspec {

/// Finite windows [lo, hi] of infinite banded operators on c_0(Z).
///   shift     M[n-1][n] = 1
///   toeplitz  the same band on indices >= 0
///   fractal1  M[n][n] = n, M[n][n+k] = p^k
///   fractal2  M[n][n] = n, M[n][n+1] = p
///   banded    M[n][n+k] = b_k for caller-supplied bands
enum class WindowKind { Shift, Toeplitz, Fractal1, Fractal2, Banded };

std::string_view window_kind_name(WindowKind k);
std::optional<WindowKind> parse_window_kind(std::string_view s);

struct WindowOperator {
  WindowKind kind = WindowKind::Shift;
  long long lo = 0, hi = -1;
  PMatrix matrix;

  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  long long index(std::size_t i) const { return lo + static_cast<long long>(i); }
};

WindowOperator make_window(const TowerRef& tower, WindowKind kind, long long lo, long long hi);
WindowOperator banded_window(const TowerRef& tower, long long lo, long long hi, const std::map<long long, PadicScalar>& bands);

/// Finitely supported Laurent series sum F_n T^n with the Gauss norm.
class TateSeries {
 public:
  TateSeries() = default;
  TateSeries(TowerRef tower, std::map<long long, PadicScalar> coeffs);

  const TowerRef& tower() const { return tower_; }
  const std::map<long long, PadicScalar>& coeffs() const { return c_; }
  PadicScalar coefficient(long long n) const;
  bool one_sided() const { return c_.empty() || c_.begin()->first >= 0; }
  /// max |n| over the support (0 for the zero series).
  long long reach() const;
  Norm gauss_norm() const;

  friend TateSeries operator+(const TateSeries& a, const TateSeries& b);
  friend TateSeries operator*(const TateSeries& a, const TateSeries& b);

 private:
  TowerRef tower_;
  std::map<long long, PadicScalar> c_;  // zero coefficients are dropped
};

/// A window result with the entries that carry a contract.
struct MaskedMatrix {
  PMatrix value;
  std::size_t margin = 0;  // rows and columns closer than this to an edge are unchecked
  std::vector<bool> flagged;  // row-major; entries withheld for lost precision

  bool interior(std::size_t i, std::size_t j) const {
    const std::size_t n = value.rows();
    return i >= margin && j >= margin && i + margin < n && j + margin < n;
  }
  bool is_flagged(std::size_t i, std::size_t j) const { return !flagged.empty() && flagged[i * value.cols() + j]; }
};

/// F(M) on the window. Two-sided series are allowed on the shift only, whose
/// inverse is the transposed window. WindowTooNarrow unless width >= 4 reach.
MaskedMatrix series_calculus(const TateSeries& f, const WindowOperator& w);

struct GaussReport {
  Norm gauss;
  Norm interior;
  bool equal = false;
};

/// Largest interior entry of F(M) against the Gauss norm of F.
GaussReport gauss_isometry_check(const TateSeries& f, const WindowOperator& w);

using IntegerFn = std::function<PadicScalar(long long)>;

/// Backward difference d^k F(n) = sum_j (-1)^j C(k, j) F(n - j).
PadicScalar backward_difference(const IntegerFn& f, long long n, int k, const TowerRef& tower);

/// Closed form of F(M) for the fractal windows: F(n) on the diagonal and, at
/// (n, n+k), p^k dF(n+k) for fractal1 and p^k d^k F(n+k) / k! for fractal2.
/// Fractal2 entries whose k! costs more than the slack are flagged.
MaskedMatrix fractal_continuous_calculus(const IntegerFn& f, const WindowOperator& w, int slack = -1);

/// Coordinates n = j mod p of a fractal1 window, shifted by j and divided by
/// p, are again upper triangular with consecutive integers on the diagonal and
/// |entry (m, m+k)| <= p^-k.
bool fractal_self_similar(const WindowOperator& w, std::uint32_t j);

}  // namespace padspec
