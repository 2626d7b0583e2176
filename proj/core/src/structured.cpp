#include "padspec/structured.hpp"

#include <algorithm>

namespace padspec {

std::string_view window_kind_name(WindowKind k) {
  switch (k) {
    case WindowKind::Shift: return "shift";
    case WindowKind::Toeplitz: return "toeplitz";
    case WindowKind::Fractal1: return "fractal1";
    case WindowKind::Fractal2: return "fractal2";
    case WindowKind::Banded: return "banded";
  }
  return "?";
}

std::optional<WindowKind> parse_window_kind(std::string_view s) {
  for (WindowKind k : {WindowKind::Shift, WindowKind::Toeplitz, WindowKind::Fractal1, WindowKind::Fractal2,
                       WindowKind::Banded})
    if (window_kind_name(k) == s) return k;
  return std::nullopt;
}

namespace {

void check_bounds(long long lo, long long hi) {
  if (hi < lo) fail(Errc::InvalidArgument, "empty window");
  if (hi - lo >= 4096) fail(Errc::InvalidArgument, "window wider than 4096");
}

}  // namespace

WindowOperator make_window(const TowerRef& tower, WindowKind kind, long long lo, long long hi) {
  check_bounds(lo, hi);
  if (kind == WindowKind::Toeplitz && lo < 0) fail(Errc::InvalidArgument, "toeplitz windows live on indices >= 0");
  if (kind == WindowKind::Banded) fail(Errc::InvalidArgument, "banded windows need explicit bands");
  WindowOperator w{kind, lo, hi, PMatrix(tower, static_cast<std::size_t>(hi - lo + 1), static_cast<std::size_t>(hi - lo + 1))};
  const std::size_t n = w.size();
  const PadicScalar one = PadicScalar::one(tower);
  const PadicScalar p = PadicScalar::from_int(tower->p(), tower);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case WindowKind::Shift:
      case WindowKind::Toeplitz:
        if (i + 1 < n) w.matrix(i, i + 1) = one;
        break;
      case WindowKind::Fractal1: {
        w.matrix(i, i) = PadicScalar::from_int(w.index(i), tower);
        PadicScalar pk = p;
        for (std::size_t j = i + 1; j < n; ++j, pk = pk * p) w.matrix(i, j) = pk;
        break;
      }
      case WindowKind::Fractal2:
        w.matrix(i, i) = PadicScalar::from_int(w.index(i), tower);
        if (i + 1 < n) w.matrix(i, i + 1) = p;
        break;
      case WindowKind::Banded: break;
    }
  }
  return w;
}

WindowOperator banded_window(const TowerRef& tower, long long lo, long long hi, const std::map<long long, PadicScalar>& bands) {
  check_bounds(lo, hi);
  const auto n = static_cast<long long>(hi - lo + 1);
  WindowOperator w{WindowKind::Banded, lo, hi, PMatrix(tower, static_cast<std::size_t>(n), static_cast<std::size_t>(n))};
  for (const auto& [k, b] : bands)
    for (long long i = 0; i < n; ++i)
      if (i + k >= 0 && i + k < n) w.matrix(i, i + k) = b;
  return w;
}

TateSeries::TateSeries(TowerRef tower, std::map<long long, PadicScalar> coeffs) : tower_(std::move(tower)) {
  for (auto& [n, c] : coeffs)
    if (!c.is_zero()) c_.emplace(n, std::move(c));
}

PadicScalar TateSeries::coefficient(long long n) const {
  const auto it = c_.find(n);
  return it == c_.end() ? PadicScalar::zero(tower_) : it->second;
}

long long TateSeries::reach() const {
  if (c_.empty()) return 0;
  return std::max(std::abs(c_.begin()->first), std::abs(c_.rbegin()->first));
}

Norm TateSeries::gauss_norm() const {
  Norm out = Norm::null();
  for (const auto& [n, c] : c_) out = std::max(out, c.norm_bound());
  return out;
}

TateSeries operator+(const TateSeries& a, const TateSeries& b) {
  std::map<long long, PadicScalar> out = a.c_;
  for (const auto& [n, c] : b.c_) {
    auto it = out.find(n);
    if (it == out.end()) out.emplace(n, c);
    else it->second = it->second + c;
  }
  return TateSeries(a.tower_ ? a.tower_ : b.tower_, std::move(out));
}

TateSeries operator*(const TateSeries& a, const TateSeries& b) {
  std::map<long long, PadicScalar> out;
  for (const auto& [n, x] : a.c_)
    for (const auto& [m, y] : b.c_) {
      auto it = out.find(n + m);
      if (it == out.end()) out.emplace(n + m, x * y);
      else it->second = it->second + x * y;
    }
  return TateSeries(a.tower_ ? a.tower_ : b.tower_, std::move(out));
}

MaskedMatrix series_calculus(const TateSeries& f, const WindowOperator& w) {
  const TowerRef& tower = w.matrix.tower();
  const std::size_t n = w.size();
  const auto d = static_cast<std::size_t>(f.reach());
  if (n < 4 * d) fail(Errc::WindowTooNarrow, "width " + std::to_string(n) + " < 4 * " + std::to_string(d));
  if (!f.one_sided() && w.kind != WindowKind::Shift)
    fail(Errc::InvalidArgument, "negative powers need an invertible window operator (shift)");
  MaskedMatrix out{PMatrix(tower, n, n), d, {}};
  {
    PMatrix power = PMatrix::identity(tower, n);
    long long k = 0;
    for (const auto& [e, c] : f.coeffs()) {
      if (e < 0) continue;
      while (k < e) {
        power = power * w.matrix;
        ++k;
      }
      out.value = out.value + power.scaled(c);
    }
  }
  if (!f.one_sided()) {
    std::map<long long, PadicScalar> neg;
    for (const auto& [e, c] : f.coeffs())
      if (e < 0) neg.emplace(-e, c);
    PMatrix power = PMatrix::identity(tower, n);
    const PMatrix inv = w.matrix.transpose();
    long long k = 0;
    for (const auto& [e, c] : neg) {
      while (k < e) {
        power = power * inv;
        ++k;
      }
      out.value = out.value + power.scaled(c);
    }
  }
  return out;
}

GaussReport gauss_isometry_check(const TateSeries& f, const WindowOperator& w) {
  const MaskedMatrix fm = series_calculus(f, w);
  GaussReport rep;
  rep.gauss = f.gauss_norm();
  rep.interior = Norm::null();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (fm.interior(i, j)) rep.interior = std::max(rep.interior, fm.value(i, j).norm_bound());
  rep.equal = rep.gauss == rep.interior;
  return rep;
}

PadicScalar backward_difference(const IntegerFn& f, long long n, int k, const TowerRef& tower) {
  PadicScalar acc = PadicScalar::zero(tower);
  mpz_class binom = 1;
  for (int j = 0; j <= k; ++j) {
    const PadicScalar term = PadicScalar::from_mpz(binom, tower) * f(n - j);
    acc = (j % 2 == 0) ? acc + term : acc - term;
    binom = binom * (k - j) / (j + 1);
  }
  return acc;
}

MaskedMatrix fractal_continuous_calculus(const IntegerFn& f, const WindowOperator& w, int slack) {
  if (w.kind != WindowKind::Fractal1 && w.kind != WindowKind::Fractal2)
    fail(Errc::InvalidArgument, "fractal calculus needs a fractal1 or fractal2 window");
  const TowerRef& tower = w.matrix.tower();
  const std::size_t n = w.size();
  const int s = slack < 0 ? default_slack(tower->p(), n) : slack;
  MaskedMatrix out{PMatrix(tower, n, n), 0, std::vector<bool>(n * n, false)};
  const bool second = w.kind == WindowKind::Fractal2;
  const mpz_class p = tower->p();
  for (std::size_t i = 0; i < n; ++i) {
    out.value(i, i) = f(w.index(i));
    mpz_class pk = 1, fact = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      const int k = static_cast<int>(j - i);
      pk *= p;
      fact *= k;
      const long long col = w.index(j);
      if (!second) {
        out.value(i, j) = PadicScalar::from_mpz(pk, tower) * backward_difference(f, col, 1, tower);
        continue;
      }
      int lost = 0;
      for (mpz_class q = fact; q % p == 0; q /= p) ++lost;
      if (lost > s) out.flagged[i * n + j] = true;
      out.value(i, j) = from_rational(pk, fact, tower) * backward_difference(f, col, k, tower);
    }
  }
  return out;
}

bool fractal_self_similar(const WindowOperator& w, std::uint32_t j) {
  if (w.kind != WindowKind::Fractal1) fail(Errc::InvalidArgument, "self-similarity is stated for fractal1");
  const TowerRef& tower = w.matrix.tower();
  const long long p = tower->p();
  if (j >= static_cast<std::uint32_t>(p)) fail(Errc::InvalidArgument, "class index must be below p");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (((w.index(i) % p) + p) % p == static_cast<long long>(j)) idx.push_back(i);
  const PadicScalar shift = PadicScalar::from_int(j, tower);
  const PadicScalar inv_p = from_rational(1, p, tower);
  const std::size_t m = idx.size();
  if (m == 0) return true;
  const long long base = (w.index(idx[0]) - static_cast<long long>(j)) / p;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      PadicScalar x = w.matrix(idx[a], idx[b]);
      if (a == b) x = x - shift;
      x = x * inv_p;
      if (b < a) {
        if (!x.is_zero()) return false;
      } else if (a == b) {
        if (!congruent(x, PadicScalar::from_int(base + static_cast<long long>(a), tower), tower->cap_v2() - 2))
          return false;
      } else if (!x.negligible(2 * static_cast<int>(b - a))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace padspec
