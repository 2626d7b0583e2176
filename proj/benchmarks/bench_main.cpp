#include <benchmark/benchmark.h>

#include <random>

#include "padspec/born.hpp"
#include "padspec/funcalc.hpp"
#include "padspec/spectral.hpp"
#include "padspec/structured.hpp"
#include "padspec/unidiag.hpp"

using namespace padspec;

namespace {

// Upper unitriangular times lower unitriangular with random integer entries:
// invertible over Z with unit determinant.
PMatrix random_unitary(std::mt19937_64& rng, const TowerRef& t, std::size_t n) {
  std::uniform_int_distribution<long> d(-9, 9);
  PMatrix up = PMatrix::identity(t, n), lo = PMatrix::identity(t, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      up(i, j) = PadicScalar::from_int(d(rng), t);
      lo(j, i) = PadicScalar::from_int(d(rng), t);
    }
  return up * lo;
}

PMatrix planted(std::mt19937_64& rng, const TowerRef& t, std::size_t n) {
  std::uniform_int_distribution<long> d(-40, 40);
  const PMatrix u = random_unitary(rng, t, n);
  std::vector<PadicScalar> lam;
  for (std::size_t i = 0; i < n; ++i) lam.push_back(PadicScalar::from_int(d(rng), t));
  return u * PMatrix::diagonal(t, lam) * inverse(u);
}

TowerRef tower_for(std::uint32_t p, std::size_t n) {
  return FieldTower::make(p, 1, false, static_cast<int>(n) * default_slack(p, n) + 8);
}

void BM_ScalarMul(benchmark::State& st) {
  auto t = FieldTower::make(static_cast<std::uint32_t>(st.range(0)), 1, false, 24);
  const PadicScalar x = from_rational(123456789, 1001, t), y = from_rational(-98765, 77, t);
  for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_ScalarMul)->Arg(3)->Arg(11);

void BM_ScalarInverse(benchmark::State& st) {
  auto t = FieldTower::make(static_cast<std::uint32_t>(st.range(0)), 1, false, 24);
  const PadicScalar x = from_rational(123456789, 1001, t);
  for (auto _ : st) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_ScalarInverse)->Arg(3)->Arg(11);

void BM_HenselSqrt(benchmark::State& st) {
  auto t = FieldTower::make(5, 1, false, static_cast<int>(st.range(0)));
  const PadicScalar x = PadicScalar::from_int(-1, t);
  for (auto _ : st) benchmark::DoNotOptimize(hensel_sqrt(x));
}
BENCHMARK(BM_HenselSqrt)->Arg(12)->Arg(24)->Arg(48);

void BM_Inverse(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(1);
  auto t = tower_for(5, n);
  const PMatrix u = random_unitary(rng, t, n);
  for (auto _ : st) benchmark::DoNotOptimize(inverse(u));
}
BENCHMARK(BM_Inverse)->DenseRange(2, 8, 2);

void BM_PartitionOfUnity(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(2);
  auto t = tower_for(5, n);
  PMatrix a = planted(rng, t, n);
  a = normalized(a);
  for (auto _ : st) benchmark::DoNotOptimize(partition_of_unity(a));
}
BENCHMARK(BM_PartitionOfUnity)->DenseRange(2, 8, 2);

void BM_UnitaryDiagonalise(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto p = static_cast<std::uint32_t>(st.range(1));
  std::mt19937_64 rng(3);
  auto t = tower_for(p, n);
  const PMatrix a = planted(rng, t, n);
  for (auto _ : st) benchmark::DoNotOptimize(unitary_diagonalise(a));
}
BENCHMARK(BM_UnitaryDiagonalise)->ArgsProduct({{2, 4, 6, 8}, {3, 11}})->Unit(benchmark::kMillisecond);

void BM_FunctionalCalculus(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::mt19937_64 rng(4);
  auto t = tower_for(5, n);
  const PMatrix a = planted(rng, t, n);
  std::vector<Piece> pieces;
  for (long c = 0; c < 5; ++c)
    pieces.push_back({PDisc::with_exponent(PadicScalar::from_int(c, t), 1), PadicScalar::from_int(c * c + 1, t)});
  const LocallyConstantFn f(std::move(pieces));
  for (auto _ : st) benchmark::DoNotOptimize(apply_locally_constant(f, a));
}
BENCHMARK(BM_FunctionalCalculus)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_SeriesCalculus(benchmark::State& st) {
  auto t = FieldTower::make(5, 1, false, 20);
  std::map<long long, PadicScalar> c;
  for (long long k = -3; k <= 3; ++k) c.emplace(k, PadicScalar::from_int(k * k + 1, t));
  const TateSeries f(t, std::move(c));
  const long long half = st.range(0) / 2;
  const WindowOperator w = make_window(t, WindowKind::Shift, -half, half);
  for (auto _ : st) benchmark::DoNotOptimize(series_calculus(f, w));
}
BENCHMARK(BM_SeriesCalculus)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BornProbability(benchmark::State& st) {
  const std::size_t n = 4;
  std::mt19937_64 rng(5);
  auto t = tower_for(5, n);
  const PMatrix a = planted(rng, t, n);
  const StateVector psi(t, {PadicScalar::one(t), PadicScalar::from_int(2, t), PadicScalar::from_int(5, t),
                            PadicScalar::from_int(-1, t)});
  const MeasurableSet s({PDisc::with_exponent(PadicScalar::zero(t), 1)});
  for (auto _ : st) benchmark::DoNotOptimize(born_probability(a, psi, s));
}
BENCHMARK(BM_BornProbability)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
