#include <benchmark/benchmark.h>

#include "kg/evolution.hpp"
#include "kg/groundstate.hpp"
#include "kg/normalform.hpp"
#include "kg/spectral.hpp"

namespace {

using namespace kg;

RadialField gauss(const GridPtr& g) {
  return RadialField::from_real(g, [](double r) { return std::exp(-0.5 * r * r); });
}

void bm_grid_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto g = make_grid(4, 40.0, n);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(bm_grid_build)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void bm_transform(benchmark::State& state) {
  auto g = make_grid(4, 40.0, static_cast<int>(state.range(0)));
  const RadialField f = gauss(g);
  for (auto _ : state) {
    SpectralField F = transform(f);
    benchmark::DoNotOptimize(F.coeffs.data());
  }
}
BENCHMARK(bm_transform)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMicrosecond);

void bm_besov(benchmark::State& state) {
  auto g = make_grid(4, 40.0, static_cast<int>(state.range(0)));
  const RadialField f = gauss(g);
  for (auto _ : state) {
    const double v = besov_norm(f, BesovSpec{2.0, 0.0, 1.0});
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_besov)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void bm_step(benchmark::State& state) {
  auto g = make_grid(4, 40.0, static_cast<int>(state.range(0)));
  SimState s = make_state(0.3 * gauss(g), RadialField::zero(g));
  const Nonlinearity nl = Nonlinearity::quadratic();
  for (auto _ : state) {
    s = step(s, 1e-3, nl);
    benchmark::DoNotOptimize(s.uhat.coeffs.data());
  }
}
BENCHMARK(bm_step)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

void bm_bilinear_apply(benchmark::State& state) {
  auto g = make_grid(3, 40.0, static_cast<int>(state.range(0)));
  const RadialField f = gauss(g);
  const AnalysisParams params;
  auto sym = [&params](double w, double e, double xi) -> Complex {
    const double m = m_ll(w, e, params);
    if (m == 0.0) return Complex(0.0, 0.0);
    return m / Complex(0.0, modulation_phi_from_lengths(xi, w, e, ModulationSpec{+1, +1}));
  };
  for (auto _ : state) {
    RadialField out = bilinear_apply(sym, f, f);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(bm_bilinear_apply)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_ground_state(benchmark::State& state) {
  auto g = make_grid(4, 40.0, 256);
  for (auto _ : state) {
    GroundState q = solve_ground_state(g, 1);
    benchmark::DoNotOptimize(q.b_star);
  }
}
BENCHMARK(bm_ground_state)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
