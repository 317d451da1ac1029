// Microbenchmarks for the per-step kernels: BR1 gradient, the approximate
// Lax-Wendroff expansion, the full step, and metric construction.
#include <benchmark/benchmark.h>

#include <cmath>

#include "lwfr/br1.hpp"
#include "lwfr/solver.hpp"

using namespace lwfr;

namespace {

struct AdvDiffFixture {
  Basis1D basis;
  CurvilinearMesh mesh;
  GeometryField geom;
  AdvDiff eq;
  NodalField u;

  AdvDiffFixture(int degree, int nx)
      : basis(degree),
        mesh(make_cartesian_mesh(nx, nx, Rect{-1, 1, -1, 1}, basis)),
        geom(compute_metrics(mesh, basis)), eq(AdvDiffParams{1.5, 1.0, 0.05}),
        u(mesh.n_elements(), mesh.nodes_per_elem(), 1) {
    for (int e = 0; e < u.ne; ++e)
      for (int n = 0; n < u.nn; ++n)
        eq.exact(mesh.x(e, n), mesh.y(e, n), 0.0, u.at(e, n));
  }
};

struct NsFixture {
  Basis1D basis;
  CurvilinearMesh mesh;
  GeometryField geom;
  NavierStokes eq;
  NodalField u;

  NsFixture(int degree, int nx)
      : basis(degree),
        mesh(make_warped_mesh(nx, nx, 0.05, Rect{-1, 1, -1, 1}, basis)),
        geom(compute_metrics(mesh, basis)),
        eq(NavierStokesParams{1.4, 0.001, 0.72}),
        u(mesh.n_elements(), mesh.nodes_per_elem(), 4) {
    for (int e = 0; e < u.ne; ++e)
      for (int n = 0; n < u.nn; ++n) {
        const double x = mesh.x(e, n), y = mesh.y(e, n);
        double prim[4] = {1.0 + 0.1 * std::sin(M_PI * x),
                          0.2 * std::cos(M_PI * y), 0.1, 10.0};
        eq.conservative(prim, u.at(e, n));
      }
  }
};

void BM_TakeStepAdvDiff(benchmark::State& state) {
  AdvDiffFixture fx(static_cast<int>(state.range(0)), 16);
  SolverOptions opt;
  opt.embedded = true;
  Solver<AdvDiff> solver(fx.mesh, fx.geom, fx.basis, fx.eq, BoundaryTable{}, opt);
  NodalField hi(fx.u.ne, fx.u.nn, 1), lo(fx.u.ne, fx.u.nn, 1);
  const double dt = 1e-4;
  for (auto _ : state) {
    solver.take_step(fx.u, 0.0, dt, hi, &lo);
    benchmark::DoNotOptimize(hi.v.data());
  }
  state.SetItemsProcessed(state.iterations() * fx.u.ne * fx.u.nn);
}
BENCHMARK(BM_TakeStepAdvDiff)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_TakeStepNavierStokes(benchmark::State& state) {
  NsFixture fx(static_cast<int>(state.range(0)), 8);
  SolverOptions opt;
  opt.embedded = true;
  Solver<NavierStokes> solver(fx.mesh, fx.geom, fx.basis, fx.eq, BoundaryTable{}, opt);
  NodalField hi(fx.u.ne, fx.u.nn, 4), lo(fx.u.ne, fx.u.nn, 4);
  const double dt = 1e-4;
  for (auto _ : state) {
    solver.take_step(fx.u, 0.0, dt, hi, &lo);
    benchmark::DoNotOptimize(hi.v.data());
  }
  state.SetItemsProcessed(state.iterations() * fx.u.ne * fx.u.nn);
}
BENCHMARK(BM_TakeStepNavierStokes)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_Gradient(benchmark::State& state) {
  NsFixture fx(static_cast<int>(state.range(0)), 8);
  for (auto _ : state) {
    auto q = compute_auxiliary_gradient(fx.u, fx.mesh, fx.geom, fx.basis,
                                        fx.eq, BoundaryTable{}, 0.0);
    benchmark::DoNotOptimize(q.v.data());
  }
  state.SetItemsProcessed(state.iterations() * fx.u.ne * fx.u.nn);
}
BENCHMARK(BM_Gradient)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_Expansion(benchmark::State& state) {
  NsFixture fx(static_cast<int>(state.range(0)), 8);
  SolverOptions opt;
  opt.embedded = false;
  Solver<NavierStokes> solver(fx.mesh, fx.geom, fx.basis, fx.eq, BoundaryTable{}, opt);
  for (auto _ : state) {
    const auto& tav = solver.expand(fx.u, 0.0, 1e-4);
    benchmark::DoNotOptimize(tav.Fa.data());
  }
  state.SetItemsProcessed(state.iterations() * fx.u.ne * fx.u.nn);
}
BENCHMARK(BM_Expansion)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_ComputeMetrics(benchmark::State& state) {
  Basis1D basis(3);
  auto mesh = make_warped_mesh(16, 16, 0.05, Rect{-1, 1, -1, 1}, basis);
  for (auto _ : state) {
    auto geom = compute_metrics(mesh, basis);
    benchmark::DoNotOptimize(geom.jac.data());
  }
}
BENCHMARK(BM_ComputeMetrics)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
