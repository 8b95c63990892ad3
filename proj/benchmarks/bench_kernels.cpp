#include <benchmark/benchmark.h>

#include <random>

#include "dscflow/coarsen.hpp"
#include "dscflow/connection.hpp"
#include "dscflow/pressure.hpp"
#include "dscflow/reflection.hpp"
#include "dscflow/scenarios.hpp"
#include "dscflow/sim.hpp"

using namespace dscflow;

namespace {

Scenario cavity(int n) {
  Scenario s = build_scenario("cavity", n);
  // Spin the cavity up so that the kernels see a realistic state.
  const Stepper stepper(s.mesh, s.config);
  for (int k = 1; k <= 50; ++k) stepper.step(s.initial, k);
  return s;
}

void BM_ConnectionSweep(benchmark::State& st) {
  Scenario s = cavity(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    connection_sweep(s.mesh, s.initial, FieldMask::transport());
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.mesh.num_cells()));
}

void BM_ReflectionSweep(benchmark::State& st) {
  Scenario s = cavity(static_cast<int>(st.range(0)));
  const std::vector<double> q;
  for (auto _ : st) {
    FieldState copy = s.initial;
    reflection_sweep(s.mesh, copy, s.config.props, q, s.config.tau);
    benchmark::DoNotOptimize(copy.node(Field::T, 0));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.mesh.num_cells()));
}

void BM_CoarsenSweep(benchmark::State& st) {
  Scenario s = cavity(static_cast<int>(st.range(0)));
  CoarseningConfig cfg;
  for (auto _ : st) {
    coarsen_sweep(s.mesh, s.initial, cfg, cfg.period);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.mesh.num_cells()));
}

void BM_PressureSolve(benchmark::State& st) {
  Scenario s = cavity(static_cast<int>(st.range(0)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  FieldState perturbed = s.initial;
  for (std::size_t c = 0; c < s.mesh.num_cells(); ++c) {
    for (int f = 0; f < 6; ++f) {
      const FaceLink& l = s.mesh.link(c, f);
      if (!l.interior() || static_cast<std::size_t>(l.cell) < c) continue;
      const Vec3 v = perturbed.port_velocity(c, f) + Vec3(u(rng), u(rng), 0.0);
      perturbed.set_port_velocity(c, f, v);
      perturbed.set_port_velocity(static_cast<std::size_t>(l.cell), l.face, v);
    }
  }
  int iterations = 0;
  for (auto _ : st) {
    FieldState copy = perturbed;
    iterations = pressure_iterate(s.mesh, copy, s.config.tau, s.config.props.rho_inf, s.config.pressure).iterations;
  }
  st.counters["iterations"] = iterations;
}

void BM_FullStep(benchmark::State& st) {
  Scenario s = cavity(static_cast<int>(st.range(0)));
  const Stepper stepper(s.mesh, s.config);
  std::int64_t k = 51;
  for (auto _ : st) stepper.step(s.initial, k++);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.mesh.num_cells()));
}

}  // namespace

BENCHMARK(BM_ConnectionSweep)->Arg(16)->Arg(64);
BENCHMARK(BM_ReflectionSweep)->Arg(16)->Arg(64);
BENCHMARK(BM_CoarsenSweep)->Arg(16)->Arg(64);
BENCHMARK(BM_PressureSolve)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
