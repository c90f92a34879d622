#include <benchmark/benchmark.h>

#include "jspec/catalog.hpp"
#include "jspec/classification.hpp"
#include "jspec/operational.hpp"
#include "jspec/symmetry.hpp"

using namespace jspec;

namespace {

ExecPolicy policy(const benchmark::State& s) { return s.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial; }

Polytope cross4() {
  std::vector<ExactVector> vs;
  for (int k = 0; k < 4; ++k)
    for (int sign : {1, -1}) {
      ExactVector v(4);
      v[k] = sign;
      vs.push_back(v);
    }
  return Polytope(vs, "cross4");
}

void BM_FaceCertificates(benchmark::State& s) {
  const Polytope p = cube();
  for (auto _ : s) benchmark::DoNotOptimize(exposed_faces(p, 14, policy(s)));
}

void BM_DistinguishableSubsets(benchmark::State& s) {
  const Polytope p = octahedron();
  for (auto _ : s) benchmark::DoNotOptimize(distinguishable_subsets(p, 2, policy(s)));
}

void BM_SampledSpectrality(benchmark::State& s) {
  const Polytope p = cross4();
  SpectralityOptions opt;
  opt.samples = 500;
  opt.seed = 3;
  opt.policy = policy(s);
  for (auto _ : s) benchmark::DoNotOptimize(is_spectral(p, opt));
}

void BM_EjaTransporterTrials(benchmark::State& s) {
  const auto alg = AlgebraDescriptor::make(Family::HermC, 4);
  for (auto _ : s) benchmark::DoNotOptimize(verify_strong_symmetry_eja(alg, 50, 1, 1e-8, policy(s)));
}

void BM_TheoremDriver(benchmark::State& s) {
  const auto alg = AlgebraDescriptor::make(Family::SymR, 3);
  for (auto _ : s) benchmark::DoNotOptimize(verify_main_theorem_if_direction(alg, 20, 1, policy(s)));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_FaceCertificates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistinguishableSubsets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledSpectrality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EjaTransporterTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremDriver)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
