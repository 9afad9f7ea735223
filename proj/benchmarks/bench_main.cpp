#include <benchmark/benchmark.h>

#include "ppac/analysis.hpp"
#include "ppac/estimation.hpp"
#include "ppac/figures.hpp"
#include "ppac/polynomial.hpp"
#include "ppac/sampling.hpp"
#include "ppac/simulation.hpp"
#include "ppac/synthesis.hpp"

namespace {

const ppac::Poly kDeadbeat{1, 0, 0, 0, 0};

void BM_PlacePoles(benchmark::State& state) {
  const ppac::ThetaBox box = ppac::example_box();
  const auto samples = ppac::halton_box_samples(box.lo(), box.hi(), 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ppac::synthesize(samples[i++ % samples.size()], kDeadbeat, ppac::ControlMode::Standard));
  }
}
BENCHMARK(BM_PlacePoles);

void BM_PlacePolesStepTracking(benchmark::State& state) {
  const ppac::ThetaBox box = ppac::tracking_box();
  const auto samples = ppac::halton_box_samples(box.lo(), box.hi(), 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ppac::synthesize(samples[i++ % samples.size()], ppac::Poly{1}, ppac::ControlMode::StepTracking));
  }
}
BENCHMARK(BM_PlacePolesStepTracking);

void BM_CharacteristicPolynomial(benchmark::State& state) {
  const Eigen::VectorXd theta = ppac::example_box().midpoint();
  const auto c = ppac::synthesize(theta, kDeadbeat, ppac::ControlMode::Standard);
  const Eigen::MatrixXd a = ppac::closed_loop_matrix(theta, c).entries;
  for (auto _ : state) benchmark::DoNotOptimize(ppac::characteristic_polynomial(a));
}
BENCHMARK(BM_CharacteristicPolynomial);

void BM_JuryTest(benchmark::State& state) {
  const ppac::Poly p{1, -2, 1.5, -0.5, 0.0625};
  for (auto _ : state) benchmark::DoNotOptimize(ppac::jury_stable(p));
}
BENCHMARK(BM_JuryTest);

void BM_EstimatorUpdate(benchmark::State& state) {
  const ppac::ThetaBox box = ppac::example_box();
  auto s = ppac::EstimatorState::make(box.midpoint(), ppac::IdealVariant{}, box);
  const Eigen::Vector4d phi(0.3, -0.1, 0.2, 0.05);
  const double y = phi.dot(ppac::example_theta_star());
  for (auto _ : state) benchmark::DoNotOptimize(ppac::update(s, phi, y));
}
BENCHMARK(BM_EstimatorUpdate);

void BM_SimulateFig1a(benchmark::State& state) {
  const auto cfg = ppac::fig1a_config(ppac::IdealVariant{});
  for (auto _ : state) benchmark::DoNotOptimize(ppac::simulate(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.horizon);
}
BENCHMARK(BM_SimulateFig1a)->Unit(benchmark::kMillisecond);

void BM_SimulateFig2(benchmark::State& state) {
  const auto cfg = ppac::fig2_config();
  for (auto _ : state) benchmark::DoNotOptimize(ppac::simulate(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.horizon);
}
BENCHMARK(BM_SimulateFig2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
