#include <benchmark/benchmark.h>

#include "losfc/presets.hpp"
#include "losfc/sim.hpp"

namespace losfc {
namespace {

Scenario preset_for(const benchmark::State& state) {
  return state.range(0) == 2 ? two_spacecraft_tracking() : four_spacecraft_sync();
}

void BM_EvaluateControls(benchmark::State& state) {
  const Scenario s = preset_for(state);
  const std::vector<RigidBodyState> x = s.initial_states();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_controls(0.5, x, s));
}
BENCHMARK(BM_EvaluateControls)->Arg(2)->Arg(4);

void BM_Rk4Step(benchmark::State& state) {
  const Scenario s = preset_for(state);
  const std::vector<BodyParams> params = s.params();
  const ControlEvaluator control = [&s](double t, std::span<const RigidBodyState> x) {
    return evaluate_controls(t, x, s);
  };
  std::vector<RigidBodyState> x = s.initial_states();
  double t = 0.0;
  for (auto _ : state) {
    x = rk4_step(x, params, t, s.dt, control);
    t += s.dt;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Rk4Step)->Arg(2)->Arg(4);

void BM_SolveRelativeAttitude(benchmark::State& state) {
  const Rotation R1 = exp_so3(Vec3(0.3, -0.2, 0.5));
  const Rotation R2 = exp_so3(Vec3(-1.0, 0.4, 0.2));
  const LosPairMeasurements m = measure_pair(R1, {Vec3::Zero(), Vec3(0.1, 0, 0)}, R2,
                                             {Vec3(100, 100, 6), Vec3::Zero()}, {Vec3(0, 50, -30), Vec3::Zero()});
  for (auto _ : state) benchmark::DoNotOptimize(solve_relative_attitude(m));
}
BENCHMARK(BM_SolveRelativeAttitude);

}  // namespace
}  // namespace losfc

BENCHMARK_MAIN();
