// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>
#include <cmath>
#include <numbers>
#include "varkg/evolve.hpp"
#include "varkg/greensolve.hpp"
#include "varkg/virial.hpp"

namespace
{

using namespace varkg;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CoefficientField Moderate(const Grid &g)
{
  return CoefficientField(Coefficient(Profile::Make("tanh-sech", {{"amp", -0.2}})),
                          Coefficient(Profile::Make("sech", {{"amp", -0.3}})), g);
}

std::vector<double> Bump(const Grid &g, double amp)
{
  std::vector<double> v(g.Size());
  for (int i = 0; i < g.Size(); i++)
  {
    v[i] = amp / std::cosh(g.y(i));
  }
  return v;
}

void BM_LeapfrogStep(benchmark::State &state)
{
  Grid g = Grid::Symmetric(80.0, static_cast<int>(state.range(0)));
  auto field = Moderate(g);
  LeapfrogStepper st(field, Potential::SineGordon(), 0.0, SpongeProfile::Make(g),
                     0.4 * g.Spacing());
  st.Start({0.0, Bump(g, 0.1), std::vector<double>(g.Size(), 0.0)});
  for (auto _ : state)
  {
    st.Advance();
    benchmark::DoNotOptimize(st.Current().data());
  }
  state.SetItemsProcessed(state.iterations() * g.Size());
}
BENCHMARK(BM_LeapfrogStep)->Arg(4000)->Arg(16000)->Arg(64000);

void BM_GreensApply(benchmark::State &state)
{
  Grid g = Grid::Symmetric(40.0, static_cast<int>(state.range(0)));
  auto field = Moderate(g);
  GreenOperator green(SolveJost(field, 1.0, 0.0), field);
  auto eta = Bump(g, 1.0);
  for (auto _ : state)
  {
    auto out = GreensApply(green, eta);
    benchmark::DoNotOptimize(out.value.data());
  }
  state.SetItemsProcessed(state.iterations() * g.Size());
}
BENCHMARK(BM_GreensApply)->Arg(4000)->Arg(16000)->Arg(64000);

void BM_SolveJost(benchmark::State &state)
{
  Grid g = Grid::Symmetric(40.0, static_cast<int>(state.range(0)));
  auto field = Moderate(g);
  for (auto _ : state)
  {
    auto j = SolveJost(field, 1.0, 0.0);
    benchmark::DoNotOptimize(j.P.data());
  }
}
BENCHMARK(BM_SolveJost)->Arg(4000)->Arg(16000);

void BM_VirialRate(benchmark::State &state)
{
  Grid g = Grid::Symmetric(80.0, static_cast<int>(state.range(0)));
  auto field = Moderate(g);
  VirialFrame frame(g, 13.0);
  auto v = Bump(g, 0.1);
  auto dv = CentralDiff(v, g.Spacing());
  std::vector<double> U(g.Size(), 0.0);
  auto pot = Potential::SineGordon();
  for (auto _ : state)
  {
    auto r = ComputeVirialRate(frame, v, dv, field, pot, U);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * g.Size());
}
BENCHMARK(BM_VirialRate)->Arg(16000)->Arg(64000);

void BM_SteadyState(benchmark::State &state)
{
  Grid g = Grid::Symmetric(40.0, static_cast<int>(state.range(0)));
  auto field = CoefficientField(Coefficient(Profile::Make("zero", {})),
                                Coefficient(Profile::Make("sech", {{"amp", -0.05}})), g);
  for (auto _ : state)
  {
    auto st = ConstructSteadyState(field, Potential::SineGordon(), kTwoPi);
    benchmark::DoNotOptimize(st.u_delta.data());
  }
}
BENCHMARK(BM_SteadyState)->Arg(8000)->Arg(32000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
