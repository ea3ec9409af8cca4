// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include "doctest.h"
#include "oracles.hpp"
#include "varkg/error.hpp"
#include "varkg/evolve.hpp"
#include "varkg/greensolve.hpp"
#include "varkg/simulation.hpp"

using namespace varkg;

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CoefficientField Make(const Grid &g, const std::string &bf, std::map<std::string, double> bp,
                      const std::string &cf, std::map<std::string, double> cp)
{
  return CoefficientField(Coefficient(Profile::Make(bf, bp)), Coefficient(Profile::Make(cf, cp)),
                          g);
}

double Sech(double y)
{
  return 1.0 / std::cosh(y);
}

}  // namespace

TEST_SUITE("evolve")
{
  TEST_CASE("equilibrium stays put")
  {
    Grid g = Grid::Symmetric(20.0, 2000);
    auto field = Make(g, "tanh-sech", {{"amp", -0.1}}, "zero", {});
    const double dt = 0.4 * g.Spacing();
    LeapfrogStepper st(field, Potential::SineGordon(), kTwoPi, SpongeProfile::Make(g), dt);
    FieldState s0{0.0, std::vector<double>(g.Size(), kTwoPi), std::vector<double>(g.Size(), 0.0)};
    st.Start(s0);
    for (int k = 0; k < 1000; k++)
    {
      st.Advance();
    }
    double dev = 0.0;
    for (double u : st.Current())
    {
      dev = std::max(dev, std::abs(u - kTwoPi));
    }
    CHECK(dev < 1e-12);
    CHECK(st.Time() == doctest::Approx(1000 * dt));
  }

  TEST_CASE("steady state is a discrete equilibrium up to truncation")
  {
    Grid g = Grid::Symmetric(40.0, 8000);
    auto field = Make(g, "zero", {}, "sech", {{"amp", -0.05}});
    auto pot = Potential::SineGordon();
    auto ss = ConstructSteadyState(field, pot, kTwoPi);
    REQUIRE(ss.converged);
    auto U = ss.U();
    LeapfrogStepper st(field, pot, kTwoPi, SpongeProfile::Make(g), 0.4 * g.Spacing());
    st.Start({0.0, U, std::vector<double>(g.Size(), 0.0)});
    while (st.Time() < 10.0)
    {
      st.Advance();
    }
    double dev = 0.0;
    for (int i = 0; i < g.Size(); i++)
    {
      dev = std::max(dev, std::abs(st.Current()[i] - U[i]));
    }
    CHECK(dev < 1e-5);
  }

  TEST_CASE("periodic plane wave follows the dispersion relation")
  {
    // Linear Klein-Gordon, period 2 pi, mode number 3.
    const int n = 2000;
    const double P = kTwoPi, dy = P / n, kappa = 3.0;
    Grid g(0.0, 0, dy, n + 1);
    auto field = CoefficientField::Zero(g);
    auto pot = Potential::Polynomial({0.0, 0.0, 0.5});
    const double dt = 0.4 * dy;
    LeapfrogStepper st(field, pot, 0.0, SpongeProfile::None(g), dt, Boundary::Periodic);
    FieldState s0{0.0, std::vector<double>(g.Size()), std::vector<double>(g.Size(), 0.0)};
    for (int i = 0; i < g.Size(); i++)
    {
      s0.u[i] = std::cos(kappa * g.y(i));
    }
    st.Start(s0);
    for (int k = 0; k < 50; k++)
    {
      st.Advance();
    }
    // A single mode obeys u^{n+1} + u^{n-1} = 2 cos(omega dt) u^n.
    int i = 0;
    for (int j = 0; j < g.Size(); j++)
    {
      if (std::abs(st.Current()[j]) > std::abs(st.Current()[i]))
      {
        i = j;
      }
    }
    const double cw = 0.5 * (st.Next()[i] + st.Previous()[i]) / st.Current()[i];
    const double omega = std::acos(cw) / dt;
    const double sk = std::sin(0.5 * kappa * dy) * 2.0 / dy;
    const double discrete = 2.0 / dt * std::asin(0.5 * dt * std::sqrt(sk * sk + 1.0));
    CHECK(omega == doctest::Approx(discrete).epsilon(1e-8));
    CHECK(omega == doctest::Approx(std::sqrt(kappa * kappa + 1.0)).epsilon(1e-4));
  }

  TEST_CASE("energy of the vacuum is zero")
  {
    Grid g = Grid::Symmetric(20.0, 2000);
    auto field = Make(g, "sech2", {}, "zero", {});
    EnergyFunctional E(field, Potential::SineGordon(), kTwoPi);
    std::vector<double> u(g.Size(), kTwoPi), ut(g.Size(), 0.0);
    CHECK(std::abs(E(u, ut)) < 1e-12);
    CHECK(std::abs(E.Background(u)) < 1e-12);
  }

  TEST_CASE("energy weight ratio for b = sech^2")
  {
    Grid g = Grid::Symmetric(30.0, 6000);
    auto field = Make(g, "sech2", {}, "zero", {});
    EnergyFunctional E(field, Potential::SineGordon(), 0.0);
    auto w = E.Omega();
    CHECK(w.back() / w.front() == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
    const int mid = g.Size() / 2;
    CHECK(w[mid] == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
  }

  TEST_CASE("energy of a static bump agrees with refined quadrature")
  {
    // b = sech^2 gives omega = exp(1 + tanh y); c = -0.2 sech.
    const double L = 30.0, amp = 0.01;
    auto integrand = [&](double y)
    {
      const double u = kTwoPi + amp * Sech(y);
      const double uy = -amp * Sech(y) * std::tanh(y);
      const double c = -0.2 * Sech(y);
      const double e = 0.5 * uy * uy - 0.5 * c * u * u + (1.0 - std::cos(u));
      return e * std::exp(1.0 + std::tanh(y));
    };
    // Background contribution -1/2 c xi^2 is part of E; the oracle integrates the same density.
    const double oracle = testing::Simpson(integrand, -L, L, 200000);
    for (int n : {6000, 12000})
    {
      Grid g = Grid::Symmetric(L, n);
      auto field = Make(g, "sech2", {}, "sech", {{"amp", -0.2}});
      EnergyFunctional E(field, Potential::SineGordon(), kTwoPi);
      std::vector<double> u(g.Size()), ut(g.Size(), 0.0);
      for (int i = 0; i < g.Size(); i++)
      {
        u[i] = kTwoPi + amp * Sech(g.y(i));
      }
      CHECK(E(u, ut) == doctest::Approx(oracle).epsilon(1e-4));
    }
  }

  TEST_CASE("energy is conserved by a sponge-free run")
  {
    Grid g = Grid::Symmetric(40.0, 4000);
    auto field = Make(g, "tanh-sech", {{"amp", -0.2}}, "sech", {{"amp", -0.5}});
    auto pot = Potential::SineGordon();
    InitialDataSpec spec;
    spec.family = DataFamily::SechBump;
    spec.epsilon = 0.1;
    auto data = MakeInitialPerturbation(g, spec);
    SimulationConfig cfg;
    cfg.dt = 0.4 * g.Spacing();
    cfg.T = 10.0;
    cfg.energy_mode = true;
    auto r = RunSimulation(field, pot, 0.0, std::vector<double>(g.Size(), 0.0), data,
                           SpongeProfile::None(g), cfg);
    REQUIRE(r.records.size() > 2);
    CHECK(r.max_energy_drift < 1e-3);
  }

  TEST_CASE("zero perturbation gives flat diagnostics")
  {
    Grid g = Grid::Symmetric(30.0, 3000);
    auto field = Make(g, "zero", {}, "sech", {{"amp", -0.05}});
    auto pot = Potential::SineGordon();
    auto ss = ConstructSteadyState(field, pot, kTwoPi);
    Perturbation zero{std::vector<double>(g.Size(), 0.0), std::vector<double>(g.Size(), 0.0)};
    SimulationConfig cfg;
    cfg.dt = 0.4 * g.Spacing();
    cfg.T = 2.0;
    cfg.diag_interval = 0.1;
    cfg.intervals = {{-5.0, 5.0}};
    auto r = RunSimulation(field, pot, kTwoPi, ss.U(), zero, SpongeProfile::Make(g), cfg);
    REQUIRE(r.records.size() == 21);
    // Quadratic in the O(dy^2) steady-state residual drift.
    for (const auto &rec : r.records)
    {
      CHECK(std::abs(rec.I) < 1e-9);
      CHECK(rec.h1w_v1 < 1e-9);
      CHECK(rec.l2w_v2 < 1e-9);
      CHECK(rec.local[0] < 1e-5);
      CHECK(rec.E == doctest::Approx(r.records.front().E).epsilon(1e-9));
    }
  }

  TEST_CASE("sponge profile is zero inside, monotone and C1")
  {
    Grid g = Grid::Symmetric(40.0, 4000);
    auto sp = SpongeProfile::Make(g, 0.2, 2.0);
    CHECK(sp.Active());
    CHECK_FALSE(SpongeProfile::None(g).Active());
    const int mid = g.Size() / 2;
    for (int i = mid; i + 1 < g.Size(); i++)
    {
      CHECK(sp.gamma[i + 1] >= sp.gamma[i]);
      CHECK(sp.gamma[i] == sp.gamma[g.Mirror(i)]);
      if (g.y(i) < 0.8 * 40.0 - 1e-9)
      {
        CHECK(sp.gamma[i] == 0.0);
      }
    }
    CHECK(sp.gamma.back() == doctest::Approx(2.0));
    // Slope at both ends of the ramp vanishes to O(dy) against the peak 1.5 gamma / width.
    const double peak = 1.5 * 2.0 / 8.0;
    const int e = g.Nearest(32.0);
    CHECK((sp.gamma[e + 1] - sp.gamma[e]) / g.Spacing() < 0.01 * peak);
    CHECK((sp.gamma.back() - sp.gamma[g.Size() - 2]) / g.Spacing() < 0.01 * peak);
    CHECK_THROWS_AS(SpongeProfile::Make(g, 0.6), ParameterError);
    CHECK_THROWS_AS(SpongeProfile::Make(g, 0.2, -1.0), ParameterError);
  }

  TEST_CASE("odd data stay odd for odd b, even c and xi = 0")
  {
    Grid g = Grid::Symmetric(30.0, 3000);
    auto field = Make(g, "tanh-sech", {{"amp", -0.1}}, "sech", {{"amp", -0.2}});
    InitialDataSpec spec;
    spec.family = DataFamily::OddGauss;
    spec.epsilon = 0.2;
    auto data = MakeInitialPerturbation(g, spec);
    SimulationConfig cfg;
    cfg.dt = 0.4 * g.Spacing();
    cfg.T = 5.0;
    cfg.track_parity = true;
    auto r = RunSimulation(field, Potential::SineGordon(), 0.0,
                           std::vector<double>(g.Size(), 0.0), data, SpongeProfile::Make(g), cfg);
    CHECK(r.max_even_part < 1e-12);
  }

  TEST_CASE("initial perturbations are scaled to epsilon")
  {
    Grid g = Grid::Symmetric(40.0, 4000);
    const std::vector<std::pair<DataFamily, Parity>> cases = {
        {DataFamily::SechBump, Parity::None},     {DataFamily::SechBump, Parity::Even},
        {DataFamily::OddGauss, Parity::None},     {DataFamily::OddGauss, Parity::Odd},
        {DataFamily::RandomSpline, Parity::None}, {DataFamily::RandomSpline, Parity::Odd},
        {DataFamily::RandomSpline, Parity::Even}};
    for (auto [fam, par] : cases)
    {
      {
        InitialDataSpec spec;
        spec.family = fam;
        spec.parity = par;
        spec.epsilon = 0.03;
        spec.seed = 11;
        auto d = MakeInitialPerturbation(g, spec);
        CHECK(EnergySpaceNorm(g, d.v1, d.v2) == doctest::Approx(0.03).epsilon(1e-12));
        if (par == Parity::Odd)
        {
          for (int i = 0; i < g.Size(); i++)
          {
            CHECK(d.v1[i] == -d.v1[g.Mirror(i)]);
          }
        }
      }
    }
    InitialDataSpec a, b;
    a.seed = b.seed = 5;
    CHECK(MakeInitialPerturbation(g, a).v1 == MakeInitialPerturbation(g, b).v1);
    CHECK(ParseDataFamily("sech") == DataFamily::SechBump);
    CHECK_THROWS_AS(ParseDataFamily("square"), ParameterError);
    CHECK_THROWS_AS(ParseParity("sideways"), ParameterError);
    InitialDataSpec odd_sech;
    odd_sech.family = DataFamily::SechBump;
    odd_sech.parity = Parity::Odd;
    CHECK_THROWS_AS(MakeInitialPerturbation(g, odd_sech), ParameterError);
  }

  TEST_CASE("time step limits")
  {
    Grid g = Grid::Symmetric(20.0, 2000);
    auto field = CoefficientField::Zero(g);
    auto pot = Potential::SineGordon();
    const double dy = g.Spacing();
    CHECK_THROWS_AS(LeapfrogStepper(field, pot, 0.0, SpongeProfile::None(g), 0.5 * dy),
                    ParameterError);
    CHECK_THROWS_AS(LeapfrogStepper(field, pot, 0.0, SpongeProfile::None(g), 0.0),
                    ParameterError);
    CHECK_NOTHROW(LeapfrogStepper(field, pot, 0.0, SpongeProfile::None(g), 0.4 * dy));
    CHECK(StableStepLimit(field, pot) ==
          doctest::Approx(2.0 / std::sqrt(4.0 / (dy * dy) + 1.0)).epsilon(1e-12));
    auto deep = Make(g, "zero", {}, "sech", {{"amp", -1e5}});
    CHECK(StableStepLimit(deep, pot) < 0.4 * dy);
  }

  TEST_CASE("reflection guard in energy mode")
  {
    Grid g = Grid::Symmetric(20.0, 2000);
    auto field = CoefficientField::Zero(g);
    Perturbation zero{std::vector<double>(g.Size(), 0.0), std::vector<double>(g.Size(), 0.0)};
    SimulationConfig cfg;
    cfg.dt = 0.4 * g.Spacing();
    cfg.T = 50.0;
    cfg.energy_mode = true;
    CHECK_THROWS_AS(RunSimulation(field, Potential::SineGordon(), 0.0,
                                  std::vector<double>(g.Size(), 0.0), zero,
                                  SpongeProfile::None(g), cfg),
                    ParameterError);
  }
}
