// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include "doctest.h"
#include "varkg/error.hpp"
#include "varkg/potentials.hpp"

using namespace varkg;

namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_SUITE("potentials")
{
  TEST_CASE("sine-Gordon evaluators")
  {
    auto p = Potential::SineGordon();
    for (double u : {-3.0, -0.4, 0.0, 0.7, 2.5, 7.0})
    {
      CHECK(p.F(u) == doctest::Approx(1.0 - std::cos(u)).epsilon(1e-15));
      CHECK(p.dF(u) == doctest::Approx(std::sin(u)).epsilon(1e-15));
      CHECK(p.d2F(u) == doctest::Approx(std::cos(u)).epsilon(1e-15));
      CHECK(p.d3F(u) == doctest::Approx(-std::sin(u)).epsilon(1e-15));
    }
  }

  TEST_CASE("finite differences of F match the next derivative")
  {
    const double h = 1e-5;
    for (auto p : {Potential::SineGordon(), Potential::Polynomial({0.25, 0.0, -0.5, 0.0, 0.25}),
                   Potential::Polynomial({0.0, 0.0, 0.5, -0.3, 0.1})})
    {
      for (double u : {-1.3, -0.2, 0.4, 1.1})
      {
        double fd1 = (p.F(u + h) - p.F(u - h)) / (2 * h);
        double fd2 = (p.dF(u + h) - p.dF(u - h)) / (2 * h);
        double fd3 = (p.d2F(u + h) - p.d2F(u - h)) / (2 * h);
        CHECK(std::abs(fd1 - p.dF(u)) <= 1e-8 * std::max(1.0, std::abs(p.dF(u))));
        CHECK(std::abs(fd2 - p.d2F(u)) <= 1e-8 * std::max(1.0, std::abs(p.d2F(u))));
        CHECK(std::abs(fd3 - p.d3F(u)) <= 1e-8 * std::max(1.0, std::abs(p.d3F(u))));
      }
    }
  }

  TEST_CASE("polynomial needs degree two")
  {
    CHECK_THROWS_AS(Potential::Polynomial({1.0, 2.0}), ParameterError);
    CHECK_THROWS_AS(Potential::Polynomial({1.0, 2.0, 0.0}), ParameterError);
    CHECK_NOTHROW(Potential::Polynomial({0.0, 0.0, 1.0}));
  }

  TEST_CASE("vacuum refinement")
  {
    auto sg = Potential::SineGordon();
    auto v = GetVacuumInfo(sg, 6.2);
    CHECK(v.xi == doctest::Approx(kTwoPi).epsilon(1e-14));
    CHECK(v.mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(GetVacuumInfo(sg, 3.0), ParameterError);

    // (1 - u^2)^2 / 4 = 1/4 - u^2/2 + u^4/4.
    auto dw = Potential::Polynomial({0.25, 0.0, -0.5, 0.0, 0.25});
    auto w = GetVacuumInfo(dw, 0.9);
    CHECK(w.xi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w.mass == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }

  TEST_CASE("vacuum info is invariant under the shift F -> F - F(xi)")
  {
    auto sg = Potential::SineGordon();
    auto a = GetVacuumInfo(sg, 6.2);
    auto shifted = sg.Shifted(0.0);
    auto b = GetVacuumInfo(shifted, 6.2);
    CHECK(a.xi == doctest::Approx(b.xi).epsilon(1e-14));
    CHECK(a.mass == doctest::Approx(b.mass).epsilon(1e-14));
    auto s2 = sg.Shifted(kTwoPi);
    CHECK(s2.F(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s2.dF(0.3) == doctest::Approx(std::sin(0.3)).epsilon(1e-12));
  }

  TEST_CASE("nonlinear remainder about 2 pi")
  {
    auto sg = Potential::SineGordon();
    CHECK(NonlinearRemainder(sg, kTwoPi, 0.0) == 0.0);
    const double expect = -std::sin(0.1) + 0.1;
    CHECK(expect == doctest::Approx(1.6658e-4).epsilon(1e-4));
    CHECK(NonlinearRemainder(sg, kTwoPi, 0.1) == doctest::Approx(expect).epsilon(1e-10));
    CHECK(NonlinearRemainder(sg, kTwoPi, -0.1) == doctest::Approx(-expect).epsilon(1e-10));
  }

  TEST_CASE("remainder is odd and bounded by |eta|^3/6")
  {
    auto sg = Potential::SineGordon();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 200; k++)
    {
      double eta = d(rng);
      for (double xi : {0.0, kTwoPi, 2.0 * kTwoPi})
      {
        double r = NonlinearRemainder(sg, xi, eta);
        CHECK(r == doctest::Approx(-NonlinearRemainder(sg, xi, -eta)).epsilon(1e-12));
        CHECK(std::abs(r) <= std::pow(std::abs(eta), 3) / 6.0 * (1.0 + 1e-12) + 1e-15);
      }
    }
  }

  TEST_CASE("evolution nonlinearity")
  {
    auto sg = Potential::SineGordon();
    std::vector<double> U = {0.0, 0.0, 0.0}, v = {0.0, 0.3, -1.2};
    auto n = EvolutionNonlinearity(sg, U, v);
    CHECK(n[0] == 0.0);
    CHECK(n[1] == doctest::Approx(-std::sin(0.3)).epsilon(1e-14));
    CHECK(n[2] == doctest::Approx(-std::sin(-1.2)).epsilon(1e-14));

    std::vector<double> U2 = {kTwoPi + 0.01}, v2 = {0.2};
    auto m = EvolutionNonlinearity(sg, U2, v2);
    CHECK(m[0] == doctest::Approx(-std::sin(kTwoPi + 0.21) + std::sin(kTwoPi + 0.01)).epsilon(1e-12));

    auto poly = Potential::Polynomial({0.0, 0.0, 0.5, 0.0, 0.25});
    std::vector<double> U3 = {0.5}, v3 = {0.1};
    auto q = EvolutionNonlinearity(poly, U3, v3);
    CHECK(q[0] == doctest::Approx(poly.dF(0.5) - poly.dF(0.6)).epsilon(1e-13));
  }

  TEST_CASE("derivative bounds")
  {
    auto sg = Potential::SineGordon();
    CHECK(sg.MaxAbsD2F(-0.1, 0.1) == doctest::Approx(1.0));
    CHECK(sg.MaxAbsD2F(1.0, 1.2) == doctest::Approx(std::cos(1.0)));
    CHECK(sg.MaxAbsD3F(-0.1, 0.1) == doctest::Approx(std::sin(0.1)));
    auto poly = Potential::Polynomial({0.0, 0.0, 0.5, 0.0, 0.25});
    CHECK(poly.MaxAbsD2F(-1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-6));
  }
}
