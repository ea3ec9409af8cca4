// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include "doctest.h"
#include "oracles.hpp"
#include "varkg/coeffs.hpp"
#include "varkg/error.hpp"
#include "varkg/potentials.hpp"

using namespace varkg;

namespace
{

CoefficientField Make(const Grid &g, const std::string &bf, std::map<std::string, double> bp,
                      const std::string &cf, std::map<std::string, double> cp)
{
  return CoefficientField(Coefficient(Profile::Make(bf, bp)), Coefficient(Profile::Make(cf, cp)),
                          g);
}

// Paper example b written out independently of the library.
double PaperB(double y, double lambda)
{
  const double a = std::abs(y);
  if (a < 1.0 / lambda)
  {
    return 16.0 * y;
  }
  return (y > 0 ? 1.0 : -1.0) * (16.0 / lambda) * std::exp(-(10.0 / lambda) * (a - 1.0 / lambda));
}

double SechD(double x)
{
  return 1.0 / std::cosh(x);
}

}  // namespace

TEST_SUITE("coeffs")
{
  TEST_CASE("analytic derivatives match finite differences for every family")
  {
    const double h = 1e-6;
    for (const auto &fam : Profile::Families())
    {
      std::map<std::string, double> params;
      if (fam.rfind("paper", 0) == 0)
      {
        params["lambda"] = 13.0;
      }
      else
      {
        params["scale"] = 1.7;
      }
      params["amp"] = -0.6;
      auto p = Profile::Make(fam, params);
      for (double y : {-7.3, -2.2, -0.5, 0.31, 1.9, 6.4})
      {
        double fd = (p.Value(y + h) - p.Value(y - h)) / (2 * h);
        CAPTURE(fam);
        CAPTURE(y);
        CHECK(fd == doctest::Approx(p.Derivative(y)).epsilon(1e-6).scale(1.0));
      }
    }
  }

  TEST_CASE("paper families reproduce the closed forms")
  {
    for (double lambda : {12.5, 13.0, 20.0})
    {
      auto b = Profile::Make("paper-b", {{"lambda", lambda}});
      auto c = Profile::Make("paper-c", {{"lambda", lambda}});
      for (double y : {-3.0, -0.05, 0.0, 0.02, 0.5, 11.0})
      {
        CHECK(b.Value(y) == doctest::Approx(PaperB(y, lambda)).epsilon(1e-14));
        CHECK(c.Value(y) == doctest::Approx(-8.0 * std::pow(lambda, 4) * SechD(2.0 * y / lambda))
                                .epsilon(1e-14));
      }
      CHECK(b.Kinks().size() == 2);
    }
  }

  TEST_CASE("unknown families and parameters are rejected")
  {
    CHECK_THROWS_AS(Profile::Make("cosh"), ParameterError);
    CHECK_THROWS_AS(Profile::Make("sech", {{"lambda", 2.0}}), ParameterError);
    CHECK_THROWS_AS(Profile::Make("paper-b"), ParameterError);
    CHECK_THROWS_AS(Profile::Make("sech", {{"scale", -1.0}}), ParameterError);
    CHECK_THROWS_AS(Profile::Make("sech", {{"amp", NAN}}), ParameterError);
  }

  TEST_CASE("decay metadata is validated at every node")
  {
    Grid g = Grid::Symmetric(20.0, 400);
    auto field = Make(g, "zero", {}, "sech", {});
    CHECK_NOTHROW(field.SetDecay({2.0, 1.0}));
    CHECK_THROWS_AS(field.SetDecay({1.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(field.SetDecay({-1.0, 1.0}), ParameterError);
  }

  TEST_CASE("transform with a == 1 is the identity")
  {
    Grid x = Grid::Symmetric(10.0, 1000);
    std::vector<double> a(x.Size(), 1.0), b(x.Size()), c(x.Size());
    for (int i = 0; i < x.Size(); i++)
    {
      b[i] = 0.3 * std::tanh(x.y(i)) / std::cosh(x.y(i));
      c[i] = -0.5 / std::cosh(x.y(i));
    }
    auto f = TransformToY(x, a, b, c);
    REQUIRE(f.GetGrid().Size() == x.Size());
    for (int i = 0; i < x.Size(); i++)
    {
      CHECK(f.GetGrid().y(i) == doctest::Approx(x.y(i)).epsilon(1e-10).scale(1.0));
      CHECK(f.b()[i] == doctest::Approx(b[i]).epsilon(1e-10).scale(1.0));
      CHECK(f.c()[i] == doctest::Approx(c[i]).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("constant a rescales y and keeps c along characteristics")
  {
    Grid x = Grid::Symmetric(8.0, 800);
    std::vector<double> a(x.Size(), 4.0), b(x.Size(), 0.0), c(x.Size());
    for (int i = 0; i < x.Size(); i++)
    {
      c[i] = std::exp(-x.y(i) * x.y(i));
    }
    auto f = TransformToY(x, a, b, c);
    const Grid &y = f.GetGrid();
    CHECK(y.Back() == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(y.y(y.Nearest(0.0)) == 0.0);
    for (int j = 0; j < y.Size(); j++)
    {
      CHECK(f.b()[j] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
      CHECK(f.c()[j] == doctest::Approx(std::exp(-4.0 * y.y(j) * y.y(j))).epsilon(1e-8).scale(1.0));
    }
    // y-nodes that coincide with x-knots carry c(x) exactly.
    for (int i = 0; i < x.Size(); i += 2)
    {
      int j = y.Nearest(x.y(i) / 2.0);
      CHECK(f.c()[j] == doctest::Approx(c[i]).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("drift picks up the a^{-1/2} factor")
  {
    Grid x = Grid::Symmetric(4.0, 400);
    std::vector<double> a(x.Size(), 4.0), b(x.Size(), 2.0), c(x.Size(), 0.0);
    auto f = TransformToY(x, a, b, c);
    for (int j = 0; j < f.GetGrid().Size(); j += 17)
    {
      CHECK(f.b()[j] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("a = 1 + x^2 maps to y = asinh x with b~ = -tanh y")
  {
    Grid x = Grid::Symmetric(20.0, 40000);
    std::vector<double> a(x.Size()), zero(x.Size(), 0.0);
    for (int i = 0; i < x.Size(); i++)
    {
      a[i] = 1.0 + x.y(i) * x.y(i);
    }
    auto f = TransformToY(x, a, zero, zero);
    const Grid &y = f.GetGrid();
    CHECK(y.Back() == doctest::Approx(std::asinh(20.0)).epsilon(1e-6));
    // Oracle: b~ = -a^{-1/2} d/dy a^{1/2}(sinh y) = -tanh y.
    int checked = 0;
    for (int k = 0; k < 20; k++)
    {
      double yy = -3.0 + 6.0 * k / 19.0;
      int j = y.Nearest(yy);
      double oracle = -std::tanh(y.y(j));
      CHECK(std::abs(f.b()[j] - oracle) < 1e-6);
      checked++;
    }
    CHECK(checked == 20);
    // The map itself against the quadrature oracle.
    double q = testing::Simpson([](double s) { return 1.0 / std::sqrt(1.0 + s * s); }, 0.0, 2.0,
                                2000);
    CHECK(q == doctest::Approx(std::asinh(2.0)).epsilon(1e-12));
  }

  TEST_CASE("transform rejects a <= 0")
  {
    Grid x = Grid::Symmetric(2.0, 20);
    std::vector<double> a(x.Size(), 1.0), z(x.Size(), 0.0);
    a[3] = 0.0;
    CHECK_THROWS_AS(TransformToY(x, a, z, z), ParameterError);
  }

  TEST_CASE("vacuum check: b = c = 0 fails with margin -8 at 0")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    auto r = CheckVacuumAdmissible(Make(g, "zero", {}, "zero", {}), 3.0);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_margin == doctest::Approx(-8.0));
    CHECK(r.worst_location == 0.0);
    CHECK(r.smallest.size() == 3);
    CHECK_THROWS_AS(CheckVacuumAdmissible(Make(g, "zero", {}, "zero", {}), 2.0), ParameterError);
  }

  TEST_CASE("paper example family violates the first inequality near lambda/10")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    for (double lambda : {12.5, 13.0, 16.0, 20.0})
    {
      auto field = Make(g, "paper-b", {{"lambda", lambda}}, "paper-c", {{"lambda", lambda}});
      auto r = CheckVacuumAdmissible(field, lambda);
      CAPTURE(lambda);
      CHECK_FALSE(r.pass);
      CHECK(r.worst_margin < -1.0);
      // Independent pointwise oracle at the reported location.
      double y = r.worst_location;
      double m1 = std::pow(SechD(y / lambda), 2) - 4.0 * lambda * std::tanh(y / lambda) * PaperB(y, lambda);
      CHECK(m1 < 0.0);
      CHECK(r.worst_margin == doctest::Approx(m1).epsilon(1e-12));
    }
  }

  TEST_CASE("steep-tail family passes for lambda in {12.5, 13, 16, 20}")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    for (double lambda : {12.5, 13.0, 16.0, 20.0})
    {
      auto field = Make(g, "paper-b-steep", {{"lambda", lambda}}, "paper-c", {{"lambda", lambda}});
      auto r = CheckVacuumAdmissible(field, lambda);
      CAPTURE(lambda);
      CHECK(r.pass);
      CHECK(r.worst_margin >= 0.0);
    }
  }

  TEST_CASE("lambda = 2.1 with b scaled by 100 fails")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    auto field = Make(g, "paper-b-steep", {{"lambda", 2.1}, {"amp", 100.0}}, "paper-c",
                      {{"lambda", 2.1}});
    CHECK_FALSE(CheckVacuumAdmissible(field, 2.1).pass);
  }

  TEST_CASE("b = 16y without decay fails at large |y|")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    auto field = Make(g, "linear", {{"amp", 16.0}}, "paper-c", {{"lambda", 13.0}});
    auto r = CheckVacuumAdmissible(field, 13.0);
    CHECK_FALSE(r.pass);
    double m1 = std::pow(SechD(10.0 / 13.0), 2) - 4.0 * 13.0 * std::tanh(10.0 / 13.0) * 160.0;
    CHECK(m1 < 0.0);
    CHECK(VacuumMarginAt(field, 13.0, 10.0) <= m1 + 1e-9);
  }

  TEST_CASE("reported worst location reproduces the margin")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    auto f1 = Make(g, "paper-b-steep", {{"lambda", 13.0}}, "paper-c", {{"lambda", 13.0}});
    auto r1 = CheckVacuumAdmissible(f1, 13.0);
    CHECK(VacuumMarginAt(f1, 13.0, r1.worst_location) ==
          doctest::Approx(r1.worst_margin).epsilon(1e-12).scale(1.0));
    auto f2 = Make(g, "y-gauss", {{"amp", -1.0}}, "sech", {{"amp", -1.0}});
    auto r2 = CheckSignConditions(f2);
    CHECK(SignMarginAt(f2, r2.worst_location) ==
          doctest::Approx(r2.worst_margin).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("sign conditions")
  {
    Grid g = Grid::Symmetric(80.0, 16000);
    // b' = (2y^2 - 1) e^{-y^2} < 0 on 0 < y < 1/sqrt 2.
    auto r1 = CheckSignConditions(Make(g, "y-gauss", {{"amp", -1.0}}, "sech", {{"amp", -1.0}}));
    CHECK_FALSE(r1.pass);
    CHECK(std::abs(r1.worst_location) < 1.0 / std::sqrt(2.0));

    auto r2 = CheckSignConditions(Make(g, "zero", {}, "zero", {}));
    CHECK(r2.pass);
    CHECK(r2.worst_margin == 0.0);

    auto r3 = CheckSignConditions(Make(g, "tanh", {{"amp", -1.0}}, "sech", {{"amp", -2.0}}));
    CHECK_FALSE(r3.pass);
  }

  TEST_CASE("kink nodes are flagged and excluded")
  {
    Grid g = Grid::Symmetric(10.0, 1000);
    auto field = Make(g, "zero", {}, "exp-abs", {{"amp", -1.0}});
    auto r = CheckSignConditions(field);
    REQUIRE(r.flagged.size() == 1);
    CHECK(r.flagged[0] == 0.0);
    CHECK_FALSE(r.note.empty());
    for (const auto &s : r.smallest)
    {
      CHECK(s.y != 0.0);
    }
  }

  TEST_CASE("orbital check")
  {
    Grid g = Grid::Symmetric(20.0, 400);
    auto sg = Potential::SineGordon();
    auto r1 = CheckOrbital(Make(g, "zero", {}, "const", {{"amp", -1.0}}), sg, 0.0);
    CHECK(r1.pass);
    CHECK(r1.worst_margin == doctest::Approx(2.0));

    auto r2 = CheckOrbital(Make(g, "zero", {}, "sech", {}), sg, 2.0 * std::numbers::pi);
    CHECK_FALSE(r2.pass);
    CHECK(r2.worst_margin == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    auto phi4 = Potential::Polynomial({0.25, 0.0, -0.5, 0.0, 0.25});
    auto r3 = CheckOrbital(Make(g, "zero", {}, "sech", {}), phi4, 1.0);
    CHECK(r3.pass);
    CHECK(r3.worst_margin == doctest::Approx(1.0));
  }

  TEST_CASE("decay fit")
  {
    Grid g = Grid::Symmetric(20.0, 4000);
    auto e = Make(g, "zero", {}, "exp-abs", {{"amp", 3.0}, {"scale", 0.5}});
    auto fit = FitDecay(g, e.c());
    CHECK(fit.K == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(fit.k == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(fit.bound_holds);

    Grid big = Grid::Symmetric(80.0, 16000);
    auto s = Make(big, "zero", {}, "sech", {});
    auto fs = FitDecay(big, s.c());
    CHECK(std::abs(fs.k - 1.0) < 2e-2);

    auto z = Make(big, "zero", {}, "zero", {});
    auto fz = FitDecay(big, z.c());
    CHECK(fz.negligible);
    CHECK(std::isinf(fz.K));
    CHECK(CheckExpDecay(z).pass);
  }

  TEST_CASE("tabulated coefficients interpolate exactly at nodes")
  {
    Grid g = Grid::Symmetric(5.0, 100);
    std::vector<double> v(g.Size());
    for (int i = 0; i < g.Size(); i++)
    {
      v[i] = std::sin(g.y(i));
    }
    TabulatedProfile t(g, v);
    for (int i = 0; i < g.Size(); i += 7)
    {
      CHECK(t.Value(g.y(i)) == v[i]);
    }
    CHECK(t.Value(0.123) == doctest::Approx(std::sin(0.123)).epsilon(1e-6));
    CHECK(t.Derivative(0.5) == doctest::Approx(std::cos(0.5)).epsilon(1e-3));
    CoefficientField f(Coefficient(t), Coefficient(Profile::Make("zero")), g);
    CHECK(f.Kind() == CoefficientKind::Tabulated);
    CHECK_THROWS_AS(TabulatedProfile(g, std::vector<double>(3, 0.0)), ParameterError);
  }
}
