// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <random>
#include "varkg/error.hpp"
#include "varkg/evolve.hpp"

namespace varkg
{

DataFamily ParseDataFamily(const std::string &name)
{
  if (name == "sech")
  {
    return DataFamily::SechBump;
  }
  if (name == "odd-gauss")
  {
    return DataFamily::OddGauss;
  }
  if (name == "random")
  {
    return DataFamily::RandomSpline;
  }
  throw ParameterError("unknown initial-data family '" + name + "'");
}

Parity ParseParity(const std::string &name)
{
  if (name == "none")
  {
    return Parity::None;
  }
  if (name == "odd")
  {
    return Parity::Odd;
  }
  if (name == "even")
  {
    return Parity::Even;
  }
  throw ParameterError("unknown parity '" + name + "'");
}

double EnergySpaceNorm(const Grid &grid, std::span<const double> v1,
                       std::span<const double> v2)
{
  const double h = grid.Spacing();
  auto d = CentralDiff(v1, h);
  std::vector<double> a(v1.size()), b(v2.size());
  for (std::size_t i = 0; i < v1.size(); i++)
  {
    a[i] = v1[i] * v1[i] + d[i] * d[i];
    b[i] = v2[i] * v2[i];
  }
  return std::sqrt(Trapezoid(a, h)) + std::sqrt(Trapezoid(b, h));
}

namespace
{

double CubicBSpline(double x)
{
  const double a = std::abs(x);
  if (a < 1.0)
  {
    return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
  }
  if (a < 2.0)
  {
    const double r = 2.0 - a;
    return r * r * r / 6.0;
  }
  return 0.0;
}

struct Spline
{
  double center, spacing;
  std::vector<double> coeffs;
  int half;

  double operator()(double y) const
  {
    const double s = (y - center) / spacing;
    double v = 0.0;
    const int k0 = static_cast<int>(std::floor(s)) - 2;
    for (int k = k0; k <= k0 + 4; k++)
    {
      if (k < -half || k > half)
      {
        continue;
      }
      v += coeffs[k + half] * CubicBSpline(s - k);
    }
    return v;
  }
};

}  // namespace

Perturbation MakeInitialPerturbation(const Grid &grid, const InitialDataSpec &spec)
{
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon))
  {
    throw ParameterError("initial-data epsilon must be non-negative");
  }
  if (!(spec.beta > 0.0))
  {
    throw ParameterError("initial-data beta must be positive");
  }
  if (spec.parity != Parity::None && !grid.IsSymmetric())
  {
    throw ParameterError("parity projection needs a symmetric grid");
  }
  const int n = grid.Size();
  Perturbation p;
  p.v1.assign(n, 0.0);
  p.v2.assign(n, 0.0);
  if (spec.epsilon == 0.0)
  {
    return p;
  }
  std::function<double(double)> f1, f2;
  switch (spec.family)
  {
    case DataFamily::SechBump:
      f1 = [&](double y)
      {
        const double x = spec.beta * (y - spec.center);
        return 1.0 / std::cosh(std::min(std::abs(x), 700.0));
      };
      break;
    case DataFamily::OddGauss:
      f1 = [&](double y)
      {
        const double x = y - spec.center;
        return x * std::exp(-spec.beta * x * x);
      };
      break;
    case DataFamily::RandomSpline:
    {
      if (!(spec.knot_spacing > 0.0) || !(spec.support > 0.0))
      {
        throw ParameterError("random spline needs positive knot spacing and support");
      }
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      const int half = static_cast<int>(std::floor(spec.support / spec.knot_spacing));
      Spline s1{spec.center, spec.knot_spacing, {}, half};
      Spline s2 = s1;
      for (int k = -half; k <= half; k++)
      {
        s1.coeffs.push_back(dist(rng));
      }
      for (int k = -half; k <= half; k++)
      {
        s2.coeffs.push_back(dist(rng));
      }
      f1 = s1;
      if (spec.with_velocity)
      {
        f2 = s2;
      }
      break;
    }
  }
  auto sample = [&](const std::function<double(double)> &f, std::vector<double> &out)
  {
    if (!f)
    {
      return;
    }
    for (int i = 0; i < n; i++)
    {
      out[i] = f(grid.y(i));
    }
    if (spec.parity == Parity::None)
    {
      return;
    }
    const double sgn = spec.parity == Parity::Odd ? -1.0 : 1.0;
    std::vector<double> raw = out;
    for (int i = 0; i < n; i++)
    {
      out[i] = 0.5 * (raw[i] + sgn * raw[grid.Mirror(i)]);
    }
  };
  sample(f1, p.v1);
  sample(f2, p.v2);
  // Dirichlet ends.
  p.v1.front() = p.v1.back() = 0.0;
  p.v2.front() = p.v2.back() = 0.0;
  const double norm = EnergySpaceNorm(grid, p.v1, p.v2);
  if (!(norm > 0.0))
  {
    throw ParameterError("initial-data shape vanishes on the grid");
  }
  const double scale = spec.epsilon / norm;
  for (int i = 0; i < n; i++)
  {
    p.v1[i] *= scale;
    p.v2[i] *= scale;
  }
  return p;
}

}  // namespace varkg
