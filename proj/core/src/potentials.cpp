// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include "varkg/error.hpp"

namespace varkg
{

Potential::Potential(PotentialFamily family, std::vector<double> coeffs)
  : family_(family), coeffs_(std::move(coeffs))
{
}

Potential Potential::SineGordon()
{
  return Potential(PotentialFamily::SineGordon, {});
}

Potential Potential::Polynomial(std::vector<double> coeffs)
{
  while (!coeffs.empty() && coeffs.back() == 0.0)
  {
    coeffs.pop_back();
  }
  if (coeffs.size() < 3)
  {
    throw ParameterError("polynomial potential must have degree >= 2");
  }
  for (double a : coeffs)
  {
    if (!std::isfinite(a))
    {
      throw ParameterError("polynomial potential has a non-finite coefficient");
    }
  }
  return Potential(PotentialFamily::Polynomial, std::move(coeffs));
}

Potential Potential::Shifted(double xi) const
{
  Potential p = *this;
  p.shift_ = shift_ + xi;
  p.offset_ = offset_ + F(xi);
  return p;
}

double Potential::Derivative(int order, double x) const
{
  if (family_ == PotentialFamily::SineGordon)
  {
    switch (order)
    {
      case 0:
        return 1.0 - std::cos(x);
      case 1:
        return std::sin(x);
      case 2:
        return std::cos(x);
      default:
        return -std::sin(x);
    }
  }
  // Horner on the order-th derivative.
  double s = 0.0;
  const int n = static_cast<int>(coeffs_.size());
  for (int k = n - 1; k >= order; k--)
  {
    double f = 1.0;
    for (int j = 0; j < order; j++)
    {
      f *= (k - j);
    }
    s = s * x + f * coeffs_[k];
  }
  return s;
}

double Potential::F(double u) const
{
  return Derivative(0, shift_ + u) - offset_;
}

double Potential::dF(double u) const
{
  return Derivative(1, shift_ + u);
}

double Potential::d2F(double u) const
{
  return Derivative(2, shift_ + u);
}

double Potential::d3F(double u) const
{
  return Derivative(3, shift_ + u);
}

namespace
{

// Max of |g| over [lo, hi] by dense sampling plus endpoints.
template <typename G>
double SampledMax(G g, double lo, double hi)
{
  if (hi < lo)
  {
    std::swap(lo, hi);
  }
  constexpr int n = 2000;
  double m = 0.0;
  for (int i = 0; i <= n; i++)
  {
    m = std::max(m, std::abs(g(lo + (hi - lo) * i / n)));
  }
  return m;
}

// Max of |sin(x + phase)| over [lo, hi].
double MaxAbsTrig(double lo, double hi, double phase)
{
  if (hi < lo)
  {
    std::swap(lo, hi);
  }
  const double a = lo + phase, b = hi + phase;
  // |sin| peaks at pi/2 + k pi.
  double k = std::ceil((a - 0.5 * std::numbers::pi) / std::numbers::pi);
  if (0.5 * std::numbers::pi + k * std::numbers::pi <= b)
  {
    return 1.0;
  }
  return std::max(std::abs(std::sin(a)), std::abs(std::sin(b)));
}

}  // namespace

double Potential::MaxAbsD2F(double lo, double hi) const
{
  if (family_ == PotentialFamily::SineGordon)
  {
    return MaxAbsTrig(lo + shift_, hi + shift_, 0.5 * std::numbers::pi);
  }
  return SampledMax([this](double u) { return d2F(u); }, lo, hi);
}

double Potential::MaxAbsD3F(double lo, double hi) const
{
  if (family_ == PotentialFamily::SineGordon)
  {
    return MaxAbsTrig(lo + shift_, hi + shift_, 0.0);
  }
  return SampledMax([this](double u) { return d3F(u); }, lo, hi);
}

std::string Potential::Name() const
{
  return family_ == PotentialFamily::SineGordon ? "sine-gordon" : "polynomial";
}

VacuumInfo GetVacuumInfo(const Potential &potential, double guess)
{
  auto f = [&](double x) { return potential.dF(x); };
  double x = guess;
  bool found = false;
  for (int it = 0; it < 50; it++)
  {
    double d = potential.d2F(x);
    if (d == 0.0 || !std::isfinite(d))
    {
      break;
    }
    double nx = x - f(x) / d;
    if (!std::isfinite(nx) || std::abs(nx - guess) > 0.5)
    {
      break;
    }
    x = nx;
    if (std::abs(f(x)) < 1e-12)
    {
      found = true;
      break;
    }
  }
  if (!found)
  {
    // Bisection on the sub-bracket of [guess - 0.5, guess + 0.5] nearest the guess.
    constexpr int m = 200;
    double best_lo = 0.0, best_hi = 0.0, best_dist = std::numeric_limits<double>::max();
    for (int i = 0; i < m; i++)
    {
      double lo = guess - 0.5 + i / static_cast<double>(m);
      double hi = lo + 1.0 / m;
      if (f(lo) * f(hi) <= 0.0)
      {
        double dist = std::abs(0.5 * (lo + hi) - guess);
        if (dist < best_dist)
        {
          best_dist = dist;
          best_lo = lo;
          best_hi = hi;
        }
      }
    }
    if (best_dist == std::numeric_limits<double>::max())
    {
      throw ParameterError("no root of F' within 0.5 of the guess");
    }
    double lo = best_lo, hi = best_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); it++)
    {
      double mid = 0.5 * (lo + hi);
      if (f(lo) * f(mid) <= 0.0)
      {
        hi = mid;
      }
      else
      {
        lo = mid;
      }
    }
    x = 0.5 * (lo + hi);
    // Polish.
    for (int it = 0; it < 5; it++)
    {
      double d = potential.d2F(x);
      if (d == 0.0)
      {
        break;
      }
      double nx = x - f(x) / d;
      if (std::abs(nx - x) > 1e-6)
      {
        break;
      }
      x = nx;
    }
  }
  const double d2 = potential.d2F(x);
  if (!(d2 > 1e-8))
  {
    throw ParameterError("degenerate vacuum: F''(xi) = " + std::to_string(d2) +
                         " is not positive");
  }
  VacuumInfo info;
  info.xi = x;
  info.mass = std::sqrt(d2);
  info.shift_valid = std::abs(potential.dF(x)) < 1e-10;
  return info;
}

double NonlinearRemainder(const Potential &potential, double xi, double eta)
{
  if (potential.Family() == PotentialFamily::SineGordon)
  {
    // sin(X) - sin(X + eta) written without cancellation, plus cos(X) eta.
    const double X = potential.Shift() + xi;
    return 2.0 * std::cos(X + 0.5 * eta) * std::sin(-0.5 * eta) + std::cos(X) * eta;
  }
  return -potential.dF(xi + eta) + potential.d2F(xi) * eta;
}

void EvolutionNonlinearity(const Potential &potential, std::span<const double> U,
                           std::span<const double> v, std::span<double> out)
{
  const std::size_t n = U.size();
  if (v.size() != n || out.size() != n)
  {
    throw ParameterError("EvolutionNonlinearity: sample arrays are not aligned");
  }
  if (potential.Family() == PotentialFamily::SineGordon)
  {
    const double s = potential.Shift();
    for (std::size_t i = 0; i < n; i++)
    {
      out[i] = -2.0 * std::cos(s + U[i] + 0.5 * v[i]) * std::sin(0.5 * v[i]);
    }
    return;
  }
  for (std::size_t i = 0; i < n; i++)
  {
    out[i] = potential.dF(U[i]) - potential.dF(U[i] + v[i]);
  }
}

std::vector<double> EvolutionNonlinearity(const Potential &potential,
                                          std::span<const double> U,
                                          std::span<const double> v)
{
  std::vector<double> out(U.size());
  EvolutionNonlinearity(potential, U, v, out);
  return out;
}

}  // namespace varkg
