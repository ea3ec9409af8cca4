// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_POTENTIALS_HPP
#define VARKG_POTENTIALS_HPP

#include <span>
#include <string>
#include <vector>

namespace varkg
{

enum class PotentialFamily
{
  SineGordon,
  Polynomial
};

//
// Scalar potential F with derivatives up to third order. A shifted view evaluates
// F(shift + u) - offset, so the vacuum can be moved to the origin without copying.
//
class Potential
{
public:
  // F(u) = 1 - cos(u).
  static Potential SineGordon();
  // F(u) = sum_k coeffs[k] u^k, degree >= 2.
  static Potential Polynomial(std::vector<double> coeffs);

  // View u -> F(xi + u) - F(xi).
  Potential Shifted(double xi) const;

  double F(double u) const;
  double dF(double u) const;
  double d2F(double u) const;
  double d3F(double u) const;

  // Bounds of |F''| and |F'''| over [lo, hi]; exact for sine-Gordon, dense sampling for
  // polynomials.
  double MaxAbsD2F(double lo, double hi) const;
  double MaxAbsD3F(double lo, double hi) const;

  PotentialFamily Family() const { return family_; }
  const std::vector<double> &Coefficients() const { return coeffs_; }
  double Shift() const { return shift_; }
  double Offset() const { return offset_; }
  std::string Name() const;

private:
  Potential(PotentialFamily family, std::vector<double> coeffs);
  double Derivative(int order, double x) const;

  PotentialFamily family_ = PotentialFamily::SineGordon;
  std::vector<double> coeffs_;
  double shift_ = 0.0;
  double offset_ = 0.0;
};

struct VacuumInfo
{
  double xi = 0.0;
  double mass = 0.0;
  bool shift_valid = false;
};

// Refine a zero of F' near the guess (Newton with bisection fallback within +-0.5) and
// require a strict well F''(xi) > 1e-8.
VacuumInfo GetVacuumInfo(const Potential &potential, double guess);

// -F'(xi + eta) + F''(xi) eta.
double NonlinearRemainder(const Potential &potential, double xi, double eta);

// Pointwise F'(U) - F'(U + v).
void EvolutionNonlinearity(const Potential &potential, std::span<const double> U,
                           std::span<const double> v, std::span<double> out);
std::vector<double> EvolutionNonlinearity(const Potential &potential,
                                          std::span<const double> U,
                                          std::span<const double> v);

}  // namespace varkg

#endif  // VARKG_POTENTIALS_HPP
