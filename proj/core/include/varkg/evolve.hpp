// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_EVOLVE_HPP
#define VARKG_EVOLVE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>
#include "varkg/coeffs.hpp"
#include "varkg/grid.hpp"
#include "varkg/potentials.hpp"

namespace varkg
{

// Damping rate gamma(y) >= 0, zero on the interior and ramped with the C1 smoothstep
// 3s^2 - 2s^3 over the outer width fraction of each half.
struct SpongeProfile
{
  std::vector<double> gamma;
  double width_fraction = 0.2;
  double gamma_max = 1.0;

  static SpongeProfile Make(const Grid &grid, double width_fraction = 0.2,
                            double gamma_max = 1.0);
  static SpongeProfile None(const Grid &grid);
  bool Active() const;
};

struct FieldState
{
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ut;
};

enum class Boundary
{
  Dirichlet,
  // Node N identified with node 0; test-only.
  Periodic
};

// Largest stable leapfrog step for the linearisation about |u| values in the well:
// 2 / sqrt(4/dy^2 + max(F'' - c)).
double StableStepLimit(const CoefficientField &field, const Potential &potential);

//
// Explicit leapfrog for u_tt = u_yy + b u_y + c u - F'(u) - gamma u_t with Dirichlet
// u = xi at both ends. Holds three levels so that State() can return the centred
// velocity (u^{n+1} - u^{n-1}) / (2 dt) at the current level.
//
class LeapfrogStepper
{
public:
  LeapfrogStepper(const CoefficientField &field, const Potential &potential, double xi,
                  SpongeProfile sponge, double dt, Boundary boundary = Boundary::Dirichlet);

  // Two-level start from (u0, u1) by a Taylor step.
  void Start(const FieldState &initial);
  void Advance();

  double Time() const { return t_; }
  double Dt() const { return dt_; }
  long Steps() const { return steps_; }
  std::span<const double> Current() const { return cur_; }
  std::span<const double> Previous() const { return prev_; }
  std::span<const double> Next() const { return next_; }
  // Centred velocity at the current level.
  void Velocity(std::span<double> out) const;
  FieldState State() const;

private:
  void Rhs(std::span<const double> u, std::span<double> out) const;
  void Step(std::span<const double> um, std::span<const double> u, std::span<double> up) const;
  void CheckFinite(std::span<const double> u) const;

  const CoefficientField &field_;
  Potential potential_;
  double xi_;
  SpongeProfile sponge_;
  double dt_;
  Boundary boundary_;
  double t_ = 0.0;
  long steps_ = 0;
  std::vector<double> prev_, cur_, next_;
  mutable std::vector<double> rhs_;
};

// One leapfrog step: up = 2u - um + dt^2 RHS(u), with pointwise sponge damping.
void LeapfrogStep(const CoefficientField &field, const Potential &potential, double xi,
                  const SpongeProfile &sponge, double dt, std::span<const double> um,
                  std::span<const double> u, std::span<double> up);

//
// E = int [1/2 u_t^2 + 1/2 u_y^2 - 1/2 c u^2 + F(u) - F(xi)] omega with
// omega = exp(int_{-inf}^y b). The gradient term uses forward differences with omega at
// midpoints, matching the conservation structure of the stencil.
//
class EnergyFunctional
{
public:
  EnergyFunctional(const CoefficientField &field, const Potential &potential, double xi);

  double operator()(std::span<const double> u, std::span<const double> ut) const;
  // E of the steady background (u = U, u_t = 0).
  double Background(std::span<const double> U) const;
  std::span<const double> Omega() const { return omega_; }
  // Approximation of int_{-inf}^{-L} b from the left-end sample and the decay rate.
  double TailEstimate() const { return tail_; }

private:
  const CoefficientField &field_;
  Potential potential_;
  double xi_;
  std::vector<double> omega_, omega_mid_;
  double tail_ = 0.0;
};

double Energy(const FieldState &state, const CoefficientField &field,
              const Potential &potential, double xi);

enum class DataFamily
{
  SechBump,
  OddGauss,
  RandomSpline
};

enum class Parity
{
  None,
  Odd,
  Even
};

struct InitialDataSpec
{
  DataFamily family = DataFamily::RandomSpline;
  // Target ||v1||_{H1} + ||v2||_{L2}.
  double epsilon = 0.01;
  Parity parity = Parity::None;
  double beta = 1.0;
  double center = 0.0;
  // Random splines: knots spacing and support half-width.
  double knot_spacing = 1.0;
  double support = 4.0;
  bool with_velocity = true;
  std::uint64_t seed = 1;
};

DataFamily ParseDataFamily(const std::string &name);
Parity ParseParity(const std::string &name);

struct Perturbation
{
  std::vector<double> v1;
  std::vector<double> v2;
};

// Scaled so that ||v1||_{H1} + ||v2||_{L2} = epsilon (discrete norms).
Perturbation MakeInitialPerturbation(const Grid &grid, const InitialDataSpec &spec);

// ||v1||_{H1} + ||v2||_{L2} with central differences and trapezoid quadrature.
double EnergySpaceNorm(const Grid &grid, std::span<const double> v1,
                       std::span<const double> v2);

}  // namespace varkg

#endif  // VARKG_EVOLVE_HPP
