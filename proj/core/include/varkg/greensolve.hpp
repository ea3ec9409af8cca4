// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_GREENSOLVE_HPP
#define VARKG_GREENSOLVE_HPP

#include <span>
#include <string>
#include <vector>
#include "varkg/coeffs.hpp"
#include "varkg/grid.hpp"
#include "varkg/potentials.hpp"

namespace varkg
{

//
// Jost solutions of -Y'' - bY' - (c - m^2 - sigma)Y = 0, normalised by
// e^{m~ y} Y_+ -> 1 at +L and e^{-m~ y} Y_- -> 1 at -L with m~ = sqrt(m^2 - sigma).
// Stored in exponentially scaled form to avoid overflow on long grids:
//   Y_+ = e^{-m~ y} P,  Y_+' = e^{-m~ y} Q,  Y_- = e^{m~ y} R,  Y_-' = e^{m~ y} S.
//
struct JostPair
{
  Grid grid;
  double mass = 0.0;
  double sigma = 0.0;
  double mass_tilde = 0.0;
  std::vector<double> P, Q, R, S;
  // int_{-L}^{y_i} b, Simpson on the integration substeps.
  std::vector<double> int_b;
  // Max ODE residual on the substep grid (fourth-order stencils), relative to the largest term.
  double max_residual = 0.0;

  double YPlus(int i) const;
  double DYPlus(int i) const;
  double YMinus(int i) const;
  double DYMinus(int i) const;
};

// RK4 at step dy/4 from the pure-exponential asymptotic data at +-L.
JostPair SolveJost(const CoefficientField &field, double m, double sigma);

struct AbelReport
{
  double w0 = 0.0;
  // |W(0)| / (|(Y_-, Y_-')(0)| |(Y_+, Y_+')(0)|).
  double normalized_w0 = 0.0;
  // max_i |W(y_i) - W(0) exp(-int_0^y b)| / |W(0)|.
  double max_deviation = 0.0;
  bool degenerate = false;
};

struct WronskianSamples
{
  // W = Y_- Y_+' - Y_-' Y_+ (scale-free: equals R Q - S P).
  std::vector<double> w;
  AbelReport abel;
};

inline constexpr double kDegeneracyThreshold = 1e-6;

WronskianSamples Wronskian(const JostPair &jost);

struct GreenApplication
{
  std::vector<double> value;
  std::vector<double> derivative;
};

//
// eta -> int G(y, w) eta(w) dw with G(y, w) = -Y_-(min) Y_+(max) / W(w), which inverts
// -d^2 - b d - (c - m^2 - sigma). O(N) by exponentially weighted prefix sums.
//
class GreenOperator
{
public:
  GreenOperator(JostPair jost, const CoefficientField &field);

  GreenApplication Apply(std::span<const double> eta) const;

  const JostPair &Jost() const { return jost_; }
  const WronskianSamples &GetWronskian() const { return wronskian_; }
  bool Degenerate() const { return wronskian_.abel.degenerate; }

private:
  JostPair jost_;
  WronskianSamples wronskian_;
  std::vector<double> b_;
  // e^{-m~ dy}, the ratio between neighbouring scale factors.
  double decay_ = 0.0;
};

GreenApplication GreensApply(const GreenOperator &green, std::span<const double> eta);

// Applies -g'' - b g' - (c - m^2 - sigma) g with second-order differences; ends are zero.
std::vector<double> ApplyLinearOperator(const CoefficientField &field, double m, double sigma,
                                        std::span<const double> g);

struct SteadyOptions
{
  int max_iterations = 100;
  double tolerance = 1e-12;
  double degeneracy_threshold = kDegeneracyThreshold;
  double contraction_limit = 0.9;
  int stall_window = 5;
  // Construct on a grid refined by this factor and subsample back.
  int refine = 1;
  // Window for the fitted decay rate of |U_delta|.
  double fit_lo = 10.0;
  double fit_hi = 30.0;
};

struct SteadyState
{
  double xi = 0.0;
  double mass = 0.0;
  Grid grid;
  std::vector<double> u_delta;
  std::vector<double> du_delta;
  double residual = 0.0;
  // ||.||_{L1} + ||.||_{Linf}.
  double x_norm = 0.0;
  double x_norm_derivative = 0.0;
  // ||T0||_X, the measured C0 delta.
  double first_iterate_norm = 0.0;
  bool in_ball = true;
  double decay_rate = 0.0;
  int iterations = 0;
  double sigma = 0.0;
  double ratio = 0.0;
  std::vector<double> changes;
  bool converged = false;
  double normalized_w0 = 0.0;
  double abel_deviation = 0.0;
  // Advisory hypotheses: delta_i = |xi|, delta_ii = ||c||_X.
  double delta_xi = 0.0;
  double delta_c = 0.0;

  std::vector<double> U() const;
};

// Picard iteration U <- G[xi c + N(U) - sigma U] from U = 0.
SteadyState ConstructSteadyState(const CoefficientField &field, const Potential &potential,
                                 double xi, const SteadyOptions &options = {});

// sup over interior nodes of |-U'' - bU' - cU + F'(U)|.
double SteadyResidual(const CoefficientField &field, const Potential &potential,
                      std::span<const double> U);

// Sample a steady state on another grid (4-point interpolation of U_delta and U_delta').
SteadyState ResampleSteadyState(const SteadyState &state, const Grid &grid);

struct DecayReport
{
  double k = 0.0;
  double sup_weighted = 0.0;
  double sup_weighted_derivative = 0.0;
  double fitted_rate = 0.0;
  bool warning = false;
  std::string note;
};

// sup over |y| <= L/2 of e^{k|y|}|U_delta| and e^{k|y|}|U_delta'|; warns for k >= m~.
DecayReport VerifyDecay(const SteadyState &state, double k);

// Least-squares rate of |f| over lo <= |y| <= hi on both sides.
double FittedDecayRate(const Grid &grid, std::span<const double> f, double lo, double hi);

}  // namespace varkg

#endif  // VARKG_GREENSOLVE_HPP
