// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_VIRIAL_HPP
#define VARKG_VIRIAL_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>
#include "varkg/coeffs.hpp"
#include "varkg/grid.hpp"
#include "varkg/potentials.hpp"

namespace varkg
{

//
// Sampled virial weight psi = lambda tanh(y/lambda) with analytic derivatives,
// zeta = sech(y/lambda) and the sech(y) weight of the local norms.
//
class VirialFrame
{
public:
  VirialFrame(const Grid &grid, double lambda);

  const Grid &GetGrid() const { return grid_; }
  double Lambda() const { return lambda_; }
  std::span<const double> Psi() const { return psi_; }
  std::span<const double> DPsi() const { return dpsi_; }
  std::span<const double> D2Psi() const { return d2psi_; }
  std::span<const double> D3Psi() const { return d3psi_; }
  std::span<const double> Zeta() const { return zeta_; }
  std::span<const double> DZeta() const { return dzeta_; }
  std::span<const double> Weight() const { return sech_; }
  std::span<const double> DWeight() const { return dsech_; }
  std::span<const double> D2Weight() const { return d2sech_; }

private:
  Grid grid_;
  double lambda_;
  std::vector<double> psi_, dpsi_, d2psi_, d3psi_, zeta_, dzeta_, sech_, dsech_, d2sech_;
};

// I = int (psi v1' + 1/2 psi' v1) v2.
double Virial(const VirialFrame &frame, std::span<const double> v1,
              std::span<const double> dv1, std::span<const double> v2);

struct VirialRate
{
  // -int psi' v1'^2 + 1/4 int psi''' v1^2.
  double minus_B = 0.0;
  // int (psi b v1'^2 + 1/2 psi' c v1^2).
  double coefficient = 0.0;
  // int (1/2 psi' b + psi c) v1' v1.
  double cross = 0.0;
  // int (psi v1' + 1/2 psi' v1) N(U, v1).
  double nonlinear = 0.0;

  double Total() const { return minus_B + coefficient + cross + nonlinear; }
  double Scale() const;
};

// dI/dt along u_tt = u'' + b u' + c u - F'(u) written for v1 = u - U.
VirialRate ComputeVirialRate(const VirialFrame &frame, std::span<const double> v1,
                             std::span<const double> dv1, const CoefficientField &field,
                             const Potential &potential, std::span<const double> U);
// Linear limit: the nonlinear term is dropped.
VirialRate ComputeVirialRateLinear(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1,
                                   const CoefficientField &field);

struct BilinearB
{
  double direct = 0.0;
  double w_form = 0.0;
};

// B(v) = int psi' v'^2 - 1/4 int psi''' v^2 and its w = zeta v form
// int w'^2 - 1/(2 lambda^2) int sech^2(y/lambda) w^2.
BilinearB ComputeBilinearB(const VirialFrame &frame, std::span<const double> v,
                           std::span<const double> dv);

// int w'^2 with w' = zeta v' + zeta' v.
double WGradientSquared(const VirialFrame &frame, std::span<const double> v,
                        std::span<const double> dv);

// ||w||_{H1}^2.
double WH1Squared(const VirialFrame &frame, std::span<const double> v,
                  std::span<const double> dv);

struct WeightedNorms
{
  double h1w_v1 = 0.0;
  double l2w_v1 = 0.0;
  double l2w_v2 = 0.0;
};

// Squared norms with the sech(y) weight.
WeightedNorms ComputeWeightedNorms(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1, std::span<const double> v2);

struct RatioCheck
{
  double lhs = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};

// lhs = int psi' |v|^{2+q}, envelope = lambda^2 ||v||_inf^q ||w||_{H1}^2.
RatioCheck PsiPrimeCheck(const VirialFrame &frame, std::span<const double> v,
                         std::span<const double> dv, double q);

enum class FTermCase
{
  Vacuum,
  SineGordonNear2kPi
};

struct FTermCheck
{
  double J = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  // int psi' |v1|^3.
  double cubic = 0.0;
};

// J = int (F'(U) - F'(U + v1)) (psi v1' + 1/2 psi' v1),
// envelope = lambda^2 (||v1||_inf ||w'||^2 + delta ||v1||_{H1w}^2).
FTermCheck FTermCheckRun(const VirialFrame &frame, std::span<const double> v1,
                         std::span<const double> dv1, const Potential &potential,
                         std::span<const double> U, FTermCase which, double delta);

// int sech(y) v1 v2.
double SechCross(const VirialFrame &frame, std::span<const double> v1,
                 std::span<const double> v2);

struct SechCrossRate
{
  double v2_sq = 0.0;
  double gradient = 0.0;
  double curvature = 0.0;
  double coefficient = 0.0;
  double nonlinear = 0.0;

  double Total() const { return v2_sq + gradient + curvature + coefficient + nonlinear; }
  double Scale() const;
};

SechCrossRate ComputeSechCrossRate(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1, std::span<const double> v2,
                                   const CoefficientField &field, const Potential &potential,
                                   std::span<const double> U);

// C with rate >= ||v2||^2_{L2w} - C ||v1||^2_{H1w}; frozen once per coefficient set.
double SechCrossConstant(const VirialFrame &frame, const CoefficientField &field,
                         const Potential &potential, std::span<const double> U);

// ||v1||_{H1(a,b)} + ||v2||_{L2(a,b)} over the nodes inside [a, b].
double LocalNorm(const Grid &grid, std::span<const double> v1, std::span<const double> dv1,
                 std::span<const double> v2, double a, double b);

struct DiagnosticsRecord
{
  double t = 0.0;
  double E = 0.0;
  double I = 0.0;
  double dIdt_fd = 0.0;
  double dIdt_formula = 0.0;
  double h1w_v1 = 0.0;
  double l2w_v2 = 0.0;
  double sech_cross = 0.0;
  double cum_integral = 0.0;
  std::vector<double> local;
};

// Column names in file order.
std::vector<std::string> DiagnosticsColumns(
    const std::vector<std::pair<double, double>> &intervals);

struct LocalDecay
{
  std::string name;
  double peak = 0.0;
  double final = 0.0;
  double factor = 0.0;
};

struct RunSummary
{
  int rows = 0;
  double t_final = 0.0;
  double cum_integral = 0.0;
  double cum_v1 = 0.0;
  double I0 = 0.0;
  double IT = 0.0;
  double min_minus_dIdt = 0.0;
  double floor = 0.0;
  double floor_time = 0.0;
  double max_energy_drift = 0.0;
  std::vector<LocalDecay> local;
};

// Summary of a diagnostics series; uses only the CSV columns so a file round trip
// reproduces it exactly.
RunSummary Summarize(const std::vector<DiagnosticsRecord> &records,
                     const std::vector<std::string> &local_names);

}  // namespace varkg

#endif  // VARKG_VIRIAL_HPP
