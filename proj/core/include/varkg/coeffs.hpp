// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_COEFFS_HPP
#define VARKG_COEFFS_HPP

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>
#include "varkg/grid.hpp"

namespace varkg
{

class Potential;

//
// Closed-form coefficient profile addressed by a family id and named parameters.
// Derivatives are analytic. Recognised parameters: amp (default 1), scale (default 1),
// lambda (paper families), rate (paper-b tail rate override).
//
class Profile
{
public:
  static Profile Make(const std::string &family,
                      const std::map<std::string, double> &params = {});

  double Value(double y) const;
  // One-sided (right) derivative at kink points.
  double Derivative(double y) const;
  const std::vector<double> &Kinks() const { return kinks_; }
  const std::string &Family() const { return family_; }
  const std::map<std::string, double> &Parameters() const { return params_; }

  static std::vector<std::string> Families();

private:
  enum class Kind
  {
    Zero,
    Const,
    Sech,
    Sech2,
    TanhSech,
    TanhSech2,
    Gauss,
    YGauss,
    ExpAbs,
    Tanh,
    Linear,
    PaperB,
    PaperC
  };
  Kind kind_ = Kind::Zero;
  std::string family_;
  std::map<std::string, double> params_;
  double amp_ = 1.0, scale_ = 1.0, lambda_ = 0.0, rate_ = 0.0;
  std::vector<double> kinks_;
};

// Samples on a uniform grid with cubic (4-point Lagrange) interpolation; derivative
// samples are second-order central differences, one-sided at the ends.
class TabulatedProfile
{
public:
  TabulatedProfile(Grid grid, std::vector<double> values);
  double Value(double y) const;
  double Derivative(double y) const;
  const Grid &GetGrid() const { return grid_; }
  const std::vector<double> &Values() const { return values_; }

private:
  double Interpolate(const std::vector<double> &f, double y) const;
  Grid grid_;
  std::vector<double> values_, derivative_;
};

// A single coefficient function: analytic profile or tabulated samples.
class Coefficient
{
public:
  Coefficient(Profile profile);
  Coefficient(TabulatedProfile table);

  double Value(double y) const;
  double Derivative(double y) const;
  bool IsAnalytic() const { return analytic_.has_value(); }
  std::vector<double> Kinks() const;
  const std::optional<Profile> &Analytic() const { return analytic_; }
  const std::optional<TabulatedProfile> &Table() const { return table_; }

private:
  std::optional<Profile> analytic_;
  std::optional<TabulatedProfile> table_;
};

struct DecayMetadata
{
  double K = 0.0;
  double k = 0.0;
};

enum class CoefficientKind
{
  Parametric,
  Tabulated
};

//
// Coefficients b, c of u_tt = u_yy + b u_y + c u - F'(u), sampled on a grid together
// with their derivatives. Off-grid evaluation goes back to the underlying functions.
//
class CoefficientField
{
public:
  CoefficientField(Coefficient b, Coefficient c, const Grid &grid);

  static CoefficientField Zero(const Grid &grid);

  CoefficientKind Kind() const;
  const Grid &GetGrid() const { return grid_; }
  std::span<const double> b() const { return b_; }
  std::span<const double> c() const { return c_; }
  std::span<const double> db() const { return db_; }
  std::span<const double> dc() const { return dc_; }

  double BAt(double y) const { return bf_.Value(y); }
  double CAt(double y) const { return cf_.Value(y); }
  double DbAt(double y) const { return bf_.Derivative(y); }
  double DcAt(double y) const { return cf_.Derivative(y); }

  const Coefficient &BFunction() const { return bf_; }
  const Coefficient &CFunction() const { return cf_; }

  // Same functions sampled on another grid.
  CoefficientField Resampled(const Grid &grid) const;
  // Copy with c multiplied by factor (tabulated c is rescaled sample-wise).
  CoefficientField WithScaledC(double factor) const;

  // Throws ParameterError unless |c(y_i)| <= K exp(-k|y_i|) at every node.
  void SetDecay(const DecayMetadata &decay);
  const std::optional<DecayMetadata> &Decay() const { return decay_; }

  std::vector<double> Kinks() const;

private:
  Coefficient bf_, cf_;
  Grid grid_;
  std::vector<double> b_, c_, db_, dc_;
  std::optional<DecayMetadata> decay_;
};

// Change of variables y = int_0^x a^{-1/2}; returns tabulated b~ = (b - a'/2) a^{-1/2} and
// c~ = c on a uniform y-grid with y = 0 as a node.
CoefficientField TransformToY(const Grid &xgrid, std::span<const double> a,
                              std::span<const double> b, std::span<const double> c);

enum class Condition
{
  VacuumCoercive,
  SignConditions,
  Orbital,
  ExpDecay
};
std::string ConditionName(Condition condition);

struct MarginSample
{
  double y = 0.0;
  double margin = 0.0;
};

struct AdmissibilityReport
{
  Condition condition = Condition::VacuumCoercive;
  bool pass = false;
  double worst_margin = 0.0;
  double worst_location = 0.0;
  // lambda for the vacuum check, mu for the orbital check, k for exp-decay.
  double parameter = 0.0;
  // Three smallest unflagged node margins, ascending.
  std::vector<MarginSample> smallest;
  // Nodes that coincide with a kink of b or c; excluded from the decision.
  std::vector<double> flagged;
  // Margin of every node, aligned with the grid (empty for the orbital check).
  std::vector<double> node_margins;
  std::string note;
};

// 4 lambda tanh(y/lambda) b <= sech^2(y/lambda) and
// 2 lambda tanh(y/lambda) c' + (sech^2(y/lambda) b)' >= 8 sech^2(y/lambda).
AdmissibilityReport CheckVacuumAdmissible(const CoefficientField &field, double lambda);
double VacuumMarginAt(const CoefficientField &field, double lambda, double y);

// sgn(y) b <= 0, sgn(y) b' >= 0, sgn(y) c' >= 0.
AdmissibilityReport CheckSignConditions(const CoefficientField &field);
double SignMarginAt(const CoefficientField &field, double y);

// mu = F''(xi) - max c; pass iff mu > 0.
AdmissibilityReport CheckOrbital(const CoefficientField &field, const Potential &potential,
                                 double xi);

struct DecayFit
{
  double K = 0.0;
  double k = 0.0;
  // c below 1e-14 on the whole fit window: K = +inf, k = 0.
  bool negligible = false;
  // |c| <= 1.01 K exp(-k|y|) at every node.
  bool bound_holds = false;
};

// Fit log|c| against |y| over |y| in [L/4, L/2].
DecayFit FitDecay(const Grid &grid, std::span<const double> c);

// Margins 1.01 K exp(-k|y|) - |c| using the field's decay metadata, or a fresh fit.
AdmissibilityReport CheckExpDecay(const CoefficientField &field);

}  // namespace varkg

#endif  // VARKG_COEFFS_HPP
