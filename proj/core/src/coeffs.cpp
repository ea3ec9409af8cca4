// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include "varkg/error.hpp"
#include "varkg/potentials.hpp"

namespace varkg
{

namespace
{

double Sech(double x)
{
  // Overflow-free for large |x|.
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

double Sign(double y)
{
  return (y > 0.0) - (y < 0.0);
}

bool NearKink(double y, const std::vector<double> &kinks, double tol)
{
  for (double k : kinks)
  {
    if (std::abs(y - k) <= tol)
    {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::string> Profile::Families()
{
  return {"zero",     "const",  "sech",    "sech2",  "tanh-sech",    "tanh-sech2",
          "gauss",    "y-gauss", "exp-abs", "tanh",   "linear",       "paper-b",
          "paper-b-steep", "paper-c"};
}

Profile Profile::Make(const std::string &family, const std::map<std::string, double> &params)
{
  Profile p;
  p.family_ = family;
  p.params_ = params;
  static const std::map<std::string, Kind> kinds = {
      {"zero", Kind::Zero},         {"const", Kind::Const},       {"sech", Kind::Sech},
      {"sech2", Kind::Sech2},       {"tanh-sech", Kind::TanhSech}, {"tanh-sech2", Kind::TanhSech2},
      {"gauss", Kind::Gauss},       {"y-gauss", Kind::YGauss},     {"exp-abs", Kind::ExpAbs},
      {"tanh", Kind::Tanh},         {"linear", Kind::Linear},      {"paper-b", Kind::PaperB},
      {"paper-b-steep", Kind::PaperB}, {"paper-c", Kind::PaperC}};
  auto it = kinds.find(family);
  if (it == kinds.end())
  {
    throw ParameterError("unknown coefficient family '" + family + "'");
  }
  p.kind_ = it->second;
  const bool paper = p.kind_ == Kind::PaperB || p.kind_ == Kind::PaperC;
  for (const auto &[key, value] : params)
  {
    bool known = key == "amp" || (!paper && key == "scale") || (paper && key == "lambda") ||
                 (p.kind_ == Kind::PaperB && key == "rate");
    if (!known)
    {
      throw ParameterError("family '" + family + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value))
    {
      throw ParameterError("parameter '" + key + "' must be finite");
    }
  }
  auto get = [&](const char *key, double fallback)
  {
    auto f = params.find(key);
    return f == params.end() ? fallback : f->second;
  };
  p.amp_ = get("amp", 1.0);
  p.scale_ = get("scale", 1.0);
  if (!(p.scale_ > 0.0))
  {
    throw ParameterError("scale must be positive");
  }
  if (paper)
  {
    if (!params.contains("lambda"))
    {
      throw ParameterError("family '" + family + "' requires 'lambda'");
    }
    p.lambda_ = params.at("lambda");
    if (!(p.lambda_ > 0.0))
    {
      throw ParameterError("lambda must be positive");
    }
  }
  if (p.kind_ == Kind::PaperB)
  {
    p.rate_ = get("rate", family == "paper-b-steep" ? 10.0 : 10.0 / p.lambda_);
    if (!(p.rate_ > 0.0))
    {
      throw ParameterError("rate must be positive");
    }
    p.kinks_ = {-1.0 / p.lambda_, 1.0 / p.lambda_};
  }
  if (p.kind_ == Kind::ExpAbs)
  {
    p.kinks_ = {0.0};
  }
  return p;
}

double Profile::Value(double y) const
{
  const double x = y / scale_;
  switch (kind_)
  {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
      return amp_;
    case Kind::Sech:
      return amp_ * Sech(x);
    case Kind::Sech2:
      return amp_ * Sech(x) * Sech(x);
    case Kind::TanhSech:
      return amp_ * std::tanh(x) * Sech(x);
    case Kind::TanhSech2:
      return amp_ * std::tanh(x) * Sech(x) * Sech(x);
    case Kind::Gauss:
      return amp_ * std::exp(-x * x);
    case Kind::YGauss:
      return amp_ * y * std::exp(-x * x);
    case Kind::ExpAbs:
      return amp_ * std::exp(-std::abs(x));
    case Kind::Tanh:
      return amp_ * std::tanh(x);
    case Kind::Linear:
      return amp_ * y;
    case Kind::PaperB:
    {
      const double a = std::abs(y);
      if (a < 1.0 / lambda_)
      {
        return amp_ * 16.0 * y;
      }
      return amp_ * Sign(y) * (16.0 / lambda_) * std::exp(-rate_ * (a - 1.0 / lambda_));
    }
    case Kind::PaperC:
    {
      const double l2 = lambda_ * lambda_;
      return -amp_ * 8.0 * l2 * l2 * Sech(2.0 * y / lambda_);
    }
  }
  return 0.0;
}

double Profile::Derivative(double y) const
{
  const double x = y / scale_;
  const double s = Sech(x), t = std::tanh(x);
  const double r = amp_ / scale_;
  switch (kind_)
  {
    case Kind::Zero:
    case Kind::Const:
      return 0.0;
    case Kind::Sech:
      return -r * s * t;
    case Kind::Sech2:
      return -2.0 * r * s * s * t;
    case Kind::TanhSech:
      return r * s * (s * s - t * t);
    case Kind::TanhSech2:
      return r * s * s * (s * s - 2.0 * t * t);
    case Kind::Gauss:
      return -2.0 * r * x * std::exp(-x * x);
    case Kind::YGauss:
      return amp_ * (1.0 - 2.0 * x * x) * std::exp(-x * x);
    case Kind::ExpAbs:
      // Right derivative at 0.
      return (y >= 0.0 ? -r : r) * std::exp(-std::abs(x));
    case Kind::Tanh:
      return r * s * s;
    case Kind::Linear:
      return amp_;
    case Kind::PaperB:
    {
      const double a = std::abs(y);
      // Right derivative at the kinks +-1/lambda.
      const bool inner = y >= 0.0 ? a < 1.0 / lambda_ : a <= 1.0 / lambda_;
      if (inner)
      {
        return amp_ * 16.0;
      }
      return -amp_ * rate_ * (16.0 / lambda_) * std::exp(-rate_ * (a - 1.0 / lambda_));
    }
    case Kind::PaperC:
    {
      const double l2 = lambda_ * lambda_;
      const double z = 2.0 * y / lambda_;
      return amp_ * 8.0 * l2 * l2 * (2.0 / lambda_) * Sech(z) * std::tanh(z);
    }
  }
  return 0.0;
}

TabulatedProfile::TabulatedProfile(Grid grid, std::vector<double> values)
  : grid_(grid), values_(std::move(values))
{
  if (static_cast<int>(values_.size()) != grid_.Size())
  {
    throw ParameterError("tabulated coefficient: sample count does not match its grid");
  }
  if (grid_.Size() < 4)
  {
    throw ParameterError("tabulated coefficient needs at least four samples");
  }
  for (double v : values_)
  {
    if (!std::isfinite(v))
    {
      throw ParameterError("tabulated coefficient has a non-finite sample");
    }
  }
  derivative_ = CentralDiff(values_, grid_.Spacing());
}

double TabulatedProfile::Interpolate(const std::vector<double> &f, double y) const
{
  const int n = grid_.Size();
  const double s = (y - grid_.Front()) / grid_.Spacing();
  if (s <= 0.0)
  {
    return f.front();
  }
  if (s >= n - 1)
  {
    return f.back();
  }
  int i = static_cast<int>(std::floor(s));
  double t = s - i;
  // Snap to a node within rounding of the index computation.
  if (t < 1e-9)
  {
    return f[i];
  }
  if (t > 1.0 - 1e-9)
  {
    return f[i + 1];
  }
  // Stencil i-1..i+2 shifted inwards at the ends.
  int j0 = std::clamp(i - 1, 0, n - 4);
  double u = s - j0;
  double l0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  double l1 = u * (u - 2) * (u - 3) / 2.0;
  double l2 = -u * (u - 1) * (u - 3) / 2.0;
  double l3 = u * (u - 1) * (u - 2) / 6.0;
  return l0 * f[j0] + l1 * f[j0 + 1] + l2 * f[j0 + 2] + l3 * f[j0 + 3];
}

double TabulatedProfile::Value(double y) const
{
  return Interpolate(values_, y);
}

double TabulatedProfile::Derivative(double y) const
{
  return Interpolate(derivative_, y);
}

Coefficient::Coefficient(Profile profile) : analytic_(std::move(profile)) {}

Coefficient::Coefficient(TabulatedProfile table) : table_(std::move(table)) {}

double Coefficient::Value(double y) const
{
  return analytic_ ? analytic_->Value(y) : table_->Value(y);
}

double Coefficient::Derivative(double y) const
{
  return analytic_ ? analytic_->Derivative(y) : table_->Derivative(y);
}

std::vector<double> Coefficient::Kinks() const
{
  return analytic_ ? analytic_->Kinks() : std::vector<double>{};
}

CoefficientField::CoefficientField(Coefficient b, Coefficient c, const Grid &grid)
  : bf_(std::move(b)), cf_(std::move(c)), grid_(grid)
{
  const int n = grid_.Size();
  b_.resize(n);
  c_.resize(n);
  db_.resize(n);
  dc_.resize(n);
  for (int i = 0; i < n; i++)
  {
    const double y = grid_.y(i);
    b_[i] = bf_.Value(y);
    c_[i] = cf_.Value(y);
    db_[i] = bf_.Derivative(y);
    dc_[i] = cf_.Derivative(y);
    if (!std::isfinite(b_[i]) || !std::isfinite(c_[i]) || !std::isfinite(db_[i]) ||
        !std::isfinite(dc_[i]))
    {
      throw ParameterError("coefficient samples must be finite");
    }
  }
}

CoefficientField CoefficientField::Zero(const Grid &grid)
{
  return CoefficientField(Profile::Make("zero"), Profile::Make("zero"), grid);
}

CoefficientKind CoefficientField::Kind() const
{
  return bf_.IsAnalytic() && cf_.IsAnalytic() ? CoefficientKind::Parametric
                                              : CoefficientKind::Tabulated;
}

CoefficientField CoefficientField::Resampled(const Grid &grid) const
{
  CoefficientField out(bf_, cf_, grid);
  if (decay_)
  {
    out.SetDecay(*decay_);
  }
  return out;
}

CoefficientField CoefficientField::WithScaledC(double factor) const
{
  if (cf_.IsAnalytic())
  {
    auto params = cf_.Analytic()->Parameters();
    double amp = params.contains("amp") ? params.at("amp") : 1.0;
    params["amp"] = amp * factor;
    return CoefficientField(bf_, Profile::Make(cf_.Analytic()->Family(), params), grid_);
  }
  auto values = cf_.Table()->Values();
  for (double &v : values)
  {
    v *= factor;
  }
  return CoefficientField(bf_, TabulatedProfile(cf_.Table()->GetGrid(), values), grid_);
}

void CoefficientField::SetDecay(const DecayMetadata &decay)
{
  if (!(decay.K > 0.0) || !(decay.k > 0.0))
  {
    throw ParameterError("decay metadata needs K > 0 and k > 0");
  }
  for (int i = 0; i < grid_.Size(); i++)
  {
    if (std::abs(c_[i]) > decay.K * std::exp(-decay.k * std::abs(grid_.y(i))))
    {
      throw ParameterError("decay bound |c| <= K exp(-k|y|) fails at y = " +
                           std::to_string(grid_.y(i)));
    }
  }
  decay_ = decay;
}

std::vector<double> CoefficientField::Kinks() const
{
  auto k = bf_.Kinks();
  auto kc = cf_.Kinks();
  k.insert(k.end(), kc.begin(), kc.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

namespace
{

// Cubic Hermite on [x0, x0 + h] with end values y0, y1 and slopes m0, m1.
double Hermite(double t, double h, double y0, double y1, double m0, double m1)
{
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

double LagrangeAt(std::span<const double> f, double s)
{
  const int n = static_cast<int>(f.size());
  if (s <= 0.0)
  {
    return f[0];
  }
  if (s >= n - 1)
  {
    return f[n - 1];
  }
  int i = static_cast<int>(std::floor(s));
  if (s == i)
  {
    return f[i];
  }
  int j0 = std::clamp(i - 1, 0, n - 4);
  double u = s - j0;
  double l0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
  double l1 = u * (u - 2) * (u - 3) / 2.0;
  double l2 = -u * (u - 1) * (u - 3) / 2.0;
  double l3 = u * (u - 1) * (u - 2) / 6.0;
  return l0 * f[j0] + l1 * f[j0 + 1] + l2 * f[j0 + 2] + l3 * f[j0 + 3];
}

}  // namespace

CoefficientField TransformToY(const Grid &xgrid, std::span<const double> a,
                              std::span<const double> b, std::span<const double> c)
{
  const int n = xgrid.Size();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n ||
      static_cast<int>(c.size()) != n)
  {
    throw ParameterError("transform_to_y: a, b, c must be sampled on the x-grid");
  }
  if (n < 4)
  {
    throw ParameterError("transform_to_y needs at least four x-samples");
  }
  const double h = xgrid.Spacing();
  std::vector<double> s(n);
  for (int i = 0; i < n; i++)
  {
    if (!(a[i] > 0.0) || !std::isfinite(a[i]))
    {
      throw ParameterError("transform_to_y: a must be positive, got " + std::to_string(a[i]) +
                           " at x = " + std::to_string(xgrid.y(i)));
    }
    s[i] = 1.0 / std::sqrt(a[i]);
  }
  // End-corrected trapezoid: y_i = T_i - h^2/12 (s'_i - s'_0).
  auto ds = CentralDiff(s, h);
  auto yx = CumulativeTrapezoid(s, h);
  for (int i = 0; i < n; i++)
  {
    yx[i] -= h * h / 12.0 * (ds[i] - ds[0]);
  }
  // Slopes dy/dx = s, limited so each Hermite piece stays monotone.
  std::vector<double> m0(n - 1), m1(n - 1);
  for (int i = 0; i + 1 < n; i++)
  {
    double secant = (yx[i + 1] - yx[i]) / h;
    m0[i] = std::min(s[i], 3.0 * secant);
    m1[i] = std::min(s[i + 1], 3.0 * secant);
  }
  auto y_of_x = [&](int i, double t)
  { return Hermite(t, h, yx[i], yx[i + 1], m0[i], m1[i]); };
  // Anchor y(x = 0) = 0.
  double anchor = yx[0];
  if (xgrid.Front() <= 0.0 && xgrid.Back() >= 0.0)
  {
    double sx = -xgrid.Front() / h;
    int i = std::min(static_cast<int>(std::floor(sx)), n - 2);
    anchor = y_of_x(i, sx - i);
  }
  for (double &v : yx)
  {
    v -= anchor;
  }
  const double span = yx[n - 1] - yx[0];
  const double xspan = xgrid.Back() - xgrid.Front();
  if (!(span > 1e-6 * xspan))
  {
    throw ParameterError("transform_to_y: y-range collapsed (a too large everywhere)");
  }
  const double dy = span / (n - 1);
  const int i_lo = static_cast<int>(std::ceil(yx[0] / dy - 1e-9));
  const int i_hi = static_cast<int>(std::floor(yx[n - 1] / dy + 1e-9));
  const int count = i_hi - i_lo + 1;
  if (count < 4)
  {
    throw ParameterError("transform_to_y: too few y-nodes");
  }
  Grid ygrid(0.0, -i_lo, dy, count);
  std::vector<double> da = CentralDiff(a, h);
  std::vector<double> bt(count), ct(count);
  int seg = 0;
  for (int j = 0; j < count; j++)
  {
    const double target = std::clamp(ygrid.y(j), yx[0], yx[n - 1]);
    while (seg < n - 2 && yx[seg + 1] < target)
    {
      seg++;
    }
    // Invert the monotone Hermite piece by safeguarded Newton.
    double lo = 0.0, hi = 1.0, t = 0.5;
    if (yx[seg + 1] > yx[seg])
    {
      t = (target - yx[seg]) / (yx[seg + 1] - yx[seg]);
    }
    for (int it = 0; it < 60; it++)
    {
      double g = y_of_x(seg, t) - target;
      if (g > 0.0)
      {
        hi = t;
      }
      else
      {
        lo = t;
      }
      const double t2 = t * t;
      double dg = (6 * t2 - 6 * t) * yx[seg] + (3 * t2 - 4 * t + 1) * h * m0[seg] +
                  (-6 * t2 + 6 * t) * yx[seg + 1] + (3 * t2 - 2 * t) * h * m1[seg];
      double nt = dg > 0.0 ? t - g / dg : 0.5 * (lo + hi);
      if (!(nt > lo && nt < hi))
      {
        nt = 0.5 * (lo + hi);
      }
      if (std::abs(nt - t) < 1e-15)
      {
        t = nt;
        break;
      }
      t = nt;
    }
    const double sx = seg + t;
    const double av = LagrangeAt(a, sx);
    bt[j] = (LagrangeAt(b, sx) - 0.5 * LagrangeAt(da, sx)) / std::sqrt(av);
    ct[j] = LagrangeAt(c, sx);
  }
  return CoefficientField(TabulatedProfile(ygrid, bt), TabulatedProfile(ygrid, ct), ygrid);
}

std::string ConditionName(Condition condition)
{
  switch (condition)
  {
    case Condition::VacuumCoercive:
      return "vacuum-coercive";
    case Condition::SignConditions:
      return "sign-conditions";
    case Condition::Orbital:
      return "orbital";
    case Condition::ExpDecay:
      return "exp-decay";
  }
  return "unknown";
}

namespace
{

// Shared reduction over node margins.
AdmissibilityReport Summarize(Condition condition, const Grid &grid,
                              std::vector<double> margins, const std::vector<double> &kinks)
{
  AdmissibilityReport r;
  r.condition = condition;
  const double tol = 1e-12 * std::max(1.0, grid.HalfWidth());
  std::vector<MarginSample> samples;
  for (int i = 0; i < grid.Size(); i++)
  {
    const double y = grid.y(i);
    if (NearKink(y, kinks, tol))
    {
      r.flagged.push_back(y);
      continue;
    }
    samples.push_back({y, margins[i]});
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const MarginSample &p, const MarginSample &q)
                   { return p.margin < q.margin; });
  if (samples.empty())
  {
    r.worst_margin = std::numeric_limits<double>::infinity();
  }
  else
  {
    r.worst_margin = samples.front().margin;
    r.worst_location = samples.front().y;
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(3, samples.size()); i++)
  {
    r.smallest.push_back(samples[i]);
  }
  r.pass = r.worst_margin >= 0.0;
  r.node_margins = std::move(margins);
  if (!r.flagged.empty())
  {
    r.note = "kink nodes flagged and excluded from the decision";
  }
  return r;
}

double VacuumMargin(double y, double lambda, double b, double db, double dc)
{
  const double x = y / lambda;
  const double s2 = Sech(x) * Sech(x);
  const double t = std::tanh(x);
  const double m1 = s2 - 4.0 * lambda * t * b;
  const double dsb = s2 * db - (2.0 / lambda) * s2 * t * b;
  const double m2 = 2.0 * lambda * t * dc + dsb - 8.0 * s2;
  return std::min(m1, m2);
}

double SignMargin(double y, double b, double db, double dc)
{
  const double sg = Sign(y);
  return std::min({-sg * b, sg * db, sg * dc});
}

}  // namespace

AdmissibilityReport CheckVacuumAdmissible(const CoefficientField &field, double lambda)
{
  if (!(lambda > 2.0))
  {
    throw ParameterError("vacuum check requires lambda > 2");
  }
  const Grid &g = field.GetGrid();
  std::vector<double> margins(g.Size());
  for (int i = 0; i < g.Size(); i++)
  {
    margins[i] = VacuumMargin(g.y(i), lambda, field.b()[i], field.db()[i], field.dc()[i]);
  }
  auto r = Summarize(Condition::VacuumCoercive, g, std::move(margins), field.Kinks());
  r.parameter = lambda;
  return r;
}

double VacuumMarginAt(const CoefficientField &field, double lambda, double y)
{
  return VacuumMargin(y, lambda, field.BAt(y), field.DbAt(y), field.DcAt(y));
}

AdmissibilityReport CheckSignConditions(const CoefficientField &field)
{
  const Grid &g = field.GetGrid();
  std::vector<double> margins(g.Size());
  for (int i = 0; i < g.Size(); i++)
  {
    margins[i] = SignMargin(g.y(i), field.b()[i], field.db()[i], field.dc()[i]);
  }
  return Summarize(Condition::SignConditions, g, std::move(margins), field.Kinks());
}

double SignMarginAt(const CoefficientField &field, double y)
{
  return SignMargin(y, field.BAt(y), field.DbAt(y), field.DcAt(y));
}

AdmissibilityReport CheckOrbital(const CoefficientField &field, const Potential &potential,
                                 double xi)
{
  const Grid &g = field.GetGrid();
  auto c = field.c();
  int imax = static_cast<int>(std::max_element(c.begin(), c.end()) - c.begin());
  AdmissibilityReport r;
  r.condition = Condition::Orbital;
  r.worst_margin = potential.d2F(xi) - c[imax];
  r.worst_location = g.y(imax);
  r.parameter = r.worst_margin;
  r.pass = r.worst_margin > 0.0;
  r.smallest.push_back({r.worst_location, r.worst_margin});
  r.note = "strict: pass iff mu > 0";
  return r;
}

DecayFit FitDecay(const Grid &grid, std::span<const double> c)
{
  const double L = grid.HalfWidth();
  std::vector<double> x, logc;
  for (int i = 0; i < grid.Size(); i++)
  {
    const double a = std::abs(grid.y(i));
    if (a >= 0.25 * L && a <= 0.5 * L && std::abs(c[i]) >= 1e-14)
    {
      x.push_back(a);
      logc.push_back(std::log(std::abs(c[i])));
    }
  }
  DecayFit fit;
  if (x.size() < 2)
  {
    fit.negligible = true;
    fit.K = std::numeric_limits<double>::infinity();
    fit.k = 0.0;
    fit.bound_holds = true;
    return fit;
  }
  auto line = FitLine(x, logc);
  fit.k = -line.slope;
  fit.K = std::exp(line.intercept);
  fit.bound_holds = true;
  for (int i = 0; i < grid.Size(); i++)
  {
    if (std::abs(c[i]) > 1.01 * fit.K * std::exp(-fit.k * std::abs(grid.y(i))))
    {
      fit.bound_holds = false;
      break;
    }
  }
  return fit;
}

AdmissibilityReport CheckExpDecay(const CoefficientField &field)
{
  const Grid &g = field.GetGrid();
  double K, k;
  std::string note;
  if (field.Decay())
  {
    K = field.Decay()->K;
    k = field.Decay()->k;
    note = "decay metadata";
  }
  else
  {
    auto fit = FitDecay(g, field.c());
    K = fit.K;
    k = fit.k;
    note = fit.negligible ? "negligible tail on the fit window" : "fitted on |y| in [L/4, L/2]";
  }
  std::vector<double> margins(g.Size());
  for (int i = 0; i < g.Size(); i++)
  {
    const double bound = std::isinf(K) ? K : 1.01 * K * std::exp(-k * std::abs(g.y(i)));
    margins[i] = bound - std::abs(field.c()[i]);
  }
  auto r = Summarize(Condition::ExpDecay, g, std::move(margins), {});
  r.parameter = k;
  r.note = note;
  return r;
}

}  // namespace varkg
