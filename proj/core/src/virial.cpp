// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/virial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include "varkg/error.hpp"

namespace varkg
{

namespace
{

double Sech(double x)
{
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

// Trapezoid sum of g(i) over all nodes.
template <typename G>
double Quad(int n, double h, G g)
{
  double s = 0.5 * (g(0) + g(n - 1));
  for (int i = 1; i < n - 1; i++)
  {
    s += g(i);
  }
  return s * h;
}

void CheckAligned(const Grid &grid, std::initializer_list<std::size_t> sizes)
{
  for (std::size_t s : sizes)
  {
    if (static_cast<int>(s) != grid.Size())
    {
      throw ParameterError("virial: sample arrays are not aligned with the frame grid");
    }
  }
}

}  // namespace

VirialFrame::VirialFrame(const Grid &grid, double lambda) : grid_(grid), lambda_(lambda)
{
  if (!(lambda > 0.0))
  {
    throw ParameterError("virial frame requires lambda > 0");
  }
  const int n = grid.Size();
  for (auto *v : {&psi_, &dpsi_, &d2psi_, &d3psi_, &zeta_, &dzeta_, &sech_, &dsech_, &d2sech_})
  {
    v->resize(n);
  }
  const double l = lambda;
  for (int i = 0; i < n; i++)
  {
    const double y = grid.y(i);
    const double s = Sech(y / l), t = std::tanh(y / l);
    psi_[i] = l * t;
    dpsi_[i] = s * s;
    d2psi_[i] = -(2.0 / l) * s * s * t;
    d3psi_[i] = (2.0 / (l * l)) * s * s * (2.0 * t * t - s * s);
    zeta_[i] = s;
    dzeta_[i] = -s * t / l;
    const double S = Sech(y), T = std::tanh(y);
    sech_[i] = S;
    dsech_[i] = -S * T;
    d2sech_[i] = S * (T * T - S * S);
  }
}

double Virial(const VirialFrame &frame, std::span<const double> v1,
              std::span<const double> dv1, std::span<const double> v2)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), dv1.size(), v2.size()});
  auto psi = frame.Psi();
  auto dpsi = frame.DPsi();
  return Quad(g.Size(), g.Spacing(),
              [&](int i) { return (psi[i] * dv1[i] + 0.5 * dpsi[i] * v1[i]) * v2[i]; });
}

double VirialRate::Scale() const
{
  return std::abs(minus_B) + std::abs(coefficient) + std::abs(cross) + std::abs(nonlinear);
}

namespace
{

VirialRate RateImpl(const VirialFrame &frame, std::span<const double> v1,
                    std::span<const double> dv1, const CoefficientField &field,
                    const double *nl)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), dv1.size(), static_cast<std::size_t>(field.GetGrid().Size())});
  const int n = g.Size();
  const double h = g.Spacing();
  auto psi = frame.Psi();
  auto dpsi = frame.DPsi();
  auto d3psi = frame.D3Psi();
  auto b = field.b();
  auto c = field.c();
  VirialRate r;
  double sB = 0, sC = 0, sX = 0, sN = 0;
  for (int i = 0; i < n; i++)
  {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double v = v1[i], dv = dv1[i];
    sB += w * (-dpsi[i] * dv * dv + 0.25 * d3psi[i] * v * v);
    sC += w * (psi[i] * b[i] * dv * dv + 0.5 * dpsi[i] * c[i] * v * v);
    sX += w * (0.5 * dpsi[i] * b[i] + psi[i] * c[i]) * dv * v;
    if (nl)
    {
      sN += w * (psi[i] * dv + 0.5 * dpsi[i] * v) * nl[i];
    }
  }
  r.minus_B = sB * h;
  r.coefficient = sC * h;
  r.cross = sX * h;
  r.nonlinear = sN * h;
  return r;
}

}  // namespace

VirialRate ComputeVirialRate(const VirialFrame &frame, std::span<const double> v1,
                             std::span<const double> dv1, const CoefficientField &field,
                             const Potential &potential, std::span<const double> U)
{
  CheckAligned(frame.GetGrid(), {U.size()});
  auto nl = EvolutionNonlinearity(potential, U, v1);
  return RateImpl(frame, v1, dv1, field, nl.data());
}

VirialRate ComputeVirialRateLinear(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1,
                                   const CoefficientField &field)
{
  return RateImpl(frame, v1, dv1, field, nullptr);
}

BilinearB ComputeBilinearB(const VirialFrame &frame, std::span<const double> v,
                           std::span<const double> dv)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v.size(), dv.size()});
  auto dpsi = frame.DPsi();
  auto d3psi = frame.D3Psi();
  auto z = frame.Zeta();
  auto dz = frame.DZeta();
  const double l2 = frame.Lambda() * frame.Lambda();
  BilinearB out;
  out.direct = Quad(g.Size(), g.Spacing(), [&](int i)
                    { return dpsi[i] * dv[i] * dv[i] - 0.25 * d3psi[i] * v[i] * v[i]; });
  out.w_form = Quad(g.Size(), g.Spacing(),
                    [&](int i)
                    {
                      const double w = z[i] * v[i];
                      const double dw = z[i] * dv[i] + dz[i] * v[i];
                      return dw * dw - 0.5 / l2 * z[i] * z[i] * w * w;
                    });
  return out;
}

double WGradientSquared(const VirialFrame &frame, std::span<const double> v,
                        std::span<const double> dv)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v.size(), dv.size()});
  auto z = frame.Zeta();
  auto dz = frame.DZeta();
  return Quad(g.Size(), g.Spacing(),
              [&](int i)
              {
                const double dw = z[i] * dv[i] + dz[i] * v[i];
                return dw * dw;
              });
}

double WH1Squared(const VirialFrame &frame, std::span<const double> v,
                  std::span<const double> dv)
{
  const Grid &g = frame.GetGrid();
  auto z = frame.Zeta();
  const double l2 = Quad(g.Size(), g.Spacing(),
                         [&](int i) { return z[i] * z[i] * v[i] * v[i]; });
  return l2 + WGradientSquared(frame, v, dv);
}

WeightedNorms ComputeWeightedNorms(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1, std::span<const double> v2)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), dv1.size(), v2.size()});
  auto s = frame.Weight();
  const int n = g.Size();
  double a = 0, b = 0, c = 0;
  for (int i = 0; i < n; i++)
  {
    const double w = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * s[i];
    a += w * dv1[i] * dv1[i];
    b += w * v1[i] * v1[i];
    c += w * v2[i] * v2[i];
  }
  const double h = g.Spacing();
  return {(a + b) * h, b * h, c * h};
}

RatioCheck PsiPrimeCheck(const VirialFrame &frame, std::span<const double> v,
                         std::span<const double> dv, double q)
{
  if (!(q > 0.0))
  {
    throw ParameterError("psi_prime_check requires q > 0");
  }
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v.size(), dv.size()});
  auto dpsi = frame.DPsi();
  RatioCheck r;
  r.lhs = Quad(g.Size(), g.Spacing(),
               [&](int i) { return dpsi[i] * std::pow(std::abs(v[i]), 2.0 + q); });
  const double l = frame.Lambda();
  r.envelope = l * l * std::pow(SupNorm(v), q) * WH1Squared(frame, v, dv);
  r.ratio = r.envelope > 0.0 ? r.lhs / r.envelope : 0.0;
  return r;
}

FTermCheck FTermCheckRun(const VirialFrame &frame, std::span<const double> v1,
                         std::span<const double> dv1, const Potential &potential,
                         std::span<const double> U, FTermCase which, double delta)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), dv1.size(), U.size()});
  if (which == FTermCase::SineGordonNear2kPi &&
      potential.Family() != PotentialFamily::SineGordon)
  {
    throw ParameterError("fterm_check: near-2k*pi case needs the sine-Gordon potential");
  }
  if (which == FTermCase::Vacuum)
  {
    delta = 0.0;
  }
  auto nl = EvolutionNonlinearity(potential, U, v1);
  auto psi = frame.Psi();
  auto dpsi = frame.DPsi();
  FTermCheck r;
  r.J = Quad(g.Size(), g.Spacing(),
             [&](int i) { return nl[i] * (psi[i] * dv1[i] + 0.5 * dpsi[i] * v1[i]); });
  r.cubic = Quad(g.Size(), g.Spacing(),
                 [&](int i) { return dpsi[i] * std::pow(std::abs(v1[i]), 3.0); });
  auto norms = ComputeWeightedNorms(frame, v1, dv1, v1);
  const double l = frame.Lambda();
  r.envelope =
      l * l * (SupNorm(v1) * WGradientSquared(frame, v1, dv1) + delta * norms.h1w_v1);
  r.ratio = r.envelope > 0.0 ? std::abs(r.J) / r.envelope : 0.0;
  return r;
}

double SechCross(const VirialFrame &frame, std::span<const double> v1,
                 std::span<const double> v2)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), v2.size()});
  auto s = frame.Weight();
  return Quad(g.Size(), g.Spacing(), [&](int i) { return s[i] * v1[i] * v2[i]; });
}

double SechCrossRate::Scale() const
{
  return std::abs(v2_sq) + std::abs(gradient) + std::abs(curvature) + std::abs(coefficient) +
         std::abs(nonlinear);
}

SechCrossRate ComputeSechCrossRate(const VirialFrame &frame, std::span<const double> v1,
                                   std::span<const double> dv1, std::span<const double> v2,
                                   const CoefficientField &field, const Potential &potential,
                                   std::span<const double> U)
{
  const Grid &g = frame.GetGrid();
  CheckAligned(g, {v1.size(), dv1.size(), v2.size(), U.size()});
  auto nl = EvolutionNonlinearity(potential, U, v1);
  auto s = frame.Weight();
  auto ds = frame.DWeight();
  auto d2s = frame.D2Weight();
  auto b = field.b();
  auto db = field.db();
  auto c = field.c();
  const int n = g.Size();
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  for (int i = 0; i < n; i++)
  {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double v = v1[i];
    a0 += w * s[i] * v2[i] * v2[i];
    a1 -= w * s[i] * dv1[i] * dv1[i];
    a2 += w * 0.5 * d2s[i] * v * v;
    a3 += w * (-0.5 * (ds[i] * b[i] + s[i] * db[i]) + s[i] * c[i]) * v * v;
    a4 += w * s[i] * v * nl[i];
  }
  const double h = g.Spacing();
  return {a0 * h, a1 * h, a2 * h, a3 * h, a4 * h};
}

double SechCrossConstant(const VirialFrame &frame, const CoefficientField &field,
                         const Potential &potential, std::span<const double> U)
{
  const Grid &g = frame.GetGrid();
  double umin = std::numeric_limits<double>::max(), umax = -umin;
  for (double u : U)
  {
    umin = std::min(umin, u);
    umax = std::max(umax, u);
  }
  const double fmax = potential.MaxAbsD2F(umin - 1.0, umax + 1.0);
  auto s = frame.Weight();
  auto ds = frame.DWeight();
  auto d2s = frame.D2Weight();
  double C = 1.0;
  for (int i = 0; i < g.Size(); i++)
  {
    const double t = -0.5 * d2s[i] + 0.5 * (ds[i] * field.b()[i] + s[i] * field.db()[i]) -
                     s[i] * field.c()[i] + s[i] * fmax;
    if (s[i] > 0.0)
    {
      C = std::max(C, t / s[i]);
    }
  }
  return C;
}

double LocalNorm(const Grid &grid, std::span<const double> v1, std::span<const double> dv1,
                 std::span<const double> v2, double a, double b)
{
  const int i0 = std::max(0, static_cast<int>(std::ceil((a - grid.Front()) / grid.Spacing() - 1e-9)));
  const int i1 = std::min(grid.Size() - 1,
                          static_cast<int>(std::floor((b - grid.Front()) / grid.Spacing() + 1e-9)));
  if (i1 <= i0)
  {
    return 0.0;
  }
  double h1 = 0.0, l2 = 0.0;
  for (int i = i0; i <= i1; i++)
  {
    const double w = (i == i0 || i == i1) ? 0.5 : 1.0;
    h1 += w * (v1[i] * v1[i] + dv1[i] * dv1[i]);
    l2 += w * v2[i] * v2[i];
  }
  const double h = grid.Spacing();
  return std::sqrt(h1 * h) + std::sqrt(l2 * h);
}

std::vector<std::string> DiagnosticsColumns(
    const std::vector<std::pair<double, double>> &intervals)
{
  std::vector<std::string> cols = {"t",      "E",      "I",          "dIdt_fd",     "dIdt_formula",
                                   "H1w_v1", "L2w_v2", "sech_cross", "cum_integral"};
  for (const auto &[a, b] : intervals)
  {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "local_%g_%g", a, b);
    cols.emplace_back(buf);
  }
  return cols;
}

RunSummary Summarize(const std::vector<DiagnosticsRecord> &records,
                     const std::vector<std::string> &local_names)
{
  if (records.empty())
  {
    throw ParameterError("report: empty diagnostics series");
  }
  RunSummary s;
  s.rows = static_cast<int>(records.size());
  s.t_final = records.back().t;
  s.cum_integral = records.back().cum_integral;
  s.I0 = records.front().I;
  s.IT = records.back().I;
  s.min_minus_dIdt = std::numeric_limits<double>::infinity();
  s.floor = std::numeric_limits<double>::infinity();
  const double E0 = records.front().E;
  for (std::size_t k = 0; k < records.size(); k++)
  {
    const auto &r = records[k];
    s.min_minus_dIdt = std::min(s.min_minus_dIdt, -r.dIdt_formula);
    if (r.h1w_v1 > 1e-300)
    {
      const double f = -r.dIdt_formula / r.h1w_v1;
      if (f < s.floor)
      {
        s.floor = f;
        s.floor_time = r.t;
      }
    }
    s.max_energy_drift =
        std::max(s.max_energy_drift, std::abs(r.E - E0) / std::max(std::abs(E0), 1e-12));
    if (k > 0)
    {
      s.cum_v1 += 0.5 * (r.t - records[k - 1].t) * (r.h1w_v1 + records[k - 1].h1w_v1);
    }
  }
  if (std::isinf(s.floor))
  {
    s.floor = 0.0;
  }
  for (std::size_t j = 0; j < local_names.size(); j++)
  {
    LocalDecay d;
    d.name = local_names[j];
    for (const auto &r : records)
    {
      d.peak = std::max(d.peak, r.local.at(j));
    }
    d.final = records.back().local.at(j);
    d.factor = d.final > 0.0 ? d.peak / d.final : (d.peak > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    s.local.push_back(d);
  }
  return s;
}

}  // namespace varkg
