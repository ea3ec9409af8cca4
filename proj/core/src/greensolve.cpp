// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/greensolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include "varkg/error.hpp"

namespace varkg
{

double JostPair::YPlus(int i) const
{
  return std::exp(-mass_tilde * grid.y(i)) * P[i];
}

double JostPair::DYPlus(int i) const
{
  return std::exp(-mass_tilde * grid.y(i)) * Q[i];
}

double JostPair::YMinus(int i) const
{
  return std::exp(mass_tilde * grid.y(i)) * R[i];
}

double JostPair::DYMinus(int i) const
{
  return std::exp(mass_tilde * grid.y(i)) * S[i];
}

namespace
{

using State = std::array<double, 2>;

// Scaled right Jost system: P' = Q + mP, Q' = (m - b)Q + (m^2 - c)P.
// Scaled left Jost system:  R' = S - mR, S' = -(m + b)S + (m^2 - c)R.
struct ScaledSystem
{
  const CoefficientField &field;
  double m;
  bool right;

  State operator()(double y, const State &u) const
  {
    const double b = field.BAt(y), c = field.CAt(y);
    if (right)
    {
      return {u[1] + m * u[0], (m - b) * u[1] + (m * m - c) * u[0]};
    }
    return {u[1] - m * u[0], -(m + b) * u[1] + (m * m - c) * u[0]};
  }
};

State Rk4(const ScaledSystem &f, double y, const State &u, double h)
{
  auto axpy = [](const State &a, double s, const State &b)
  { return State{a[0] + s * b[0], a[1] + s * b[1]}; };
  State k1 = f(y, u);
  State k2 = f(y + 0.5 * h, axpy(u, 0.5 * h, k1));
  State k3 = f(y + 0.5 * h, axpy(u, 0.5 * h, k2));
  State k4 = f(y + h, axpy(u, h, k3));
  return {u[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          u[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

// Relative residual of X'' + (b + 2 s m)X' + (c + s b m)X = 0 on the fine samples,
// s = -1 for P and +1 for R, using five-point fourth-order stencils.
double ScaledResidual(const std::vector<double> &x, double y0, double h, double m, double s,
                      const CoefficientField &field)
{
  // Normalised by the largest term anywhere: in the tails every term is roundoff.
  double worst = 0.0, scale = 0.0;
  const int n = static_cast<int>(x.size());
  for (int i = 2; i + 2 < n; i++)
  {
    const double y = y0 + i * h;
    const double b = field.BAt(y), c = field.CAt(y);
    const double d1 = (x[i - 2] - 8 * x[i - 1] + 8 * x[i + 1] - x[i + 2]) / (12 * h);
    const double d2 =
        (-x[i - 2] + 16 * x[i - 1] - 30 * x[i] + 16 * x[i + 1] - x[i + 2]) / (12 * h * h);
    const double t1 = (b + 2 * s * m) * d1, t2 = (c + s * b * m) * x[i];
    worst = std::max(worst, std::abs(d2 + t1 + t2));
    scale = std::max({scale, std::abs(d2) + std::abs(t1) + std::abs(t2), m * m * std::abs(x[i])});
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

void CheckFinite(const State &u, double y, const char *which)
{
  if (!std::isfinite(u[0]) || !std::isfinite(u[1]) || std::abs(u[0]) > 1e12 ||
      std::abs(u[1]) > 1e12)
  {
    throw NumericalError(std::string("Jost integration overflow in ") + which +
                         " at y = " + std::to_string(y));
  }
}

}  // namespace

JostPair SolveJost(const CoefficientField &field, double m, double sigma)
{
  if (!(m > 0.0))
  {
    throw ParameterError("solve_jost requires m > 0");
  }
  if (sigma > 0.0)
  {
    throw ParameterError("spectral shift sigma must be <= 0");
  }
  const double mt = std::sqrt(m * m - sigma);
  const Grid &grid = field.GetGrid();
  const int n = grid.Size();
  const double yl = grid.Front(), yr = grid.Back();
  const double tol = 1e-10 * std::max(1.0, mt * mt);
  for (double y : {yl, yr})
  {
    if (std::abs(field.CAt(y)) > tol || mt * std::abs(field.BAt(y)) > tol)
    {
      throw ParameterError("non-decaying coefficients: |b| or |c| at y = " +
                           std::to_string(y) + " is not negligible against m^2; enlarge L");
    }
  }

  JostPair jp;
  jp.grid = grid;
  jp.mass = m;
  jp.sigma = sigma;
  jp.mass_tilde = mt;
  jp.P.resize(n);
  jp.Q.resize(n);
  jp.R.resize(n);
  jp.S.resize(n);
  jp.int_b.assign(n, 0.0);

  constexpr int sub = 4;
  const double h = grid.Spacing() / sub;
  const int nf = (n - 1) * sub + 1;
  std::vector<double> fine(nf);

  // Right solution, leftward from +L.
  {
    ScaledSystem sys{field, mt, true};
    State u{1.0, -mt};
    jp.P[n - 1] = u[0];
    jp.Q[n - 1] = u[1];
    fine[nf - 1] = u[0];
    for (int k = nf - 1; k > 0; k--)
    {
      const double y = yl + k * h;
      u = Rk4(sys, y, u, -h);
      CheckFinite(u, y - h, "Y+");
      fine[k - 1] = u[0];
      if ((k - 1) % sub == 0)
      {
        jp.P[(k - 1) / sub] = u[0];
        jp.Q[(k - 1) / sub] = u[1];
      }
    }
    jp.max_residual = ScaledResidual(fine, yl, h, mt, -1.0, field);
  }
  // Left solution, rightward from -L; also accumulate int b by Simpson panels.
  {
    ScaledSystem sys{field, mt, false};
    State u{1.0, mt};
    jp.R[0] = u[0];
    jp.S[0] = u[1];
    fine[0] = u[0];
    double acc = 0.0;
    for (int k = 0; k + 1 < nf; k++)
    {
      const double y = yl + k * h;
      u = Rk4(sys, y, u, h);
      CheckFinite(u, y + h, "Y-");
      fine[k + 1] = u[0];
      if (k % 2 == 0)
      {
        acc += h / 3.0 * (field.BAt(y) + 4.0 * field.BAt(y + h) + field.BAt(y + 2 * h));
      }
      if ((k + 1) % sub == 0)
      {
        const int i = (k + 1) / sub;
        jp.R[i] = u[0];
        jp.S[i] = u[1];
        jp.int_b[i] = acc;
      }
    }
    jp.max_residual = std::max(jp.max_residual, ScaledResidual(fine, yl, h, mt, 1.0, field));
  }
  return jp;
}

WronskianSamples Wronskian(const JostPair &jost)
{
  const int n = jost.grid.Size();
  WronskianSamples ws;
  ws.w.resize(n);
  for (int i = 0; i < n; i++)
  {
    ws.w[i] = jost.R[i] * jost.Q[i] - jost.S[i] * jost.P[i];
  }
  const int i0 = jost.grid.Nearest(0.0);
  const double w0 = ws.w[i0];
  ws.abel.w0 = w0;
  const double scale =
      std::hypot(jost.R[i0], jost.S[i0]) * std::hypot(jost.P[i0], jost.Q[i0]);
  ws.abel.normalized_w0 = scale > 0.0 ? std::abs(w0) / scale : 0.0;
  ws.abel.degenerate = ws.abel.normalized_w0 < kDegeneracyThreshold;
  double dev = 0.0;
  if (w0 != 0.0)
  {
    for (int i = 0; i < n; i++)
    {
      const double expected = w0 * std::exp(-(jost.int_b[i] - jost.int_b[i0]));
      dev = std::max(dev, std::abs(ws.w[i] - expected) / std::abs(w0));
    }
  }
  else
  {
    dev = std::numeric_limits<double>::infinity();
  }
  ws.abel.max_deviation = dev;
  return ws;
}

GreenOperator::GreenOperator(JostPair jost, const CoefficientField &field)
  : jost_(std::move(jost)), wronskian_(Wronskian(jost_))
{
  if (field.GetGrid().Size() != jost_.grid.Size())
  {
    throw ParameterError("GreenOperator: field and Jost pair grids differ");
  }
  b_.assign(field.b().begin(), field.b().end());
  decay_ = std::exp(-jost_.mass_tilde * jost_.grid.Spacing());
}

GreenApplication GreenOperator::Apply(std::span<const double> eta) const
{
  const int n = jost_.grid.Size();
  if (static_cast<int>(eta.size()) != n)
  {
    throw ParameterError("greens_apply: eta is not sampled on the operator grid");
  }
  if (Degenerate() && jost_.sigma == 0.0)
  {
    throw NumericalError("greens_apply: degenerate Wronskian without spectral shift");
  }
  const double h = jost_.grid.Spacing();
  const double d = decay_;
  const auto &w = wronskian_.w;
  std::vector<double> A(n), B(n), f(n), g(n);
  for (int i = 0; i < n; i++)
  {
    f[i] = jost_.R[i] * eta[i] / w[i];
    g[i] = jost_.P[i] * eta[i] / w[i];
  }
  A[0] = 0.0;
  for (int i = 1; i < n; i++)
  {
    A[i] = d * A[i - 1] + 0.5 * h * (d * f[i - 1] + f[i]);
  }
  B[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; i--)
  {
    B[i] = d * B[i + 1] + 0.5 * h * (d * g[i + 1] + g[i]);
  }
  GreenApplication out;
  out.value.resize(n);
  out.derivative.resize(n);
  const auto deta = CentralDiff(eta, h);
  const double corr = h * h / 12.0;
  for (int i = 0; i < n; i++)
  {
    out.value[i] = -(jost_.P[i] * A[i] + jost_.R[i] * B[i]);
    out.derivative[i] = -(jost_.Q[i] * A[i] + jost_.S[i] * B[i]);
    if (i > 0 && i < n - 1)
    {
      // Euler-Maclaurin correction for the kernel kink at w = y.
      out.value[i] -= corr * eta[i];
      out.derivative[i] += corr * (deta[i] + b_[i] * eta[i]);
    }
  }
  return out;
}

GreenApplication GreensApply(const GreenOperator &green, std::span<const double> eta)
{
  return green.Apply(eta);
}

std::vector<double> ApplyLinearOperator(const CoefficientField &field, double m, double sigma,
                                        std::span<const double> g)
{
  const int n = field.GetGrid().Size();
  const double h = field.GetGrid().Spacing();
  const double mt2 = m * m - sigma;
  std::vector<double> out(n, 0.0);
  for (int i = 1; i + 1 < n; i++)
  {
    const double d2 = (g[i + 1] - 2 * g[i] + g[i - 1]) / (h * h);
    const double d1 = (g[i + 1] - g[i - 1]) / (2 * h);
    out[i] = -d2 - field.b()[i] * d1 + (mt2 - field.c()[i]) * g[i];
  }
  return out;
}

std::vector<double> SteadyState::U() const
{
  std::vector<double> u(u_delta.size());
  for (std::size_t i = 0; i < u.size(); i++)
  {
    u[i] = xi + u_delta[i];
  }
  return u;
}

namespace
{

double XNorm(const Grid &grid, std::span<const double> f)
{
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < f.size(); i++)
  {
    a[i] = std::abs(f[i]);
  }
  return Trapezoid(a, grid.Spacing()) + SupNorm(f);
}

}  // namespace

double FittedDecayRate(const Grid &grid, std::span<const double> f, double lo, double hi)
{
  std::vector<double> x, y;
  for (int i = 0; i < grid.Size(); i++)
  {
    const double a = std::abs(grid.y(i));
    if (a >= lo && a <= hi && std::abs(f[i]) > 1e-300)
    {
      x.push_back(a);
      y.push_back(std::log(std::abs(f[i])));
    }
  }
  if (x.size() < 2)
  {
    return std::numeric_limits<double>::infinity();
  }
  return -FitLine(x, y).slope;
}

double SteadyResidual(const CoefficientField &field, const Potential &potential,
                      std::span<const double> U)
{
  const Grid &grid = field.GetGrid();
  const double h = grid.Spacing();
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.Size(); i++)
  {
    const double d2 = (U[i + 1] - 2 * U[i] + U[i - 1]) / (h * h);
    const double d1 = (U[i + 1] - U[i - 1]) / (2 * h);
    const double r = -d2 - field.b()[i] * d1 - field.c()[i] * U[i] + potential.dF(U[i]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace
{

SteadyState ConstructOnGrid(const CoefficientField &field, const Potential &potential,
                            double xi, const SteadyOptions &options)
{
  const Grid &grid = field.GetGrid();
  const int n = grid.Size();
  const double m2 = potential.d2F(xi);
  if (!(m2 > 1e-8))
  {
    throw ParameterError("steady state requires F''(xi) > 0");
  }
  SteadyState st;
  st.xi = xi;
  st.mass = std::sqrt(m2);
  st.grid = grid;
  st.delta_xi = std::abs(xi);
  st.delta_c = XNorm(grid, field.c());
  st.u_delta.assign(n, 0.0);
  st.du_delta.assign(n, 0.0);
  st.normalized_w0 = -1.0;

  std::vector<double> forcing(n);
  for (int i = 0; i < n; i++)
  {
    forcing[i] = xi * field.c()[i];
  }
  if (SupNorm(forcing) == 0.0)
  {
    // T0 = 0, so U_delta = 0 is the fixed point.
    st.converged = true;
    st.residual = SteadyResidual(field, potential, st.U());
    return st;
  }

  double sigma = 0.0;
  auto build = [&](double s)
  {
    GreenOperator g(SolveJost(field, st.mass, s), field);
    return g;
  };
  GreenOperator green = build(sigma);
  if (green.GetWronskian().abel.normalized_w0 < options.degeneracy_threshold)
  {
    sigma = -std::min(0.1, m2 / 10.0);
    green = build(sigma);
    if (green.GetWronskian().abel.normalized_w0 < options.degeneracy_threshold)
    {
      throw NumericalError("Wronskian still degenerate after spectral shift");
    }
  }
  bool retried = false;
  for (;;)
  {
    std::vector<double> U(n, 0.0), dU(n, 0.0), rhs(n);
    std::vector<double> changes;
    int stall = 0;
    bool restart = false;
    double ratio_max = 0.0, last_ratio = 0.0;
    bool converged = false;
    double first = 0.0;
    int it = 0;
    for (it = 1; it <= options.max_iterations; it++)
    {
      for (int i = 0; i < n; i++)
      {
        rhs[i] = forcing[i] + NonlinearRemainder(potential, xi, U[i]) - sigma * U[i];
      }
      auto app = green.Apply(rhs);
      double change = 0.0;
      for (int i = 0; i < n; i++)
      {
        if (!std::isfinite(app.value[i]))
        {
          throw NumericalError("overflow in Picard iteration " + std::to_string(it));
        }
        change = std::max(change, std::abs(app.value[i] - U[i]));
      }
      if (it == 1)
      {
        first = XNorm(grid, app.value);
      }
      U = std::move(app.value);
      dU = std::move(app.derivative);
      changes.push_back(change);
      if (changes.size() >= 2)
      {
        const double prev = changes[changes.size() - 2];
        last_ratio = prev > 0.0 ? change / prev : 0.0;
        if (prev > 1e-9 * changes.front())
        {
          ratio_max = std::max(ratio_max, last_ratio);
        }
        stall = last_ratio >= options.contraction_limit ? stall + 1 : 0;
      }
      if (change < options.tolerance)
      {
        converged = true;
        break;
      }
      if (stall >= options.stall_window)
      {
        if (sigma != 0.0 && !retried)
        {
          sigma *= 0.5;
          green = build(sigma);
          retried = true;
          restart = true;
          break;
        }
        throw NumericalError(
            "non-contraction: ratio >= " + std::to_string(options.contraction_limit) +
            " for " + std::to_string(options.stall_window) +
            " iterations (delta too large / hypotheses violated)");
      }
    }
    if (restart)
    {
      continue;
    }
    st.u_delta = std::move(U);
    st.du_delta = std::move(dU);
    st.iterations = std::min(it, options.max_iterations);
    st.changes = std::move(changes);
    st.converged = converged;
    st.ratio = ratio_max > 0.0 ? ratio_max : last_ratio;
    st.first_iterate_norm = first;
    break;
  }
  st.sigma = sigma;
  st.normalized_w0 = green.GetWronskian().abel.normalized_w0;
  st.abel_deviation = green.GetWronskian().abel.max_deviation;
  st.residual = SteadyResidual(field, potential, st.U());
  st.x_norm = XNorm(grid, st.u_delta);
  st.x_norm_derivative = XNorm(grid, st.du_delta);
  st.in_ball = st.x_norm <= 2.0 * st.first_iterate_norm * (1.0 + 1e-12);
  const double hi = std::min(options.fit_hi, 0.75 * grid.HalfWidth());
  st.decay_rate = FittedDecayRate(grid, st.u_delta, options.fit_lo, hi);
  return st;
}

}  // namespace

SteadyState ConstructSteadyState(const CoefficientField &field, const Potential &potential,
                                 double xi, const SteadyOptions &options)
{
  if (options.refine < 1)
  {
    throw ParameterError("steady refine factor must be >= 1");
  }
  if (options.refine == 1)
  {
    return ConstructOnGrid(field, potential, xi, options);
  }
  const int r = options.refine;
  auto fine = ConstructOnGrid(field.Resampled(field.GetGrid().Refined(r)), potential, xi,
                              options);
  SteadyState st = fine;
  st.grid = field.GetGrid();
  const int n = st.grid.Size();
  st.u_delta.resize(n);
  st.du_delta.resize(n);
  for (int i = 0; i < n; i++)
  {
    st.u_delta[i] = fine.u_delta[i * r];
    st.du_delta[i] = fine.du_delta[i * r];
  }
  return st;
}

SteadyState ResampleSteadyState(const SteadyState &state, const Grid &grid)
{
  SteadyState out = state;
  out.grid = grid;
  const int n = grid.Size();
  out.u_delta.assign(n, 0.0);
  out.du_delta.assign(n, 0.0);
  if (SupNorm(state.u_delta) == 0.0 && SupNorm(state.du_delta) == 0.0)
  {
    return out;
  }
  TabulatedProfile u(state.grid, state.u_delta), du(state.grid, state.du_delta);
  for (int i = 0; i < n; i++)
  {
    const double y = grid.y(i);
    if (y < state.grid.Front() || y > state.grid.Back())
    {
      continue;
    }
    out.u_delta[i] = u.Value(y);
    out.du_delta[i] = du.Value(y);
  }
  return out;
}

DecayReport VerifyDecay(const SteadyState &state, double k)
{
  DecayReport r;
  r.k = k;
  const double mt = std::sqrt(state.mass * state.mass - state.sigma);
  const double half = 0.5 * state.grid.HalfWidth();
  for (int i = 0; i < state.grid.Size(); i++)
  {
    const double a = std::abs(state.grid.y(i));
    if (a > half)
    {
      continue;
    }
    const double e = std::exp(k * a);
    r.sup_weighted = std::max(r.sup_weighted, e * std::abs(state.u_delta[i]));
    r.sup_weighted_derivative =
        std::max(r.sup_weighted_derivative, e * std::abs(state.du_delta[i]));
  }
  r.fitted_rate = state.decay_rate;
  r.note = "gate uses k < m~ = sqrt(m^2 - sigma); the theorem statement reads k < F''(xi)";
  if (k >= mt)
  {
    r.warning = true;
    r.note = "k >= m~: exponential bound not guaranteed; " + r.note;
  }
  return r;
}

}  // namespace varkg
