// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/evolve.hpp"

#include <algorithm>
#include <cmath>
#include "varkg/error.hpp"

namespace varkg
{

SpongeProfile SpongeProfile::Make(const Grid &grid, double width_fraction, double gamma_max)
{
  if (!(width_fraction > 0.0 && width_fraction < 0.5))
  {
    throw ParameterError("sponge width fraction must lie in (0, 0.5)");
  }
  if (!(gamma_max >= 0.0) || !std::isfinite(gamma_max))
  {
    throw ParameterError("sponge gamma_max must be non-negative");
  }
  SpongeProfile sp;
  sp.width_fraction = width_fraction;
  sp.gamma_max = gamma_max;
  sp.gamma.assign(grid.Size(), 0.0);
  const double L = grid.HalfWidth();
  const double mid = 0.5 * (grid.Front() + grid.Back());
  const double start = (1.0 - width_fraction) * L;
  for (int i = 0; i < grid.Size(); i++)
  {
    const double a = std::abs(grid.y(i) - mid);
    if (a > start)
    {
      const double s = std::min(1.0, (a - start) / (width_fraction * L));
      sp.gamma[i] = gamma_max * s * s * (3.0 - 2.0 * s);
    }
  }
  return sp;
}

SpongeProfile SpongeProfile::None(const Grid &grid)
{
  SpongeProfile sp;
  sp.gamma_max = 0.0;
  sp.gamma.assign(grid.Size(), 0.0);
  return sp;
}

bool SpongeProfile::Active() const
{
  return std::any_of(gamma.begin(), gamma.end(), [](double g) { return g > 0.0; });
}

double StableStepLimit(const CoefficientField &field, const Potential &potential)
{
  const double h = field.GetGrid().Spacing();
  const double f2 = potential.MaxAbsD2F(-1.0, 1.0);
  double worst = 0.0, bmax = 0.0;
  for (int i = 0; i < field.GetGrid().Size(); i++)
  {
    worst = std::max(worst, f2 - field.c()[i]);
    bmax = std::max(bmax, std::abs(field.b()[i]));
  }
  return 2.0 / std::sqrt(4.0 / (h * h) + bmax / h + worst);
}

namespace
{

void Rhs(const CoefficientField &field, const Potential &potential, Boundary boundary,
         std::span<const double> u, std::span<double> out)
{
  const int n = static_cast<int>(u.size());
  const double h = field.GetGrid().Spacing();
  const double ih2 = 1.0 / (h * h), i2h = 0.5 / h;
  auto b = field.b();
  auto c = field.c();
  const bool sg = potential.Family() == PotentialFamily::SineGordon;
  const double shift = potential.Shift();
  auto dF = [&](double x) { return sg ? std::sin(shift + x) : potential.dF(x); };
  for (int i = 1; i + 1 < n; i++)
  {
    out[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * ih2 + b[i] * (u[i + 1] - u[i - 1]) * i2h +
             c[i] * u[i] - dF(u[i]);
  }
  if (boundary == Boundary::Periodic)
  {
    // Period n - 1: node n - 1 duplicates node 0.
    const double um = u[n - 2], up = u[1];
    out[0] = (up - 2.0 * u[0] + um) * ih2 + b[0] * (up - um) * i2h + c[0] * u[0] - dF(u[0]);
    out[n - 1] = out[0];
  }
  else
  {
    out[0] = 0.0;
    out[n - 1] = 0.0;
  }
}

}  // namespace

void LeapfrogStep(const CoefficientField &field, const Potential &potential, double xi,
                  const SpongeProfile &sponge, double dt, std::span<const double> um,
                  std::span<const double> u, std::span<double> up)
{
  const int n = static_cast<int>(u.size());
  std::vector<double> r(n);
  Rhs(field, potential, Boundary::Dirichlet, u, r);
  const double dt2 = dt * dt;
  for (int i = 1; i + 1 < n; i++)
  {
    const double g = 0.5 * sponge.gamma[i] * dt;
    up[i] = (2.0 * u[i] - (1.0 - g) * um[i] + dt2 * r[i]) / (1.0 + g);
  }
  up[0] = xi;
  up[n - 1] = xi;
}

LeapfrogStepper::LeapfrogStepper(const CoefficientField &field, const Potential &potential,
                                 double xi, SpongeProfile sponge, double dt, Boundary boundary)
  : field_(field), potential_(potential), xi_(xi), sponge_(std::move(sponge)), dt_(dt),
    boundary_(boundary)
{
  const Grid &g = field.GetGrid();
  if (!(dt > 0.0))
  {
    throw ParameterError("time step must be positive");
  }
  if (dt > 0.4 * g.Spacing() * (1.0 + 1e-12))
  {
    throw ParameterError("CFL violation: dt must be <= 0.4 dy");
  }
  if (static_cast<int>(sponge_.gamma.size()) != g.Size())
  {
    throw ParameterError("sponge profile is not sampled on the grid");
  }
  prev_.assign(g.Size(), xi);
  cur_.assign(g.Size(), xi);
  next_.assign(g.Size(), xi);
  rhs_.assign(g.Size(), 0.0);
}

void LeapfrogStepper::Rhs(std::span<const double> u, std::span<double> out) const
{
  varkg::Rhs(field_, potential_, boundary_, u, out);
}

void LeapfrogStepper::CheckFinite(std::span<const double> u) const
{
  for (double v : u)
  {
    if (!std::isfinite(v) || std::abs(v) > 1e6)
    {
      throw NumericalError("blow-up detected at t = " + std::to_string(t_ + dt_));
    }
  }
}

void LeapfrogStepper::Step(std::span<const double> um, std::span<const double> u,
                           std::span<double> up) const
{
  const int n = static_cast<int>(u.size());
  Rhs(u, rhs_);
  const double dt2 = dt_ * dt_;
  const auto &gam = sponge_.gamma;
  for (int i = 1; i + 1 < n; i++)
  {
    const double g = 0.5 * gam[i] * dt_;
    up[i] = (2.0 * u[i] - (1.0 - g) * um[i] + dt2 * rhs_[i]) / (1.0 + g);
  }
  if (boundary_ == Boundary::Periodic)
  {
    const double g = 0.5 * gam[0] * dt_;
    up[0] = (2.0 * u[0] - (1.0 - g) * um[0] + dt2 * rhs_[0]) / (1.0 + g);
    up[n - 1] = up[0];
  }
  else
  {
    up[0] = xi_;
    up[n - 1] = xi_;
  }
}

void LeapfrogStepper::Start(const FieldState &initial)
{
  const int n = field_.GetGrid().Size();
  if (static_cast<int>(initial.u.size()) != n || static_cast<int>(initial.ut.size()) != n)
  {
    throw ParameterError("initial state is not sampled on the grid");
  }
  for (int i = 0; i < n; i++)
  {
    if (!std::isfinite(initial.u[i]) || !std::isfinite(initial.ut[i]))
    {
      throw ParameterError("initial state must be finite");
    }
  }
  t_ = initial.t;
  steps_ = 0;
  cur_ = initial.u;
  Rhs(cur_, rhs_);
  for (int i = 0; i < n; i++)
  {
    const double a = rhs_[i] - sponge_.gamma[i] * initial.ut[i];
    prev_[i] = cur_[i] - dt_ * initial.ut[i] + 0.5 * dt_ * dt_ * a;
  }
  if (boundary_ == Boundary::Dirichlet)
  {
    cur_[0] = cur_[n - 1] = xi_;
    prev_[0] = prev_[n - 1] = xi_;
  }
  Step(prev_, cur_, next_);
  CheckFinite(next_);
}

void LeapfrogStepper::Advance()
{
  std::swap(prev_, cur_);
  std::swap(cur_, next_);
  t_ += dt_;
  steps_++;
  Step(prev_, cur_, next_);
  CheckFinite(next_);
}

void LeapfrogStepper::Velocity(std::span<double> out) const
{
  const double inv = 0.5 / dt_;
  for (std::size_t i = 0; i < cur_.size(); i++)
  {
    out[i] = (next_[i] - prev_[i]) * inv;
  }
}

FieldState LeapfrogStepper::State() const
{
  FieldState s;
  s.t = t_;
  s.u = cur_;
  s.ut.resize(cur_.size());
  Velocity(s.ut);
  return s;
}

EnergyFunctional::EnergyFunctional(const CoefficientField &field, const Potential &potential,
                                   double xi)
  : field_(field), potential_(potential), xi_(xi)
{
  const Grid &g = field.GetGrid();
  const int n = g.Size();
  auto b = field.b();
  auto cum = CumulativeTrapezoid(b, g.Spacing());
  const double b0 = b[0];
  if (b0 != 0.0)
  {
    // Exponential tail with the rate seen over the first few cells.
    const int j = std::min(n - 1, 10);
    const double ratio = b[j] / b0;
    const double k = ratio > 0.0 && ratio != 1.0 ? std::log(ratio) / (g.y(j) - g.y(0)) : 0.0;
    tail_ = k > 0.0 ? b0 / k : 0.0;
  }
  omega_.resize(n);
  omega_mid_.resize(n - 1);
  for (int i = 0; i < n; i++)
  {
    omega_[i] = std::exp(tail_ + cum[i]);
  }
  for (int i = 0; i + 1 < n; i++)
  {
    omega_mid_[i] = std::exp(tail_ + cum[i] + 0.25 * g.Spacing() * (b[i] + b[i + 1]));
  }
}

double EnergyFunctional::operator()(std::span<const double> u, std::span<const double> ut) const
{
  const Grid &g = field_.GetGrid();
  const int n = g.Size();
  const double h = g.Spacing();
  auto c = field_.c();
  const double F0 = potential_.F(xi_);
  double s = 0.0;
  for (int i = 0; i < n; i++)
  {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * omega_[i] *
         (0.5 * ut[i] * ut[i] - 0.5 * c[i] * u[i] * u[i] + potential_.F(u[i]) - F0);
  }
  double grad = 0.0;
  for (int i = 0; i + 1 < n; i++)
  {
    const double d = (u[i + 1] - u[i]) / h;
    grad += omega_mid_[i] * d * d;
  }
  return (s + 0.5 * grad) * h;
}

double EnergyFunctional::Background(std::span<const double> U) const
{
  std::vector<double> zero(U.size(), 0.0);
  return (*this)(U, zero);
}

double Energy(const FieldState &state, const CoefficientField &field,
              const Potential &potential, double xi)
{
  return EnergyFunctional(field, potential, xi)(state.u, state.ut);
}

}  // namespace varkg
