// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include "varkg/error.hpp"

namespace varkg
{

namespace
{

struct Level
{
  long n = 0;
  double t = 0.0;
  double I = 0.0;
  double X = 0.0;
  bool full = false;
  VirialRate rate;
  double sponge = 0.0;
  SechCrossRate sech;
  double sech_sponge = 0.0;
  WeightedNorms norms;
  double cum = 0.0;
  double E = 0.0;
  std::vector<double> local;
  bool record = false;
};

}  // namespace

SimulationResult RunSimulation(const CoefficientField &field, const Potential &potential,
                               double xi, std::span<const double> U, const Perturbation &data,
                               const SpongeProfile &sponge, const SimulationConfig &config,
                               const SnapshotSink &sink)
{
  const Grid &grid = field.GetGrid();
  const int n = grid.Size();
  if (static_cast<int>(U.size()) != n || static_cast<int>(data.v1.size()) != n ||
      static_cast<int>(data.v2.size()) != n)
  {
    throw ParameterError("simulation: background and data must be sampled on the grid");
  }
  if (!(config.T >= 0.0) || !std::isfinite(config.T))
  {
    throw ParameterError("final time T must be non-negative");
  }
  if (!(config.diag_interval >= 0.0) || !(config.snap_interval >= 0.0))
  {
    throw ParameterError("diagnostic and snapshot intervals must be non-negative");
  }
  double reach = 0.0;
  for (const auto &[a, b] : config.intervals)
  {
    if (!(a < b) || a < grid.Front() || b > grid.Back())
    {
      throw ParameterError("local-norm interval must satisfy -L <= a < b <= L");
    }
    reach = std::max({reach, std::abs(a), std::abs(b)});
  }
  if (config.energy_mode)
  {
    if (sponge.Active())
    {
      throw ParameterError("energy-conservation mode requires the sponge to be off");
    }
    const double limit = 0.8 * (grid.HalfWidth() - reach);
    if (config.T > limit)
    {
      throw ParameterError("reflection guard: T must be <= 0.8 (L - interval reach) = " +
                           std::to_string(limit));
    }
  }
  if (config.track_parity && !grid.IsSymmetric())
  {
    throw ParameterError("parity tracking needs a symmetric grid");
  }

  const double dt = config.dt;
  const double h = grid.Spacing();
  VirialFrame frame(grid, config.lambda);
  EnergyFunctional energy(field, potential, xi);
  LeapfrogStepper stepper(field, potential, xi, sponge, dt);

  FieldState init;
  init.u.resize(n);
  init.ut = data.v2;
  for (int i = 0; i < n; i++)
  {
    init.u[i] = U[i] + data.v1[i];
  }
  init.u.front() = init.u.back() = xi;
  stepper.Start(init);

  const long nT = std::lround(config.T / dt);
  const long last = std::max<long>(nT + 1, 2);
  const long diag_stride =
      config.diag_interval > 0.0 ? std::max<long>(1, std::lround(config.diag_interval / dt)) : 1;
  const long snap_stride =
      config.snap_interval > 0.0 ? std::max<long>(1, std::lround(config.snap_interval / dt)) : 0;

  SimulationResult res;
  res.dt = dt;
  res.steps = nT;
  res.background_energy = energy.Background(U);
  res.sech_constant = SechCrossConstant(frame, field, potential, U);
  res.min_minus_dIdt = std::numeric_limits<double>::infinity();
  res.floor = std::numeric_limits<double>::infinity();
  res.sech_bound_margin = std::numeric_limits<double>::infinity();
  res.initial_norm = EnergySpaceNorm(grid, data.v1, data.v2);

  std::vector<double> v1(n), v2(n), dv1(n), nl(n), ut(n);
  std::deque<Level> window;
  double cum = 0.0, cum_v1 = 0.0, cum_sponge = 0.0;
  double prev_q = 0.0, prev_q1 = 0.0, prev_s = 0.0;
  double E0 = 0.0;
  auto sgamma = std::span<const double>(sponge.gamma);
  auto psi = frame.Psi();
  auto dpsi = frame.DPsi();
  auto sech = frame.Weight();

  auto finalize = [&](const Level &lv, double fd_virial, double fd_sech)
  {
    if (!lv.record)
    {
      return;
    }
    DiagnosticsRecord r;
    r.t = lv.t;
    r.E = lv.E;
    r.I = lv.I;
    r.dIdt_fd = fd_virial;
    r.dIdt_formula = lv.rate.Total();
    r.h1w_v1 = lv.norms.h1w_v1;
    r.l2w_v2 = lv.norms.l2w_v2;
    r.sech_cross = lv.X;
    r.cum_integral = lv.cum;
    r.local = lv.local;
    res.records.push_back(std::move(r));
    ConsistencySample c;
    c.t = lv.t;
    c.virial_fd = fd_virial;
    c.virial_formula = lv.rate.Total();
    c.virial_sponge = lv.sponge;
    c.virial_scale = lv.rate.Scale();
    c.sech_fd = fd_sech;
    c.sech_formula = lv.sech.Total();
    c.sech_sponge = lv.sech_sponge;
    c.sech_scale = lv.sech.Scale();
    res.consistency.push_back(c);
  };

  for (long k = 0; k <= last; k++)
  {
    auto u = stepper.Current();
    stepper.Velocity(ut);
    for (int i = 0; i < n; i++)
    {
      v1[i] = u[i] - U[i];
      v2[i] = ut[i];
    }
    CentralDiff(v1, h, dv1);
    Level lv;
    lv.n = k;
    lv.t = stepper.Time();
    lv.I = Virial(frame, v1, dv1, v2);
    lv.X = SechCross(frame, v1, v2);
    if (k <= nT)
    {
      lv.full = true;
      lv.rate = ComputeVirialRate(frame, v1, dv1, field, potential, U);
      lv.sech = ComputeSechCrossRate(frame, v1, dv1, v2, field, potential, U);
      lv.norms = ComputeWeightedNorms(frame, v1, dv1, v2);
      double sp = 0.0, ssp = 0.0;
      if (sponge.Active())
      {
        for (int i = 1; i + 1 < n; i++)
        {
          const double gv = -sgamma[i] * v2[i];
          sp += (psi[i] * dv1[i] + 0.5 * dpsi[i] * v1[i]) * gv;
          ssp += sech[i] * v1[i] * gv;
        }
      }
      lv.sponge = sp * h;
      lv.sech_sponge = ssp * h;
      const double q = lv.norms.h1w_v1 + lv.norms.l2w_v2;
      if (k > 0)
      {
        cum += 0.5 * dt * (prev_q + q);
        cum_v1 += 0.5 * dt * (prev_q1 + lv.norms.h1w_v1);
        cum_sponge += 0.5 * dt * (prev_s + lv.sponge);
      }
      prev_q = q;
      prev_q1 = lv.norms.h1w_v1;
      prev_s = lv.sponge;
      lv.cum = cum;

      const double mdi = -lv.rate.Total();
      res.min_minus_dIdt = std::min(res.min_minus_dIdt, mdi);
      if (lv.norms.h1w_v1 > 1e-300 && mdi / lv.norms.h1w_v1 < res.floor)
      {
        res.floor = mdi / lv.norms.h1w_v1;
        res.floor_time = lv.t;
      }
      res.max_rate_scale = std::max(res.max_rate_scale, lv.rate.Scale());
      res.sech_bound_margin =
          std::min(res.sech_bound_margin,
                   lv.sech.Total() - (lv.norms.l2w_v2 - res.sech_constant * lv.norms.h1w_v1));
      double h1 = 0.0, l2 = 0.0;
      for (int i = 0; i < n; i++)
      {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        h1 += w * (v1[i] * v1[i] + dv1[i] * dv1[i]);
        l2 += w * v2[i] * v2[i];
      }
      res.orbital_sup = std::max(res.orbital_sup, std::sqrt(h1 * h) + std::sqrt(l2 * h));
      if (config.track_parity)
      {
        for (int i = 0; i < n; i++)
        {
          const int m = grid.Mirror(i);
          res.max_even_part =
              std::max({res.max_even_part, 0.5 * std::abs(v1[i] + v1[m]),
                        0.5 * std::abs(v2[i] + v2[m])});
        }
      }
      lv.record = (k % diag_stride == 0) || k == nT;
      if (lv.record || k == 0)
      {
        lv.E = energy(u, ut);
        if (k == 0)
        {
          E0 = lv.E;
        }
        res.max_energy_drift = std::max(res.max_energy_drift,
                                        std::abs(lv.E - E0) / std::max(std::abs(E0), 1e-12));
        for (const auto &[a, b] : config.intervals)
        {
          lv.local.push_back(LocalNorm(grid, v1, dv1, v2, a, b));
        }
      }
      if (sink && snap_stride > 0 && k % snap_stride == 0)
      {
        FieldState s;
        s.t = lv.t;
        s.u.assign(u.begin(), u.end());
        s.ut = ut;
        sink(s);
      }
    }
    window.push_back(std::move(lv));
    if (window.size() > 3)
    {
      window.pop_front();
    }
    // Finalise the level before last with a centred difference.
    if (window.size() == 3)
    {
      const Level &a = window[0], &m = window[1], &b = window[2];
      if (m.n == 1)
      {
        finalize(a, (-3.0 * a.I + 4.0 * m.I - b.I) / (2.0 * dt),
                 (-3.0 * a.X + 4.0 * m.X - b.X) / (2.0 * dt));
      }
      if (m.full)
      {
        finalize(m, (b.I - a.I) / (2.0 * dt), (b.X - a.X) / (2.0 * dt));
      }
    }
    if (k < last)
    {
      stepper.Advance();
    }
  }
  if (nT == 0 && !res.records.empty())
  {
    res.records.resize(1);
    res.consistency.resize(1);
  }
  res.cum_integral = cum;
  res.cum_v1 = cum_v1;
  res.cum_sponge = cum_sponge;
  if (std::isinf(res.floor))
  {
    res.floor = 0.0;
  }
  return res;
}

}  // namespace varkg
