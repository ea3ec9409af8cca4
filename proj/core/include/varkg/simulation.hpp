// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_SIMULATION_HPP
#define VARKG_SIMULATION_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>
#include "varkg/evolve.hpp"
#include "varkg/virial.hpp"

namespace varkg
{

struct SimulationConfig
{
  double dt = 0.004;
  double T = 60.0;
  double diag_interval = 0.05;
  double snap_interval = 5.0;
  int snapshot_stride = 10;
  double lambda = 13.0;
  std::vector<std::pair<double, double>> intervals = {{-5.0, 5.0}};
  bool track_parity = false;
  // Sponge-free conservation mode; enforces the reflection guard.
  bool energy_mode = false;
};

// Finite-difference and formula rates at one diagnostic time.
struct ConsistencySample
{
  double t = 0.0;
  double virial_fd = 0.0;
  double virial_formula = 0.0;
  double virial_sponge = 0.0;
  double virial_scale = 0.0;
  double sech_fd = 0.0;
  double sech_formula = 0.0;
  double sech_sponge = 0.0;
  double sech_scale = 0.0;
};

struct SimulationResult
{
  std::vector<DiagnosticsRecord> records;
  std::vector<ConsistencySample> consistency;
  double dt = 0.0;
  long steps = 0;
  double background_energy = 0.0;
  // Extremes over every time level, not only the recorded ones.
  double min_minus_dIdt = 0.0;
  double floor = 0.0;
  double floor_time = 0.0;
  double max_rate_scale = 0.0;
  double cum_integral = 0.0;
  double cum_v1 = 0.0;
  double cum_sponge = 0.0;
  double orbital_sup = 0.0;
  double initial_norm = 0.0;
  double max_even_part = 0.0;
  double sech_constant = 0.0;
  // min over levels of rate - (||v2||^2 - C ||v1||^2).
  double sech_bound_margin = 0.0;
  double max_energy_drift = 0.0;
};

using SnapshotSink = std::function<void(const FieldState &)>;

// Evolve u = U + v from (v1, v2) and record diagnostics every diag_interval.
SimulationResult RunSimulation(const CoefficientField &field, const Potential &potential,
                               double xi, std::span<const double> U, const Perturbation &data,
                               const SpongeProfile &sponge, const SimulationConfig &config,
                               const SnapshotSink &sink = {});

}  // namespace varkg

#endif  // VARKG_SIMULATION_HPP
