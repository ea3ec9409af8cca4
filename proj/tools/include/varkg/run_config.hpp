// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_RUN_CONFIG_HPP
#define VARKG_RUN_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include "json.hpp"
#include "varkg/coeffs.hpp"
#include "varkg/evolve.hpp"
#include "varkg/potentials.hpp"

namespace varkg::cli
{

using Json = nlohmann::ordered_json;

struct CoefficientSpec
{
  // Either a profile family with parameters or a two-column CSV path.
  std::string family = "zero";
  std::map<std::string, double> params;
  std::string csv;
};

struct RunConfig
{
  std::string scenario;
  std::string potential = "sine-gordon";
  std::vector<double> polynomial;
  std::optional<CoefficientSpec> a;
  CoefficientSpec b, c;
  std::optional<DecayMetadata> decay;
  double xi = 0.0;
  double L = 40.0;
  int N = 4000;
  double dt_factor = 0.4;
  double T = 10.0;
  double diag_interval = 0.05;
  double snap_interval = 5.0;
  int snapshot_stride = 10;
  bool energy_mode = false;
  double lambda = 13.0;
  int steady_max_iterations = 100;
  double steady_tolerance = 1e-12;
  int steady_refine = 1;
  InitialDataSpec data;
  bool sponge = true;
  double sponge_width = 0.2;
  double sponge_gamma = 1.0;
  std::vector<std::pair<double, double>> intervals = {{-5.0, 5.0}};
  std::vector<Condition> checks;
  std::uint64_t seed = 1;
  std::string output = "out";
};

// Built-in scenario ids.
std::vector<std::string> ScenarioNames();
Json ScenarioPatch(const std::string &name);
Json DefaultConfig();

// Merge patch; coefficient specs under "coefficients" are replaced, not merged.
Json Overlay(Json base, const Json &patch);
// defaults <- scenario <- user; coefficient specs are replaced, not merged.
Json ResolveConfig(const Json &user);
// Strict: unknown keys, wrong types and out-of-range values throw ParameterError.
RunConfig ParseRunConfig(const Json &resolved);

Json LoadJsonFile(const std::string &path);

// JSON with every floating-point number printed as %.12e (non-finite as null).
void WriteJson(std::ostream &os, const Json &value);
std::string DumpJson(const Json &value);
void WriteJsonFile(const std::string &path, const Json &value);

}  // namespace varkg::cli

#endif  // VARKG_RUN_CONFIG_HPP
