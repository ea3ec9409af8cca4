// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_COMMANDS_HPP
#define VARKG_COMMANDS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>
#include "varkg/coeffs.hpp"
#include "varkg/potentials.hpp"
#include "varkg/run_config.hpp"
#include "varkg/virial.hpp"

namespace varkg::cli
{

enum ExitCode
{
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNumerical = 3
};

struct Problem
{
  Potential potential;
  double xi = 0.0;
  double mass = 0.0;
  CoefficientField field;
};

Potential BuildPotential(const RunConfig &config);
Problem BuildProblem(const RunConfig &config);

std::vector<AdmissibilityReport> RunChecks(const RunConfig &config, const Problem &problem);
Json ReportJson(const AdmissibilityReport &report);
Json SummaryJson(const RunSummary &summary);

// Each command writes config.resolved.json plus its own files into config.output and
// returns an exit code; errors propagate as ParameterError / NumericalError.
int CmdCheck(const Json &resolved, std::ostream &log);
int CmdSteady(const Json &resolved, std::ostream &log);
int CmdEvolve(const Json &resolved, std::ostream &log);
// One diagnostics CSV -> summary; two -> both summaries and a ratio table.
// Writes summary.json (one file) or comparison.json (two) into out_dir when it is
// non-empty, and prints it to log.
int CmdReport(const std::vector<std::string> &paths, const std::string &out_dir,
              std::ostream &log);

// Maps exceptions to exit codes, printing the message to err.
int Guarded(const std::function<int()> &body, std::ostream &err);

}  // namespace varkg::cli

#endif  // VARKG_COMMANDS_HPP
