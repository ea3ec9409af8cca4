// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

// varkg: check | steady | evolve | report

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include "CLI11.hpp"
#include "varkg/commands.hpp"
#include "varkg/error.hpp"

using namespace varkg::cli;

namespace
{

using Command = int (*)(const Json &, std::ostream &);

std::vector<Json> ReadSweep(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw varkg::ParameterError("cannot open sweep file '" + path + "'");
  }
  std::vector<Json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line))
  {
    lineno++;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
    {
      continue;
    }
    try
    {
      out.push_back(Json::parse(line));
    }
    catch (const nlohmann::json::parse_error &e)
    {
      throw varkg::ParameterError("sweep line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!out.back().is_object())
    {
      throw varkg::ParameterError("sweep line " + std::to_string(lineno) +
                                  " must be a JSON object");
    }
  }
  if (out.empty())
  {
    throw varkg::ParameterError("sweep file '" + path + "' has no entries");
  }
  return out;
}

int Dispatch(Command cmd, const std::string &config_path, const std::string &out,
             const std::string &sweep_path, long seed)
{
  Json user = config_path.empty() ? Json::object() : LoadJsonFile(config_path);
  if (!user.is_object())
  {
    throw varkg::ParameterError("config must be a JSON object");
  }
  if (!out.empty())
  {
    user["output"] = out;
  }
  if (seed >= 0)
  {
    user["seed"] = seed;
  }
  if (sweep_path.empty())
  {
    return cmd(ResolveConfig(user), std::cout);
  }

  auto patches = ReadSweep(sweep_path);
  const std::string base = user.contains("output") && user["output"].is_string()
                               ? user["output"].get<std::string>()
                               : std::string("out");
  std::vector<Json> configs;
  for (std::size_t k = 0; k < patches.size(); k++)
  {
    Json c = Overlay(user, patches[k]);
    if (!patches[k].contains("output"))
    {
      char name[32];
      std::snprintf(name, sizeof(name), "sweep_%03zu", k);
      c["output"] = base + "/" + name;
    }
    // Validate everything before any compute starts.
    ParseRunConfig(ResolveConfig(c));
    configs.push_back(ResolveConfig(c));
  }
  std::vector<std::ostringstream> logs(configs.size());
  std::vector<std::future<int>> jobs;
  for (std::size_t k = 0; k < configs.size(); k++)
  {
    jobs.push_back(std::async(std::launch::async,
                              [&, k] { return Guarded([&] { return cmd(configs[k], logs[k]); },
                                                      logs[k]); }));
  }
  int code = kOk;
  for (std::size_t k = 0; k < jobs.size(); k++)
  {
    int c = jobs[k].get();
    std::cout << "[" << configs[k]["output"].get<std::string>() << "] exit " << c << "\n"
              << logs[k].str();
    code = std::max(code, c);
  }
  return code;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Variable-coefficient Klein-Gordon toolkit: steady states, evolution and "
               "virial diagnostics"};
  app.require_subcommand(1);

  std::string config_path, out, sweep_path;
  long seed = -1;
  std::vector<std::string> csvs;

  auto add_common = [&](CLI::App *sub)
  {
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--sweep", sweep_path, "NDJSON of config overrides, run concurrently")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "seed for random initial data")->check(CLI::NonNegativeNumber);
  };
  auto *check = app.add_subcommand("check", "admissibility checks for the coefficients");
  auto *steady = app.add_subcommand("steady", "construct the stationary state");
  auto *evolve = app.add_subcommand("evolve", "evolve a perturbation and record diagnostics");
  auto *report = app.add_subcommand("report", "summarise one or compare two diagnostics CSVs");
  add_common(check);
  add_common(steady);
  add_common(evolve);
  report->add_option("diagnostics", csvs, "diagnostics.csv (one or two)")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
  report->add_option("--out", out, "write summary.json / comparison.json here");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return kUsage;
  }

  return Guarded(
      [&]
      {
        if (report->parsed())
        {
          return CmdReport(csvs, out, std::cout);
        }
        Command cmd = check->parsed() ? CmdCheck : steady->parsed() ? CmdSteady : CmdEvolve;
        return Dispatch(cmd, config_path, out, sweep_path, seed);
      },
      std::cerr);
}
