// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include "varkg/error.hpp"
#include "varkg/evolve.hpp"
#include "varkg/greensolve.hpp"
#include "varkg/io.hpp"
#include "varkg/simulation.hpp"

namespace varkg::cli
{

namespace fs = std::filesystem;

namespace
{

Coefficient MakeCoefficient(const CoefficientSpec &spec)
{
  if (!spec.csv.empty())
  {
    return Coefficient(ReadProfileCsv(spec.csv));
  }
  return Coefficient(Profile::Make(spec.family, spec.params));
}

std::vector<double> Sample(const Coefficient &f, const Grid &grid)
{
  std::vector<double> out(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    out[i] = f.Value(grid.y(i));
  }
  return out;
}

std::string PrepareOutput(const Json &resolved, const RunConfig &config)
{
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec)
  {
    throw ParameterError("cannot create output directory '" + config.output +
                         "': " + ec.message());
  }
  WriteJsonFile((fs::path(config.output) / "config.resolved.json").string(), resolved);
  return config.output;
}

std::string Path(const std::string &dir, const char *name)
{
  return (fs::path(dir) / name).string();
}

std::ofstream OpenOut(const std::string &path)
{
  std::ofstream f(path);
  if (!f)
  {
    throw ParameterError("cannot write '" + path + "'");
  }
  return f;
}

Json Finite(double x)
{
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

void WriteChecks(const std::string &dir, const Grid &grid,
                 const std::vector<AdmissibilityReport> &reports)
{
  Json j = Json::object();
  bool all = true;
  Json list = Json::array();
  for (const auto &r : reports)
  {
    list.push_back(ReportJson(r));
    all = all && r.pass;
  }
  j["pass"] = all;
  j["reports"] = list;
  WriteJsonFile(Path(dir, "check.json"), j);

  std::vector<std::string> header = {"y"};
  std::vector<const AdmissibilityReport *> cols;
  for (const auto &r : reports)
  {
    if (static_cast<int>(r.node_margins.size()) == grid.Size())
    {
      header.push_back("margin_" + ConditionName(r.condition));
      cols.push_back(&r);
    }
  }
  std::vector<std::vector<double>> rows(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    rows[i].push_back(grid.y(i));
    for (const auto *r : cols)
    {
      rows[i].push_back(r->node_margins[i]);
    }
  }
  auto f = OpenOut(Path(dir, "margins.csv"));
  WriteCsv(f, header, rows);
}

SteadyOptions SteadyOptionsFrom(const RunConfig &config)
{
  SteadyOptions o;
  o.max_iterations = config.steady_max_iterations;
  o.tolerance = config.steady_tolerance;
  o.refine = config.steady_refine;
  return o;
}

Json SteadyJson(const SteadyState &st)
{
  Json j = Json::object();
  j["xi"] = st.xi;
  j["mass"] = st.mass;
  j["converged"] = st.converged;
  j["iterations"] = st.iterations;
  j["sigma"] = st.sigma;
  j["contraction_ratio"] = st.ratio;
  j["residual"] = st.residual;
  j["x_norm"] = st.x_norm;
  j["x_norm_derivative"] = st.x_norm_derivative;
  j["sup_u_delta"] = SupNorm(st.u_delta);
  j["first_iterate_norm"] = st.first_iterate_norm;
  j["in_ball"] = st.in_ball;
  j["decay_rate"] = Finite(st.decay_rate);
  j["normalized_w0"] = st.normalized_w0;
  j["abel_deviation"] = st.abel_deviation;
  j["delta_xi"] = st.delta_xi;
  j["delta_c"] = st.delta_c;
  j["changes"] = st.changes;
  return j;
}

void WriteSteady(const std::string &dir, const CoefficientField &field,
                 const Potential &potential, const SteadyState &st)
{
  const Grid &grid = st.grid;
  const double h = grid.Spacing();
  auto U = st.U();
  auto dU = CentralDiff(U, h);
  auto d2U = SecondDiff(U, h);
  std::vector<std::vector<double>> rows(grid.Size());
  for (int i = 0; i < grid.Size(); i++)
  {
    double res = 0.0;
    if (i > 0 && i + 1 < grid.Size())
    {
      res = -d2U[i] - field.b()[i] * dU[i] - field.c()[i] * U[i] + potential.dF(U[i]);
    }
    rows[i] = {grid.y(i), U[i], st.du_delta.empty() ? 0.0 : st.du_delta[i], res};
  }
  auto f = OpenOut(Path(dir, "steady.csv"));
  WriteCsv(f, {"y", "U", "U_prime", "residual"}, rows);
  WriteJsonFile(Path(dir, "steady.json"), SteadyJson(st));
}

}  // namespace

Potential BuildPotential(const RunConfig &config)
{
  if (config.potential == "polynomial")
  {
    return Potential::Polynomial(config.polynomial);
  }
  return Potential::SineGordon();
}

Problem BuildProblem(const RunConfig &config)
{
  Potential pot = BuildPotential(config);
  VacuumInfo vac = GetVacuumInfo(pot, config.xi);
  Grid grid = Grid::Symmetric(config.L, config.N);
  Coefficient b = MakeCoefficient(config.b);
  Coefficient c = MakeCoefficient(config.c);
  if (config.a)
  {
    Coefficient a = MakeCoefficient(*config.a);
    CoefficientField field = TransformToY(grid, Sample(a, grid), Sample(b, grid), Sample(c, grid));
    if (config.decay)
    {
      field.SetDecay(*config.decay);
    }
    return Problem{pot, vac.xi, vac.mass, std::move(field)};
  }
  CoefficientField field(std::move(b), std::move(c), grid);
  if (config.decay)
  {
    field.SetDecay(*config.decay);
  }
  return Problem{pot, vac.xi, vac.mass, std::move(field)};
}

std::vector<AdmissibilityReport> RunChecks(const RunConfig &config, const Problem &problem)
{
  std::vector<AdmissibilityReport> out;
  for (Condition c : config.checks)
  {
    switch (c)
    {
    case Condition::VacuumCoercive:
      out.push_back(CheckVacuumAdmissible(problem.field, config.lambda));
      break;
    case Condition::SignConditions:
      out.push_back(CheckSignConditions(problem.field));
      break;
    case Condition::Orbital:
      out.push_back(CheckOrbital(problem.field, problem.potential, problem.xi));
      break;
    case Condition::ExpDecay:
      out.push_back(CheckExpDecay(problem.field));
      break;
    }
  }
  return out;
}

Json ReportJson(const AdmissibilityReport &r)
{
  Json j = Json::object();
  j["condition"] = ConditionName(r.condition);
  j["pass"] = r.pass;
  j["worst_margin"] = Finite(r.worst_margin);
  j["worst_location"] = Finite(r.worst_location);
  j["parameter"] = Finite(r.parameter);
  Json s = Json::array();
  for (const auto &m : r.smallest)
  {
    s.push_back(Json{{"y", m.y}, {"margin", m.margin}});
  }
  j["smallest"] = s;
  j["flagged"] = r.flagged;
  j["note"] = r.note;
  return j;
}

Json SummaryJson(const RunSummary &s)
{
  Json j = Json::object();
  j["rows"] = s.rows;
  j["t_final"] = s.t_final;
  j["I0"] = s.I0;
  j["IT"] = s.IT;
  j["min_minus_dIdt"] = Finite(s.min_minus_dIdt);
  j["floor"] = Finite(s.floor);
  j["floor_time"] = s.floor_time;
  j["cum_integral"] = s.cum_integral;
  j["cum_v1"] = s.cum_v1;
  j["max_energy_drift"] = Finite(s.max_energy_drift);
  Json local = Json::array();
  for (const auto &l : s.local)
  {
    local.push_back(Json{{"name", l.name},
                         {"peak", l.peak},
                         {"final", l.final},
                         {"decay_factor", Finite(l.factor)}});
  }
  j["local"] = local;
  return j;
}

int CmdCheck(const Json &resolved, std::ostream &log)
{
  RunConfig config = ParseRunConfig(resolved);
  Problem problem = BuildProblem(config);
  auto dir = PrepareOutput(resolved, config);
  auto reports = RunChecks(config, problem);
  WriteChecks(dir, problem.field.GetGrid(), reports);
  bool all = true;
  for (const auto &r : reports)
  {
    log << ConditionName(r.condition) << ": " << (r.pass ? "pass" : "FAIL")
        << "  worst margin " << FormatFloat(r.worst_margin) << " at y = "
        << FormatFloat(r.worst_location) << "\n";
    all = all && r.pass;
  }
  return all ? kOk : kCheckFailed;
}

int CmdSteady(const Json &resolved, std::ostream &log)
{
  RunConfig config = ParseRunConfig(resolved);
  Problem problem = BuildProblem(config);
  auto dir = PrepareOutput(resolved, config);
  SteadyState st =
      ConstructSteadyState(problem.field, problem.potential, problem.xi, SteadyOptionsFrom(config));
  WriteSteady(dir, problem.field, problem.potential, st);
  log << "steady: " << (st.converged ? "converged" : "NOT converged") << " in " << st.iterations
      << " iterations, residual " << FormatFloat(st.residual) << ", sigma "
      << FormatFloat(st.sigma) << "\n";
  return st.converged ? kOk : kNumerical;
}

int CmdEvolve(const Json &resolved, std::ostream &log)
{
  RunConfig config = ParseRunConfig(resolved);
  Problem problem = BuildProblem(config);
  auto dir = PrepareOutput(resolved, config);
  const CoefficientField &field = problem.field;
  const Grid &grid = field.GetGrid();

  auto reports = RunChecks(config, problem);
  WriteChecks(dir, grid, reports);

  SteadyState st =
      ConstructSteadyState(field, problem.potential, problem.xi, SteadyOptionsFrom(config));
  if (!st.converged)
  {
    throw NumericalError("steady state did not converge");
  }
  WriteSteady(dir, field, problem.potential, st);
  auto U = st.U();

  const double limit = StableStepLimit(field, problem.potential);
  const double dt = std::min(config.dt_factor * grid.Spacing(), 0.5 * limit);

  Perturbation data = MakeInitialPerturbation(grid, config.data);
  SpongeProfile sponge = config.sponge
                             ? SpongeProfile::Make(grid, config.sponge_width, config.sponge_gamma)
                             : SpongeProfile::None(grid);

  SimulationConfig sc;
  sc.dt = dt;
  sc.T = config.T;
  sc.diag_interval = config.diag_interval;
  sc.snap_interval = config.snap_interval;
  sc.snapshot_stride = config.snapshot_stride;
  sc.lambda = config.lambda;
  sc.intervals = config.intervals;
  sc.track_parity = config.data.parity == Parity::Odd;
  sc.energy_mode = config.energy_mode;

  auto snaps = OpenOut(Path(dir, "snapshots.ndjson"));
  SnapshotSink sink = [&](const FieldState &s)
  { WriteSnapshot(snaps, grid, s, config.snapshot_stride); };
  SimulationResult res =
      RunSimulation(field, problem.potential, problem.xi, U, data, sponge, sc, sink);

  {
    auto f = OpenOut(Path(dir, "diagnostics.csv"));
    WriteDiagnosticsCsv(f, res.records, config.intervals);
  }
  auto columns = DiagnosticsColumns(config.intervals);
  std::vector<std::string> local_names(columns.end() - config.intervals.size(), columns.end());
  RunSummary summary = Summarize(RoundTrip(res.records), local_names);
  WriteJsonFile(Path(dir, "summary.json"), SummaryJson(summary));

  const double h = grid.Spacing();
  const double tol_v = 5.0 * (dt * dt + h * h);
  int ok_v = 0, ok_s = 0;
  double max_sech_scale = 0.0;
  for (const auto &c : res.consistency)
  {
    max_sech_scale = std::max(max_sech_scale, c.sech_scale);
  }
  for (const auto &c : res.consistency)
  {
    ok_v += std::abs(c.virial_fd - c.virial_formula - c.virial_sponge) <=
            tol_v * res.max_rate_scale;
    ok_s += std::abs(c.sech_fd - c.sech_formula - c.sech_sponge) <= tol_v * max_sech_scale;
  }
  const double nrec = std::max<double>(1.0, res.consistency.size());

  Json run = Json::object();
  run["dt"] = dt;
  run["dt_factor"] = config.dt_factor;
  run["stable_step_limit"] = limit;
  run["dy"] = h;
  run["steps"] = res.steps;
  run["sponge"] = config.sponge;
  run["xi"] = problem.xi;
  run["background_energy"] = res.background_energy;
  run["epsilon"] = config.data.epsilon;
  run["initial_norm"] = res.initial_norm;
  run["orbital_sup"] = res.orbital_sup;
  run["orbital_ratio"] = config.data.epsilon > 0.0 ? Finite(res.orbital_sup / config.data.epsilon)
                                                    : Json(nullptr);
  run["min_minus_dIdt"] = Finite(res.min_minus_dIdt);
  run["max_rate_scale"] = res.max_rate_scale;
  run["floor"] = Finite(res.floor);
  run["floor_time"] = res.floor_time;
  run["cum_integral"] = res.cum_integral;
  run["cum_v1"] = res.cum_v1;
  run["cum_sponge"] = res.cum_sponge;
  run["sech_constant"] = res.sech_constant;
  run["sech_bound_margin"] = Finite(res.sech_bound_margin);
  run["max_energy_drift"] = res.max_energy_drift;
  run["virial_consistency_fraction"] = ok_v / nrec;
  run["sech_consistency_fraction"] = ok_s / nrec;
  if (sc.track_parity)
  {
    run["max_even_part"] = res.max_even_part;
    run["parity_preserved"] = res.max_even_part <= 1e-8;
  }
  WriteJsonFile(Path(dir, "run.json"), run);

  log << "evolve: " << res.steps << " steps, dt " << FormatFloat(dt) << ", "
      << res.records.size() << " diagnostic rows\n";
  for (const auto &l : summary.local)
  {
    log << "  " << l.name << " decay factor " << FormatFloat(l.factor) << "\n";
  }
  return kOk;
}

int CmdReport(const std::vector<std::string> &paths, const std::string &out_dir,
              std::ostream &log)
{
  if (paths.empty() || paths.size() > 2)
  {
    throw ParameterError("report takes one or two diagnostics CSV files");
  }
  std::vector<Json> summaries;
  for (const auto &p : paths)
  {
    std::vector<std::string> names;
    auto records = ReadDiagnostics(ReadCsvFile(p), names);
    summaries.push_back(SummaryJson(Summarize(records, names)));
  }
  Json out;
  if (summaries.size() == 1)
  {
    out = summaries[0];
  }
  else
  {
    out = Json::object();
    out["runs"] = Json::array({summaries[0], summaries[1]});
    Json table = Json::array();
    for (auto it = summaries[0].begin(); it != summaries[0].end(); ++it)
    {
      const Json &a = it.value();
      const Json &b = summaries[1][it.key()];
      if (a.is_number() && b.is_number())
      {
        double x = a.get<double>(), y = b.get<double>();
        table.push_back(
            Json{{"quantity", it.key()}, {"a", x}, {"b", y}, {"ratio", Finite(y / x)}});
      }
    }
    const Json &la = summaries[0]["local"];
    const Json &lb = summaries[1]["local"];
    for (std::size_t i = 0; i < std::min(la.size(), lb.size()); i++)
    {
      if (la[i]["decay_factor"].is_number() && lb[i]["decay_factor"].is_number())
      {
        double x = la[i]["decay_factor"].get<double>(), y = lb[i]["decay_factor"].get<double>();
        table.push_back(Json{{"quantity", la[i]["name"].get<std::string>() + ".decay_factor"},
                             {"a", x},
                             {"b", y},
                             {"ratio", Finite(y / x)}});
      }
    }
    out["ratios"] = table;
  }
  if (!out_dir.empty())
  {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
    {
      throw ParameterError("cannot create output directory '" + out_dir + "'");
    }
    WriteJsonFile(Path(out_dir, paths.size() == 1 ? "summary.json" : "comparison.json"), out);
  }
  log << DumpJson(out);
  return kOk;
}

int Guarded(const std::function<int()> &body, std::ostream &err)
{
  try
  {
    return body();
  }
  catch (const ParameterError &e)
  {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  catch (const NumericalError &e)
  {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  catch (const nlohmann::json::exception &e)
  {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  catch (const std::exception &e)
  {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace varkg::cli
