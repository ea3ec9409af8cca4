// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include "varkg/error.hpp"
#include "varkg/io.hpp"

namespace varkg::cli
{

std::vector<std::string> ScenarioNames()
{
  return {"paper-example-vacuum", "odd-near-2pi", "flat"};
}

Json DefaultConfig()
{
  return Json::parse(R"({
    "scenario": "",
    "potential": {"family": "sine-gordon", "coefficients": []},
    "coefficients": {"a": null, "b": {"family": "zero"}, "c": {"family": "zero"}, "decay": null},
    "xi": 0.0,
    "grid": {"L": 40.0, "N": 4000},
    "time": {"dt_factor": 0.4, "T": 10.0, "diag_interval": 0.05, "snap_interval": 5.0,
             "snapshot_stride": 10, "energy_mode": false},
    "virial": {"lambda": 13.0},
    "steady": {"max_iterations": 100, "tolerance": 1e-12, "refine": 1},
    "initial_data": {"family": "random", "epsilon": 0.01, "parity": "none", "beta": 1.0,
                     "center": 0.0, "knot_spacing": 1.0, "support": 4.0, "with_velocity": true},
    "sponge": {"enabled": true, "width": 0.2, "gamma_max": 1.0},
    "intervals": [[-5.0, 5.0]],
    "checks": ["vacuum", "orbital", "decay"],
    "seed": 1,
    "output": "out"
  })");
}

Json ScenarioPatch(const std::string &name)
{
  if (name == "paper-example-vacuum")
  {
    return Json::parse(R"({
      "coefficients": {"b": {"family": "paper-b", "params": {"lambda": 13.0}},
                       "c": {"family": "paper-c", "params": {"lambda": 13.0}}},
      "xi": 0.0,
      "grid": {"L": 80.0, "N": 16000},
      "time": {"T": 60.0},
      "virial": {"lambda": 13.0},
      "initial_data": {"family": "random", "epsilon": 0.01, "parity": "none"},
      "checks": ["vacuum", "orbital", "decay"]
    })");
  }
  if (name == "odd-near-2pi")
  {
    Json j = Json::parse(R"({
      "coefficients": {"b": {"family": "zero"}, "c": {"family": "zero"}},
      "grid": {"L": 80.0, "N": 16000},
      "time": {"T": 60.0},
      "virial": {"lambda": 100.0},
      "initial_data": {"family": "random", "epsilon": 0.01, "parity": "odd"},
      "checks": ["sign", "orbital", "decay"]
    })");
    j["xi"] = 2.0 * std::numbers::pi;
    return j;
  }
  if (name == "flat")
  {
    return Json::parse(R"({
      "coefficients": {"b": {"family": "zero"}, "c": {"family": "zero"}},
      "xi": 0.0,
      "grid": {"L": 40.0, "N": 4000},
      "checks": ["orbital"]
    })");
  }
  throw ParameterError("unknown scenario '" + name + "'");
}

namespace
{

void Layer(Json &base, const Json &patch)
{
  if (!patch.is_object())
  {
    throw ParameterError("config must be a JSON object");
  }
  Json p = patch;
  Json coeff;
  if (p.contains("coefficients") && p["coefficients"].is_object())
  {
    coeff = p["coefficients"];
    p.erase("coefficients");
  }
  base.merge_patch(p);
  if (!coeff.is_null())
  {
    for (auto &[k, v] : coeff.items())
    {
      base["coefficients"][k] = v;
    }
  }
}

std::string Where(const std::string &path, const std::string &key)
{
  return path.empty() ? key : path + "." + key;
}

// Strict object reader: every key must be consumed.
class Reader
{
public:
  Reader(const Json &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ParameterError("config: '" + (path_.empty() ? "<root>" : path_) +
                           "' must be an object");
    }
  }

  const Json &Raw(const std::string &key)
  {
    if (!j_.contains(key))
    {
      throw ParameterError("config: missing '" + Where(path_, key) + "'");
    }
    used_.insert(key);
    return j_.at(key);
  }

  bool Has(const std::string &key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  void Skip(const std::string &key) { used_.insert(key); }

  double Number(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_number())
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x))
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be finite");
    }
    return x;
  }

  double Positive(const std::string &key)
  {
    double x = Number(key);
    if (!(x > 0.0))
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be > 0");
    }
    return x;
  }

  double NonNegative(const std::string &key)
  {
    double x = Number(key);
    if (!(x >= 0.0))
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be >= 0");
    }
    return x;
  }

  long Integer(const std::string &key, long lo)
  {
    const Json &v = Raw(key);
    if (!v.is_number_integer())
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be an integer");
    }
    long x = v.get<long>();
    if (x < lo)
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be >= " +
                           std::to_string(lo));
    }
    return x;
  }

  bool Bool(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_boolean())
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be true or false");
    }
    return v.get<bool>();
  }

  std::string String(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_string())
    {
      throw ParameterError("config: '" + Where(path_, key) + "' must be a string");
    }
    return v.get<std::string>();
  }

  Reader Object(const std::string &key) { return Reader(Raw(key), Where(path_, key)); }

  const std::string &Path() const { return path_; }

  void Finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it)
    {
      if (!used_.count(it.key()))
      {
        throw ParameterError("config: unknown key '" + Where(path_, it.key()) + "'");
      }
    }
  }

private:
  const Json &j_;
  std::string path_;
  std::set<std::string> used_;
};

CoefficientSpec ParseCoefficient(Reader r)
{
  CoefficientSpec s;
  if (r.Has("csv"))
  {
    s.csv = r.String("csv");
    s.family.clear();
    if (r.Has("family") || r.Has("params"))
    {
      throw ParameterError("config: '" + r.Path() + "' takes either csv or family, not both");
    }
    r.Skip("family");
    r.Skip("params");
  }
  else
  {
    s.family = r.String("family");
    if (r.Has("params"))
    {
      Reader p = r.Object("params");
      const Json &raw = r.Raw("params");
      for (auto it = raw.begin(); it != raw.end(); ++it)
      {
        s.params[it.key()] = p.Number(it.key());
      }
      p.Finish();
    }
    else
    {
      r.Skip("params");
    }
    // Validate family and parameter names now.
    (void)Profile::Make(s.family, s.params);
  }
  r.Finish();
  return s;
}

Condition ParseCondition(const std::string &name)
{
  if (name == "vacuum")
  {
    return Condition::VacuumCoercive;
  }
  if (name == "sign")
  {
    return Condition::SignConditions;
  }
  if (name == "orbital")
  {
    return Condition::Orbital;
  }
  if (name == "decay")
  {
    return Condition::ExpDecay;
  }
  throw ParameterError("config: unknown check '" + name +
                       "' (expected vacuum, sign, orbital or decay)");
}

}  // namespace

Json Overlay(Json base, const Json &patch)
{
  Layer(base, patch);
  return base;
}

Json ResolveConfig(const Json &user)
{
  if (!user.is_object())
  {
    throw ParameterError("config must be a JSON object");
  }
  Json out = DefaultConfig();
  if (user.contains("scenario") && user["scenario"].is_string() &&
      !user["scenario"].get<std::string>().empty())
  {
    Layer(out, ScenarioPatch(user["scenario"].get<std::string>()));
  }
  Layer(out, user);
  return out;
}

RunConfig ParseRunConfig(const Json &resolved)
{
  RunConfig c;
  Reader root(resolved, "");
  c.scenario = root.String("scenario");

  {
    Reader p = root.Object("potential");
    c.potential = p.String("family");
    const Json &coeffs = p.Raw("coefficients");
    if (!coeffs.is_array())
    {
      throw ParameterError("config: 'potential.coefficients' must be an array");
    }
    for (const auto &v : coeffs)
    {
      if (!v.is_number())
      {
        throw ParameterError("config: 'potential.coefficients' must hold numbers");
      }
      c.polynomial.push_back(v.get<double>());
    }
    if (c.potential == "polynomial")
    {
      (void)Potential::Polynomial(c.polynomial);
    }
    else if (c.potential != "sine-gordon")
    {
      throw ParameterError("config: unknown potential family '" + c.potential +
                           "' (expected sine-gordon or polynomial)");
    }
    p.Finish();
  }

  {
    Reader co = root.Object("coefficients");
    if (co.Has("a"))
    {
      c.a = ParseCoefficient(co.Object("a"));
    }
    else
    {
      co.Skip("a");
    }
    c.b = ParseCoefficient(co.Object("b"));
    c.c = ParseCoefficient(co.Object("c"));
    if (co.Has("decay"))
    {
      Reader d = co.Object("decay");
      c.decay = DecayMetadata{d.Positive("K"), d.Positive("k")};
      d.Finish();
    }
    else
    {
      co.Skip("decay");
    }
    co.Finish();
  }

  c.xi = root.Number("xi");

  {
    Reader g = root.Object("grid");
    c.L = g.Positive("L");
    c.N = static_cast<int>(g.Integer("N", 4));
    if (c.N % 2 != 0)
    {
      throw ParameterError("config: 'grid.N' must be even");
    }
    g.Finish();
  }

  {
    Reader t = root.Object("time");
    c.dt_factor = t.Positive("dt_factor");
    if (c.dt_factor > 0.4)
    {
      throw ParameterError("config: 'time.dt_factor' must be <= 0.4 (CFL)");
    }
    c.T = t.NonNegative("T");
    c.diag_interval = t.NonNegative("diag_interval");
    c.snap_interval = t.NonNegative("snap_interval");
    c.snapshot_stride = static_cast<int>(t.Integer("snapshot_stride", 1));
    c.energy_mode = t.Bool("energy_mode");
    t.Finish();
  }

  {
    Reader v = root.Object("virial");
    c.lambda = v.Positive("lambda");
    v.Finish();
  }

  {
    Reader s = root.Object("steady");
    c.steady_max_iterations = static_cast<int>(s.Integer("max_iterations", 1));
    c.steady_tolerance = s.Positive("tolerance");
    c.steady_refine = static_cast<int>(s.Integer("refine", 1));
    s.Finish();
  }

  {
    Reader d = root.Object("initial_data");
    c.data.family = ParseDataFamily(d.String("family"));
    c.data.epsilon = d.NonNegative("epsilon");
    c.data.parity = ParseParity(d.String("parity"));
    c.data.beta = d.Positive("beta");
    c.data.center = d.Number("center");
    c.data.knot_spacing = d.Positive("knot_spacing");
    c.data.support = d.Positive("support");
    c.data.with_velocity = d.Bool("with_velocity");
    d.Finish();
  }

  {
    Reader s = root.Object("sponge");
    c.sponge = s.Bool("enabled");
    c.sponge_width = s.Positive("width");
    if (c.sponge_width >= 1.0)
    {
      throw ParameterError("config: 'sponge.width' must be < 1 (fraction of each half)");
    }
    c.sponge_gamma = s.NonNegative("gamma_max");
    s.Finish();
  }

  {
    const Json &iv = root.Raw("intervals");
    if (!iv.is_array())
    {
      throw ParameterError("config: 'intervals' must be an array of [a, b] pairs");
    }
    c.intervals.clear();
    for (const auto &p : iv)
    {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      {
        throw ParameterError("config: 'intervals' must be an array of [a, b] pairs");
      }
      double a = p[0].get<double>(), b = p[1].get<double>();
      if (!(a < b) || a < -c.L || b > c.L)
      {
        throw ParameterError("config: interval [a, b] needs -L <= a < b <= L");
      }
      c.intervals.emplace_back(a, b);
    }
  }

  {
    const Json &ch = root.Raw("checks");
    if (!ch.is_array())
    {
      throw ParameterError("config: 'checks' must be an array of names");
    }
    for (const auto &v : ch)
    {
      if (!v.is_string())
      {
        throw ParameterError("config: 'checks' must be an array of names");
      }
      c.checks.push_back(ParseCondition(v.get<std::string>()));
    }
  }

  c.seed = static_cast<std::uint64_t>(root.Integer("seed", 0));
  c.data.seed = c.seed;
  c.output = root.String("output");
  if (c.output.empty())
  {
    throw ParameterError("config: 'output' must not be empty");
  }
  root.Finish();
  return c;
}

Json LoadJsonFile(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw ParameterError("cannot open config '" + path + "'");
  }
  try
  {
    return Json::parse(f);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw ParameterError("malformed JSON in '" + path + "': " + e.what());
  }
}

namespace
{

void WriteString(std::ostream &os, const std::string &s)
{
  os << Json(s).dump();
}

void Write(std::ostream &os, const Json &v, int depth)
{
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (v.type())
  {
  case Json::value_t::object:
    if (v.empty())
    {
      os << "{}";
      return;
    }
    os << "{\n";
    for (auto it = v.begin(); it != v.end(); ++it)
    {
      os << pad;
      WriteString(os, it.key());
      os << ": ";
      Write(os, it.value(), depth + 1);
      os << (std::next(it) == v.end() ? "\n" : ",\n");
    }
    os << close << "}";
    return;
  case Json::value_t::array:
  {
    if (v.empty())
    {
      os << "[]";
      return;
    }
    bool scalar = true;
    for (const auto &e : v)
    {
      scalar = scalar && !e.is_structured();
    }
    os << "[";
    for (std::size_t i = 0; i < v.size(); i++)
    {
      if (!scalar)
      {
        os << "\n" << pad;
      }
      Write(os, v[i], depth + 1);
      if (i + 1 < v.size())
      {
        os << (scalar ? ", " : ",");
      }
    }
    if (!scalar)
    {
      os << "\n" << close;
    }
    os << "]";
    return;
  }
  case Json::value_t::number_float:
  {
    double x = v.get<double>();
    if (std::isfinite(x))
    {
      os << FormatFloat(x);
    }
    else
    {
      os << "null";
    }
    return;
  }
  default:
    os << v.dump();
  }
}

}  // namespace

void WriteJson(std::ostream &os, const Json &value)
{
  Write(os, value, 0);
  os << "\n";
}

std::string DumpJson(const Json &value)
{
  std::ostringstream ss;
  WriteJson(ss, value);
  return ss.str();
}

void WriteJsonFile(const std::string &path, const Json &value)
{
  std::ofstream f(path);
  if (!f)
  {
    throw ParameterError("cannot write '" + path + "'");
  }
  WriteJson(f, value);
}

}  // namespace varkg::cli
