// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include "varkg/error.hpp"

namespace varkg
{

std::string FormatFloat(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

double RoundTrip(double x)
{
  return std::strtod(FormatFloat(x).c_str(), nullptr);
}

int CsvTable::Column(const std::string &name) const
{
  for (std::size_t i = 0; i < header.size(); i++)
  {
    if (header[i] == name)
    {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void WriteCsv(std::ostream &os, const std::vector<std::string> &header,
              const std::vector<std::vector<double>> &rows)
{
  for (std::size_t i = 0; i < header.size(); i++)
  {
    os << (i ? "," : "") << header[i];
  }
  os << '\n';
  for (const auto &row : rows)
  {
    for (std::size_t i = 0; i < row.size(); i++)
    {
      os << (i ? "," : "") << FormatFloat(row[i]);
    }
    os << '\n';
  }
}

namespace
{

std::vector<std::string> SplitComma(const std::string &line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
  {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
    {
      cell.pop_back();
    }
    std::size_t s = cell.find_first_not_of(' ');
    out.push_back(s == std::string::npos ? std::string() : cell.substr(s));
  }
  return out;
}

}  // namespace

CsvTable ReadCsv(std::istream &is)
{
  CsvTable t;
  std::string line;
  if (!std::getline(is, line))
  {
    throw ParameterError("CSV: missing header row");
  }
  t.header = SplitComma(line);
  int lineno = 1;
  while (std::getline(is, line))
  {
    lineno++;
    if (line.empty() || line == "\r")
    {
      continue;
    }
    auto cells = SplitComma(line);
    if (cells.size() != t.header.size())
    {
      throw ParameterError("CSV: line " + std::to_string(lineno) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(t.header.size()));
    }
    std::vector<double> row;
    for (const auto &c : cells)
    {
      char *end = nullptr;
      double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end == c.c_str() || *end != '\0')
      {
        throw ParameterError("CSV: line " + std::to_string(lineno) + ": cannot parse '" + c +
                             "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable ReadCsvFile(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw ParameterError("cannot open '" + path + "'");
  }
  return ReadCsv(f);
}

void WriteDiagnosticsCsv(std::ostream &os, const std::vector<DiagnosticsRecord> &records,
                         const std::vector<std::pair<double, double>> &intervals)
{
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto &r : records)
  {
    std::vector<double> row = {r.t,      r.E,      r.I,          r.dIdt_fd,     r.dIdt_formula,
                               r.h1w_v1, r.l2w_v2, r.sech_cross, r.cum_integral};
    row.insert(row.end(), r.local.begin(), r.local.end());
    rows.push_back(std::move(row));
  }
  WriteCsv(os, DiagnosticsColumns(intervals), rows);
}

std::vector<DiagnosticsRecord> ReadDiagnostics(const CsvTable &table,
                                               std::vector<std::string> &local_names)
{
  static const char *required[] = {"t",      "E",      "I",          "dIdt_fd",     "dIdt_formula",
                                   "H1w_v1", "L2w_v2", "sech_cross", "cum_integral"};
  int idx[9];
  for (int k = 0; k < 9; k++)
  {
    idx[k] = table.Column(required[k]);
    if (idx[k] < 0)
    {
      throw ParameterError(std::string("diagnostics CSV: missing column '") + required[k] + "'");
    }
  }
  std::vector<int> local_idx;
  local_names.clear();
  for (std::size_t i = 0; i < table.header.size(); i++)
  {
    if (table.header[i].rfind("local_", 0) == 0)
    {
      local_idx.push_back(static_cast<int>(i));
      local_names.push_back(table.header[i]);
    }
  }
  std::vector<DiagnosticsRecord> out;
  for (const auto &row : table.rows)
  {
    DiagnosticsRecord r;
    r.t = row[idx[0]];
    r.E = row[idx[1]];
    r.I = row[idx[2]];
    r.dIdt_fd = row[idx[3]];
    r.dIdt_formula = row[idx[4]];
    r.h1w_v1 = row[idx[5]];
    r.l2w_v2 = row[idx[6]];
    r.sech_cross = row[idx[7]];
    r.cum_integral = row[idx[8]];
    for (int j : local_idx)
    {
      r.local.push_back(row[j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiagnosticsRecord> RoundTrip(const std::vector<DiagnosticsRecord> &records)
{
  auto out = records;
  for (auto &r : out)
  {
    for (double *p : {&r.t, &r.E, &r.I, &r.dIdt_fd, &r.dIdt_formula, &r.h1w_v1, &r.l2w_v2,
                      &r.sech_cross, &r.cum_integral})
    {
      *p = RoundTrip(*p);
    }
    for (double &v : r.local)
    {
      v = RoundTrip(v);
    }
  }
  return out;
}

void WriteSnapshot(std::ostream &os, const Grid &grid, const FieldState &state, int stride)
{
  if (stride < 1)
  {
    throw ParameterError("snapshot stride must be >= 1");
  }
  auto array = [&](auto value)
  {
    os << '[';
    bool first = true;
    for (int i = 0; i < grid.Size(); i += stride)
    {
      os << (first ? "" : ",") << FormatFloat(value(i));
      first = false;
    }
    os << ']';
  };
  os << "{\"t\":" << FormatFloat(state.t) << ",\"y\":";
  array([&](int i) { return grid.y(i); });
  os << ",\"u\":";
  array([&](int i) { return state.u[i]; });
  os << ",\"ut\":";
  array([&](int i) { return state.ut[i]; });
  os << "}\n";
}

TabulatedProfile ReadProfileCsv(const std::string &path)
{
  auto t = ReadCsvFile(path);
  if (t.header.size() != 2)
  {
    throw ParameterError("profile CSV '" + path + "' must have two columns (y, value)");
  }
  if (t.rows.size() < 4)
  {
    throw ParameterError("profile CSV '" + path + "' needs at least four rows");
  }
  const double y0 = t.rows.front()[0];
  const double dy = (t.rows.back()[0] - y0) / (t.rows.size() - 1);
  if (!(dy > 0.0))
  {
    throw ParameterError("profile CSV '" + path + "' must have increasing y");
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < t.rows.size(); i++)
  {
    if (std::abs(t.rows[i][0] - (y0 + i * dy)) > 1e-6 * dy)
    {
      throw ParameterError("profile CSV '" + path + "' is not uniformly spaced");
    }
    values.push_back(t.rows[i][1]);
  }
  return TabulatedProfile(Grid(y0, 0, dy, static_cast<int>(values.size())), values);
}

}  // namespace varkg
