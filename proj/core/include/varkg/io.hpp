// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_IO_HPP
#define VARKG_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>
#include "varkg/evolve.hpp"
#include "varkg/virial.hpp"

namespace varkg
{

// "%.12e".
std::string FormatFloat(double x);
// Parse-after-format; what a reader of our files sees.
double RoundTrip(double x);

struct CsvTable
{
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int Column(const std::string &name) const;
};

void WriteCsv(std::ostream &os, const std::vector<std::string> &header,
              const std::vector<std::vector<double>> &rows);
CsvTable ReadCsv(std::istream &is);
CsvTable ReadCsvFile(const std::string &path);

void WriteDiagnosticsCsv(std::ostream &os, const std::vector<DiagnosticsRecord> &records,
                         const std::vector<std::pair<double, double>> &intervals);

// Records plus local-norm names from a diagnostics CSV; throws on missing columns.
std::vector<DiagnosticsRecord> ReadDiagnostics(const CsvTable &table,
                                               std::vector<std::string> &local_names);

// Copy with every field passed through the file float format.
std::vector<DiagnosticsRecord> RoundTrip(const std::vector<DiagnosticsRecord> &records);

// One NDJSON line {"t":..,"y":[..],"u":[..],"ut":[..]} with arrays thinned by stride.
void WriteSnapshot(std::ostream &os, const Grid &grid, const FieldState &state, int stride);

// Two-column (y, value) CSV into a tabulated profile; rows must be uniformly spaced.
TabulatedProfile ReadProfileCsv(const std::string &path);

}  // namespace varkg

#endif  // VARKG_IO_HPP
