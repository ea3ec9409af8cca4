// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include "doctest.h"
#include "json.hpp"
#include "varkg/error.hpp"
#include "varkg/io.hpp"

using namespace varkg;

namespace
{

std::filesystem::path TempFile(const std::string &name)
{
  return std::filesystem::temp_directory_path() / ("varkg_io_" + name);
}

}  // namespace

TEST_SUITE("io")
{
  TEST_CASE("float format")
  {
    CHECK(FormatFloat(1.0) == "1.000000000000e+00");
    CHECK(FormatFloat(-2.5e-7) == "-2.500000000000e-07");
    CHECK(FormatFloat(0.0) == "0.000000000000e+00");
    CHECK(RoundTrip(1.0 / 3.0) == std::stod(FormatFloat(1.0 / 3.0)));
    CHECK(RoundTrip(RoundTrip(0.1)) == RoundTrip(0.1));
  }

  TEST_CASE("csv write and read")
  {
    std::stringstream ss;
    WriteCsv(ss, {"y", "U"}, {{-1.0, 0.5}, {0.0, 1.0 / 3.0}});
    const std::string text = ss.str();
    CHECK(text.rfind("y,U\n", 0) == 0);
    std::stringstream in(text);
    auto t = ReadCsv(in);
    CHECK(t.header == std::vector<std::string>{"y", "U"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[1][1] == RoundTrip(1.0 / 3.0));
    CHECK(t.Column("U") == 1);
    CHECK(t.Column("missing") == -1);
  }

  TEST_CASE("malformed csv is rejected")
  {
    auto bad = [](const std::string &s)
    {
      std::stringstream in(s);
      return ReadCsv(in);
    };
    CHECK_THROWS_AS(bad(""), ParameterError);
    CHECK_THROWS_AS(bad("a,b\n1,2,3\n"), ParameterError);
    CHECK_THROWS_AS(bad("a,b\n1,x\n"), ParameterError);
    CHECK_THROWS_AS(ReadCsvFile("/nonexistent/varkg.csv"), ParameterError);
  }

  TEST_CASE("diagnostics round trip")
  {
    std::vector<DiagnosticsRecord> rs(2);
    rs[0] = {0.0, 1.0, 0.1, -0.2, -0.21, 0.3, 0.4, 0.01, 0.0, {0.5, 0.6}};
    rs[1] = {0.05, 1.0 / 3.0, 0.09, -0.19, -0.2, 0.29, 0.39, 0.02, 0.035, {0.4, 0.5}};
    std::vector<std::pair<double, double>> iv = {{-5.0, 5.0}, {-2.0, 2.0}};
    std::stringstream ss;
    WriteDiagnosticsCsv(ss, rs, iv);
    auto t = ReadCsv(ss);
    CHECK(t.header == DiagnosticsColumns(iv));
    for (const char *col : {"t", "E", "I", "dIdt_fd", "dIdt_formula", "H1w_v1", "L2w_v2",
                            "sech_cross", "cum_integral"})
    {
      CHECK(t.Column(col) >= 0);
    }
    std::vector<std::string> names;
    auto back = ReadDiagnostics(t, names);
    REQUIRE(names.size() == 2);
    REQUIRE(back.size() == 2);
    auto expect = RoundTrip(rs);
    CHECK(back[1].E == expect[1].E);
    CHECK(back[1].local == expect[1].local);
    CHECK(back[0].cum_integral == 0.0);

    CsvTable missing;
    missing.header = {"t", "E"};
    CHECK_THROWS_AS(ReadDiagnostics(missing, names), ParameterError);
  }

  TEST_CASE("snapshot lines")
  {
    Grid g = Grid::Symmetric(1.0, 4);
    FieldState s{0.5, {0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, -1.0, -2.0, -3.0, -4.0}};
    std::stringstream ss;
    WriteSnapshot(ss, g, s, 2);
    std::string line;
    std::getline(ss, line);
    auto j = nlohmann::json::parse(line);
    CHECK(j["t"].get<double>() == 0.5);
    CHECK(j["y"].size() == 3);
    CHECK(j["u"].get<std::vector<double>>() == std::vector<double>{0.0, 2.0, 4.0});
    CHECK(j["ut"][2].get<double>() == -4.0);
    CHECK(line.find("e+00") != std::string::npos);
  }

  TEST_CASE("profile csv")
  {
    auto p = TempFile("profile.csv");
    {
      std::ofstream os(p);
      os << "y,b\n";
      for (int i = 0; i <= 20; i++)
      {
        double y = -1.0 + 0.1 * i;
        os << FormatFloat(y) << "," << FormatFloat(y * y) << "\n";
      }
    }
    auto tab = ReadProfileCsv(p.string());
    CHECK(tab.GetGrid().Size() == 21);
    CHECK(tab.Value(0.3) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(tab.Value(0.35) == doctest::Approx(0.1225).epsilon(1e-3));
    {
      std::ofstream os(p);
      os << "y,b\n0,1\n0.1,1\n0.3,1\n";
    }
    CHECK_THROWS_AS(ReadProfileCsv(p.string()), ParameterError);
    {
      std::ofstream os(p);
      os << "y,b,c\n0,1,2\n0.1,1,2\n";
    }
    CHECK_THROWS_AS(ReadProfileCsv(p.string()), ParameterError);
    std::filesystem::remove(p);
  }
}
