// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for the test suite. Nothing here calls into the
// library's numerics.

#ifndef VARKG_TESTS_ORACLES_HPP
#define VARKG_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <vector>

namespace varkg::testing
{

using Fn = std::function<double(double)>;

// f(y) = sum_k a_k exp(-((y - y_k)/s_k)^2), optionally antisymmetrised to f(y) - f(-y).
struct GaussSum
{
  struct Term
  {
    double a, y0, s;
  };
  std::vector<Term> terms;
  bool odd = false;

  double operator()(double y) const { return Eval(y, 0); }
  double D1(double y) const { return Eval(y, 1); }
  double D2(double y) const { return Eval(y, 2); }

private:
  double Raw(double y, int order) const;
  double Eval(double y, int order) const;
};

struct GaussSumOptions
{
  int min_terms = 2;
  int max_terms = 5;
  double center = 8.0;
  double min_width = 0.5;
  double max_width = 3.0;
  double amplitude = 1.0;
  bool odd = false;
};

GaussSum RandomGaussSum(std::mt19937_64 &rng, const GaussSumOptions &options = {});

std::vector<double> Sample(const std::vector<double> &nodes, const Fn &f);

// Solves a[i] x[i-1] + b[i] x[i] + c[i] x[i+1] = d[i].
std::vector<double> Thomas(std::vector<double> a, std::vector<double> b,
                           std::vector<double> c, std::vector<double> d);

// Newton iteration on the second-order collocation of -U'' - bU' - cU + F'(U) = 0 with
// U = xi at both ends of [-L, L] (n + 1 nodes).
std::vector<double> NewtonSteadyOracle(double L, int n, const Fn &b, const Fn &c,
                                       const Fn &dF, const Fn &d2F, double xi,
                                       int max_iterations = 50, double tolerance = 1e-13);

// Composite Simpson with n (even) panels.
double Simpson(const Fn &f, double a, double b, int n);

}  // namespace varkg::testing

#endif  // VARKG_TESTS_ORACLES_HPP
