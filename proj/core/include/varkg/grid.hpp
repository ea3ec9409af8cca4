// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_GRID_HPP
#define VARKG_GRID_HPP

#include <span>
#include <vector>

namespace varkg
{

//
// Uniform one-dimensional grid. Node i sits at y_ref + (i - i_ref) * dy. Symmetric grids
// use y_ref = 0 and i_ref = N/2, which makes the node set exactly antisymmetric in
// floating point.
//
class Grid
{
public:
  Grid() = default;
  Grid(double y_ref, int i_ref, double dy, int count);

  // Nodes -L, ..., L with N + 1 points, N even.
  static Grid Symmetric(double L, int N);
  // Symmetric grid with spacing as close to dy as possible (N rounded to even).
  static Grid SymmetricWithSpacing(double L, double dy);

  double y(int i) const { return y_ref_ + (i - i_ref_) * dy_; }
  double Spacing() const { return dy_; }
  int Size() const { return count_; }
  double Front() const { return y(0); }
  double Back() const { return y(count_ - 1); }
  bool IsSymmetric() const;
  double HalfWidth() const { return 0.5 * (Back() - Front()); }
  // Index of the node nearest to y, clamped to the grid.
  int Nearest(double y) const;
  // Mirror node of i on a symmetric grid.
  int Mirror(int i) const { return count_ - 1 - i; }
  std::vector<double> Nodes() const;
  // Same extent, spacing divided by factor.
  Grid Refined(int factor) const;

private:
  double y_ref_ = 0.0;
  int i_ref_ = 0;
  double dy_ = 1.0;
  int count_ = 0;
};

// Second-order central first derivative, one-sided second-order at the ends.
std::vector<double> CentralDiff(std::span<const double> f, double h);
void CentralDiff(std::span<const double> f, double h, std::span<double> out);

// Second-order central second derivative; end values copied from the neighbours.
std::vector<double> SecondDiff(std::span<const double> f, double h);

double Trapezoid(std::span<const double> f, double h);
double Trapezoid(std::span<const double> f, double h, int i0, int i1);

// Running trapezoid integral with out[0] = 0.
std::vector<double> CumulativeTrapezoid(std::span<const double> f, double h);

double SupNorm(std::span<const double> f);

// Least-squares line fit: returns {slope, intercept}.
struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
  int count = 0;
};
LineFit FitLine(std::span<const double> x, std::span<const double> y);

}  // namespace varkg

#endif  // VARKG_GRID_HPP
