// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varkg/grid.hpp"

#include <algorithm>
#include <cmath>
#include "varkg/error.hpp"

namespace varkg
{

Grid::Grid(double y_ref, int i_ref, double dy, int count)
  : y_ref_(y_ref), i_ref_(i_ref), dy_(dy), count_(count)
{
  if (!(dy > 0.0) || !std::isfinite(dy))
  {
    throw ParameterError("grid spacing must be positive and finite");
  }
  if (count < 2)
  {
    throw ParameterError("grid needs at least two nodes");
  }
}

Grid Grid::Symmetric(double L, int N)
{
  if (!(L > 0.0) || !std::isfinite(L))
  {
    throw ParameterError("grid half-width L must be positive");
  }
  if (N < 4 || N % 2 != 0)
  {
    throw ParameterError("grid N must be even and at least 4");
  }
  return Grid(0.0, N / 2, 2.0 * L / N, N + 1);
}

Grid Grid::SymmetricWithSpacing(double L, double dy)
{
  if (!(dy > 0.0))
  {
    throw ParameterError("grid spacing must be positive");
  }
  int half = static_cast<int>(std::lround(L / dy));
  return Symmetric(L, 2 * std::max(half, 2));
}

bool Grid::IsSymmetric() const
{
  return count_ % 2 == 1 && y_ref_ == 0.0 && i_ref_ == count_ / 2;
}

int Grid::Nearest(double y) const
{
  long i = std::lround((y - y_ref_) / dy_) + i_ref_;
  return static_cast<int>(std::clamp<long>(i, 0, count_ - 1));
}

std::vector<double> Grid::Nodes() const
{
  std::vector<double> out(count_);
  for (int i = 0; i < count_; i++)
  {
    out[i] = y(i);
  }
  return out;
}

Grid Grid::Refined(int factor) const
{
  if (factor < 1)
  {
    throw ParameterError("refinement factor must be >= 1");
  }
  return Grid(y_ref_, i_ref_ * factor, dy_ / factor, (count_ - 1) * factor + 1);
}

void CentralDiff(std::span<const double> f, double h, std::span<double> out)
{
  const std::size_t n = f.size();
  if (n < 3)
  {
    throw ParameterError("CentralDiff needs at least three samples");
  }
  const double inv2h = 0.5 / h;
  for (std::size_t i = 1; i + 1 < n; i++)
  {
    out[i] = (f[i + 1] - f[i - 1]) * inv2h;
  }
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
}

std::vector<double> CentralDiff(std::span<const double> f, double h)
{
  std::vector<double> out(f.size());
  CentralDiff(f, h, out);
  return out;
}

std::vector<double> SecondDiff(std::span<const double> f, double h)
{
  const std::size_t n = f.size();
  if (n < 3)
  {
    throw ParameterError("SecondDiff needs at least three samples");
  }
  std::vector<double> out(n);
  const double inv = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; i++)
  {
    out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
  }
  out[0] = out[1];
  out[n - 1] = out[n - 2];
  return out;
}

double Trapezoid(std::span<const double> f, double h, int i0, int i1)
{
  if (i1 <= i0)
  {
    return 0.0;
  }
  double s = 0.5 * (f[i0] + f[i1]);
  for (int i = i0 + 1; i < i1; i++)
  {
    s += f[i];
  }
  return s * h;
}

double Trapezoid(std::span<const double> f, double h)
{
  return f.empty() ? 0.0 : Trapezoid(f, h, 0, static_cast<int>(f.size()) - 1);
}

std::vector<double> CumulativeTrapezoid(std::span<const double> f, double h)
{
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); i++)
  {
    out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
  }
  return out;
}

double SupNorm(std::span<const double> f)
{
  double m = 0.0;
  for (double v : f)
  {
    m = std::max(m, std::abs(v));
  }
  return m;
}

LineFit FitLine(std::span<const double> x, std::span<const double> y)
{
  LineFit fit;
  const std::size_t n = x.size();
  fit.count = static_cast<int>(n);
  if (n < 2)
  {
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace varkg
