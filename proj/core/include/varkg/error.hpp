// Copyright 2026 The varkg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef VARKG_ERROR_HPP
#define VARKG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace varkg
{

// Invalid input or violated precondition. Maps to CLI exit code 2.
class ParameterError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Overflow, blow-up, non-contraction or degenerate operator. Maps to exit code 3.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace varkg

#endif  // VARKG_ERROR_HPP
