/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace btcert {

/// Argument outside an operation's mathematical domain, or a non-finite
/// value met while evaluating an objective or integrand.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A density table cell needed by an assembly row is missing or infinite.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request exceeds the desk-scale resource caps (sieve limit).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed run configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace btcert
