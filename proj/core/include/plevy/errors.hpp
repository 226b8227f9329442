// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace plevy {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (pole, s out of
// range, r <= 0, point inside Omega for a normal derivative, ...).
struct DomainError : Error {
  using Error::Error;
};

// A stated precondition of an operation does not hold (incompatible Neumann
// data, unordered comparison inputs, parameter ranges of the non-existence
// demo, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// Invalid run configuration (bad mesh sizes, unknown config keys, ...).
struct ConfigError : Error {
  using Error::Error;
};

// Assembly of a discrete form is impossible (divergent kernel, dimension
// mismatch).
struct AssemblyError : Error {
  using Error::Error;
};

// Two grid objects do not live on the same mesh.
struct MeshMismatchError : Error {
  using Error::Error;
};

}  // namespace plevy
