// Copyright 2026 The rydqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace rydqca {

/// Base class for all errors raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (bad keys, incompatible model/lattice).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Degenerate atom geometry (e.g. coincident positions).
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// A size or memory cap would be exceeded.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure: non-convergence, leakage above tolerance, ...
class NumericError : public Error {
  public:
    using Error::Error;
};

} // namespace rydqca
