// Copyright 2026 The unidioph Authors
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

namespace unidioph {

// Base of every error raised by the library. The CLI maps these to exit
// code 3 (numerical failure) unless a more specific mapping applies.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  NotUnitary(double residual, double tol);
  double residual() const { return residual_; }

 private:
  double residual_;
};

class EigensolverFailure : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// A precondition on a scalar argument failed (t out of range, k too large...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The requested enumeration or quadrature grid is too large.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class CardinalityError : public Error {
 public:
  using Error::Error;
};

class NotIsometric : public Error {
 public:
  using Error::Error;
};

// Group, metric or action tables violate their axioms.
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

}  // namespace unidioph
