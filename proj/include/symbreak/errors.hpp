// Copyright 2026 The symbreak Authors
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

#ifndef SYMBREAK_ERRORS_HPP_
#define SYMBREAK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace symbreak {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A group or representation exceeds its order cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Two objects were built over different groups.
class GroupMismatchError : public Error {
 public:
  using Error::Error;
};

// A tolerance-based membership test produced a set that is not a subgroup,
// i.e. the input is numerically ambiguous.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

class FaithfulnessError : public Error {
 public:
  using Error::Error;
};

// Input data failed a structural check (homomorphism, orthogonality,
// probability symmetry, subgroup closure, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A numerical result cannot be trusted (rank instability, residual blow-up).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace symbreak

#endif  // SYMBREAK_ERRORS_HPP_
