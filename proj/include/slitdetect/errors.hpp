// Copyright 2026 The slitdetect Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLITDETECT_ERRORS_HPP
#define SLITDETECT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slitdetect {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Unsupported detector partition (only 4 or 8 blocks exist).
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A family parameter lies outside its open admissible interval.
class ParamRangeError : public Error {
 public:
  using Error::Error;
};

class SeedError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Conditional probability requested for non-commuting projectors.
class NonCommuting : public Error {
 public:
  using Error::Error;
};

/// Conditioning event has zero probability on the given state.
class ZeroConditioning : public Error {
 public:
  using Error::Error;
};

/// State does not have the zero pattern forced by T Psi = E Psi.
class StateShapeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (JSON schema violations).
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slitdetect

#endif  // SLITDETECT_ERRORS_HPP
