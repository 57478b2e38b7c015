// Copyright 2026 The lcpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LCPINDEX_ERRORS_HPP_
#define LCPINDEX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lcpindex {

// Malformed or inconsistent input data: wrong lengths, out-of-alphabet
// symbols, corrupt files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad configuration or command-line usage.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was requested against an object that is not ready for it,
// e.g. a scenario that references an index which was never built.
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant failed. Always a bug or a corrupted structure.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lcpindex

#endif  // LCPINDEX_ERRORS_HPP_
