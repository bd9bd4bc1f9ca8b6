// Copyright 2026 The quadlat Authors.
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

namespace quadlat {

// Base of every error raised by the library. `exit_code()` is the value the
// command-line tool returns when the error escapes to main().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Caller passed an argument that violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed lattice text or other unparseable input.
class FormatError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// A search bound, node budget, or numeric range was exhausted before a
// definite answer was reached. Never a verdict.
class CapExhausted : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// The p-adic lifting search ran out of budget.
class PrecisionExhausted : public CapExhausted {
 public:
  using CapExhausted::CapExhausted;
};

}  // namespace quadlat
