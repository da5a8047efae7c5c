// Copyright 2026 The povmlab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace povmlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose Hilbert-space dimensions or factor structure do not fit.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value that violates a domain invariant (not Hermitian, not an effect,
/// malformed interval, leakage bound exceeded, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace povmlab
