// Copyright 2026 The cplace Authors
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

namespace cplace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (e.g. error >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Hard constraints cannot be satisfied for the requested link count.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Routing requested on a system whose graph is not connected.
class DisconnectedError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace cplace
