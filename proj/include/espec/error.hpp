// Copyright 2026 The espec Authors
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

namespace espec {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or dimensions of operands do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A post-selected run left a numerically zero state: the selected branch
/// cannot occur.
class ZeroAmplitude : public Error {
 public:
  using Error::Error;
};

/// The dense simulator refuses networks above its Hilbert-space cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A branch of a conditional protocol admits no unitary end-of-path
/// correction.
class NotCompilable : public Error {
 public:
  NotCompilable(std::string branch, const std::string& why)
      : Error("branch '" + branch + "' is not compilable: " + why),
        branch_(std::move(branch)) {}

  const std::string& branch() const noexcept { return branch_; }

 private:
  std::string branch_;
};

}  // namespace espec
