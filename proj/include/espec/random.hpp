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

#include <cstdint>
#include <random>

#include "espec/labels.hpp"
#include "espec/linalg.hpp"

namespace espec {

/// Seeded generator with platform-independent output: doubles are built from
/// the raw mt19937_64 stream rather than through std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  /// Uniform in the closed unit disk.
  Complex in_disk();
  Complex gaussian();

 private:
  std::mt19937_64 engine_;
};

/// Seed of trial `trial` derived from a run seed (splitmix64 mixing).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// Entries uniform in the unit disk.
CVector random_vector(Rng& rng, Eigen::Index dim);
CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Haar-distributed unitary.
CMatrix random_unitary(Rng& rng, Eigen::Index dim);
FunctionalLabel random_label(Rng& rng, Eigen::Index dom_dim, Eigen::Index cod_dim,
                             Linearity linearity = Linearity::AntiLinear);

}  // namespace espec
