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
#include <optional>
#include <string>
#include <vector>

#include "espec/labels.hpp"
#include "espec/linalg.hpp"
#include "espec/network.hpp"
#include "espec/path.hpp"

namespace espec {

/// Unnormalized amplitudes over a list of tracks, row-major with the first
/// track most significant.
class StateTensor {
 public:
  StateTensor() : amplitudes_(CVector::Ones(1)) {}
  /// Throws DimensionError if the amplitude count is not the product of dims.
  StateTensor(std::vector<int> tracks, std::vector<int> dims, CVector amplitudes);

  const std::vector<int>& tracks() const { return tracks_; }
  const std::vector<int>& dims() const { return dims_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Eigen::Index size() const { return amplitudes_.size(); }

  /// Position of `track` in tracks(); throws std::out_of_range.
  std::size_t axis(int track) const;
  /// Index stride of each axis.
  std::vector<Eigen::Index> strides() const;

 private:
  std::vector<int> tracks_;
  std::vector<int> dims_;
  CVector amplitudes_;
};

/// Largest total dimension the simulator accepts.
inline constexpr long long kMaxHilbertDim = 1LL << 14;
/// A final state below this fraction of the initial peak amplitude is zero.
inline constexpr double kZeroThreshold = 1e-12;

/// Pure inputs as product factors, every other track in one seeded random
/// joint state (entries uniform in the unit disk). Tracks are ordered by
/// index. Throws CapacityError above kMaxHilbertDim.
StateTensor initial_state(const Network& n, std::uint64_t seed);

/// Psi -> <Phi|Psi> Phi on the tracks in `tracks`, with `phi` flattened in
/// that order (first listed track most significant).
StateTensor apply_projector(const StateTensor& s, const std::vector<int>& tracks,
                            const CVector& phi);
StateTensor apply_unitary(const StateTensor& s, int track, const CMatrix& u);
/// Applies one network event.
StateTensor apply_event(const StateTensor& s, const Event& e);

struct TraceEntry {
  std::string event;
  int time = 0;
  /// Largest amplitude magnitude after the event.
  double peak = 0.0;
};

/// Applies all events in time order (ties by id). Throws ZeroAmplitude when
/// the final state vanishes, naming the event after which it first did.
/// `trace`, when given, receives one entry per event.
StateTensor run(const Network& n, std::uint64_t seed,
                std::vector<TraceEntry>* trace = nullptr);

struct FactorReport {
  std::vector<int> tracks;
  /// Dominant left singular vector, flattened in the order of `tracks`.
  CVector factor;
  /// For a two-track subset, the factor read as an anti-linear label from
  /// the first listed track to the second.
  std::optional<FunctionalLabel> label;
  StateTensor remainder;
  /// Second singular value over the first; 0 for an exact product.
  double residual = 0.0;
};

/// Best rank-one split of `s` into (tracks) x (the other tracks). Throws
/// ZeroAmplitude on the zero state.
FactorReport extract_factor(const StateTensor& s, const std::vector<int>& tracks);

enum class TrialStatus { Pass, Fail, Zero };

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::Pass;
  double residual = 0.0;
  /// prop_distance between the oracle factor and the prediction.
  double mismatch = 0.0;
};

struct VerifyReport {
  std::vector<TrialOutcome> trials;
  int passed = 0;
  int failed = 0;
  int zero = 0;

  /// No failures among the trials with a nonzero final state.
  bool ok() const { return failed == 0; }
};

/// Runs `trials` oracle simulations with a random argument fed in at the
/// path's start and compares the output track's factor against the
/// path function applied to it. Throws std::invalid_argument for an invalid
/// path.
VerifyReport verify_theorem(const Network& n, const Path& p, int trials,
                            std::uint64_t seed, double tol = kDefaultTol);
/// Same, against an explicitly claimed input-to-output map.
VerifyReport verify_theorem(const Network& n, const Path& p,
                            const FunctionalLabel& claimed, int trials,
                            std::uint64_t seed, double tol = kDefaultTol);

/// The network with argument `phi` fed into the start of `p`.
Network with_argument(const Network& n, const Path& p, const CVector& phi);

}  // namespace espec
