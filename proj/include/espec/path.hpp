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

#include <string>
#include <vector>

#include "espec/labels.hpp"
#include "espec/network.hpp"

namespace espec {

/// Direction of travel along a track: Up is increasing time.
enum class Direction { Up, Down };

/// Temporal side of an event instant. Below is the earlier side.
enum class Side { Below, Above };

const char* to_string(Direction d);
const char* to_string(Side s);

/// One event passed by a path. A bipartite projector is entered on one leg
/// and left on the other, on the same temporal side (the path bounces). A
/// local unitary is passed straight through on its own track.
struct PathStep {
  std::string event;
  int entry_track = 0;
  Side entry_side = Side::Below;
  int exit_track = 0;
  Side exit_side = Side::Below;

  static PathStep bounce(std::string event, int from, int to, Side side) {
    return {std::move(event), from, side, to, side};
  }
  static PathStep forward(std::string event, int track) {
    return {std::move(event), track, Side::Below, track, Side::Above};
  }
  static PathStep backward(std::string event, int track) {
    return {std::move(event), track, Side::Above, track, Side::Below};
  }

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Where a path begins. Going Up from time 0 reads the pure input of the
/// track. A start placed on a unipartite projector uses that projector's state
/// as the argument. A Down start anywhere else is an open function input: the
/// composite is then the function the network computes.
struct PathStart {
  int track = 0;
  int time = 0;
  Direction direction = Direction::Up;

  friend bool operator==(const PathStart&, const PathStart&) = default;
};

struct PathEnd {
  int track = 0;
  int time = 0;

  friend bool operator==(const PathEnd&, const PathEnd&) = default;
};

struct Path {
  std::string name;
  PathStart start;
  std::vector<PathStep> steps;
  PathEnd end;

  friend bool operator==(const Path&, const Path&) = default;
};

enum class StartKind { Input, Anchored, Open };

/// How the path obtains its argument. Throws std::invalid_argument if the
/// start does not name a legal start position.
StartKind start_kind(const Network& n, const Path& p);

/// Unipartite projector the path starts on, or nullptr.
const Event* start_anchor(const Network& n, const Path& p);

/// Empty iff the path is well formed and consistent with the network's event
/// placements.
std::vector<Diagnostic> validate_path(const Network& n, const Path& p);

/// Number of bipartite projectors the path passes.
int projector_count(const Network& n, const Path& p);

/// The composition of per-step labels, first step innermost.
///
/// Anti-linear projector labels enter as f (entered at the domain leg) or
/// adjoint(f) (entered at the codomain leg); unitaries enter as U forward and
/// U^dagger backward, both linear. When every traversed projector carries a
/// Linear label the fold runs in linear mode: the piece is f or its transpose
/// and is conjugated when the path bounces on the Below side, and backward
/// unitaries contribute U^T. Mixed linearities throw std::invalid_argument.
/// Shape inconsistencies throw DimensionError.
FunctionalLabel composite(const Network& n, const Path& p);

/// The map from the path's argument to its output. Equals composite() except
/// in linear mode with an odd number of projectors, where the argument enters
/// conjugated and the map is anti-linear with the same matrix.
FunctionalLabel path_function(const Network& n, const Path& p);

/// path_function applied to the input or anchor state. Throws
/// std::invalid_argument for an open start or a missing input.
CVector predict_output(const Network& n, const Path& p);

/// Paths with the same endpoints whose input-to-output maps agree up to
/// scalar. Throws std::invalid_argument on incompatible endpoints.
bool equivalent(const Network& n1, const Path& p1, const Network& n2,
                const Path& p2, double tol = kDefaultTol);
bool equivalent(const Network& n, const Path& p1, const Path& p2,
                double tol = kDefaultTol);

}  // namespace espec
