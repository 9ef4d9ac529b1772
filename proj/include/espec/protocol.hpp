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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "espec/labels.hpp"
#include "espec/network.hpp"
#include "espec/oracle.hpp"
#include "espec/path.hpp"

namespace espec {

/// A measurement applied at a bipartite projector. Several stages on one
/// event compose in stage order, later stages outermost.
struct MeasurementStage {
  std::string event;
  Measurement measurement;
  int stage = 1;
};

using MeasurementPlan = std::vector<MeasurementStage>;

/// Branching node: the outcome selected on the way down replaces (or, for
/// later stages, post-composes) the label of `placement`.
struct MeasureOp {
  Event placement;
  Measurement measurement;
  int stage = 1;
};

/// Leaf slot for an end-of-path unitary; empty until compiled.
struct CorrectionOp {
  std::string id;
  int track = 0;
  int time = 0;
  std::optional<CMatrix> matrix;
};

struct ProtocolNode {
  /// Outcome token on the edge from the parent; empty under a plain node.
  std::string token;
  std::variant<Event, MeasureOp, CorrectionOp> op;
  std::vector<ProtocolNode> children;
};

/// Operations in time order with classical branching at measurements. Every
/// root-to-leaf walk ends in a CorrectionOp.
struct ProtocolTree {
  std::vector<Track> tracks;
  std::map<int, CVector> inputs;
  ProtocolNode root;
};

/// Turns the measured projectors of `n` into branching nodes and closes every
/// branch with an empty correction slot on `correction_track` one time step
/// after the last event. Throws std::invalid_argument if a stage names a
/// missing or non-bipartite event or a measurement of the wrong shape.
ProtocolTree build_tree(const Network& n, const MeasurementPlan& plan,
                        int correction_track);

/// Token sequences of all branches, depth first in outcome order.
std::vector<std::vector<std::string>> branches(const ProtocolTree& t);
std::string branch_key(const std::vector<std::string>& tokens);

/// The network of one branch: one token per branching node on the walk.
/// Throws std::invalid_argument on an unknown token or a wrong token count.
Network instantiate(const ProtocolTree& t, const std::vector<std::string>& tokens);

struct CompiledBranch {
  std::vector<std::string> tokens;
  std::string key;
  /// Input-to-output map of the uncorrected branch.
  FunctionalLabel composite;
  CMatrix correction;
};

struct CompiledProtocol {
  ProtocolTree tree;
  /// The original path extended through the correction.
  Path path;
  FunctionalLabel target;
  std::vector<CompiledBranch> branches;
};

/// Synthesizes, for every branch b with map C_b, the unitary K_b with
/// K_b * C_b proportional to `target`, and places it at the end of the path.
/// K_b is rescaled to unit average singular value and its phase fixed so the
/// first entry of largest magnitude is positive real. Throws
/// std::invalid_argument for an invalid network or path or if no branch
/// reproduces the network's own labels, and NotCompilable for a branch whose
/// map is singular, of the wrong linearity or needs a non-unitary correction.
CompiledProtocol compile_unconditional(const Network& n, const Path& p,
                                       const MeasurementPlan& plan,
                                       const FunctionalLabel& target);

/// Tolerance of the unitarity test on synthesized corrections.
inline constexpr double kCorrectionTol = 1e-9;

struct BranchReport {
  std::string key;
  VerifyReport report;
};

/// Oracle check of every compiled branch against the target.
std::vector<BranchReport> verify_protocol(const CompiledProtocol& c, int trials,
                                          std::uint64_t seed, double tol = kDefaultTol);

struct TensorFactors {
  CMatrix a;
  CMatrix b;
  /// Second singular value of the realigned matrix over the first.
  double residual = 0.0;
};

/// Nearest a (x) b to `k` for a of size d1 x d1 and b of size d2 x d2, both
/// rescaled to unit average singular value.
TensorFactors factor_tensor(const CMatrix& k, Eigen::Index d1, Eigen::Index d2);

struct Builtin {
  Network network;
  Path path;
  MeasurementPlan plan;
  FunctionalLabel target;
};

/// Bell measurement on (1,2) at time 2 consuming an EPR pair on (2,3) made
/// at time 1. `two_stage` splits the measurement into two one-bit stages.
Builtin builtin_teleportation(bool two_stage = false);
/// Teleportation through a state labelled by g. Tracks have dimension
/// g.dom_dim(), which must be a power of two; the measurement is a tensor of
/// Bell measurements.
Builtin builtin_gate_teleportation(const FunctionalLabel& g);
/// Two EPR pairs on (1,2) and (3,4), Bell measurement on (2,3). The path
/// starts open on track 1 and ends on track 4.
Builtin builtin_swap();
/// Teleportation chain through preparations labelled f_1, ..., f_m.
Builtin builtin_parallel(const std::vector<FunctionalLabel>& fs);

/// Feeds `phi` to the open function input on `track` through a unipartite
/// projector one step after the last event. Throws std::invalid_argument if
/// the track is unknown, has no events, or already ends in a unipartite
/// projector.
Network beta_input(const Network& n, int track, const CVector& phi);

}  // namespace espec
