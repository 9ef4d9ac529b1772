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
#include <vector>

#include "espec/labels.hpp"
#include "espec/multipartite.hpp"
#include "espec/network.hpp"
#include "espec/path.hpp"
#include "espec/random.hpp"
#include "espec/specfile.hpp"

namespace espec::testing {

// Reference implementations kept deliberately naive and independent of the
// library code they check.

/// Kronecker product by the index formula.
CMatrix naive_kron(const CMatrix& a, const CMatrix& b);

/// |phi><phi| on `tracks` embedded into the full space of a state over
/// `all_tracks` with dimensions `dims`, built by permuting kron(P, I).
CMatrix dense_projector(const std::vector<int>& all_tracks, const std::vector<int>& dims,
                        const std::vector<int>& tracks, const CVector& phi);

/// Unitary on one axis of the full space.
CMatrix dense_unitary(const std::vector<int>& all_tracks, const std::vector<int>& dims,
                      int track, const CMatrix& u);

/// Applies an anti-linear or linear label by its defining sum over basis
/// coefficients: f(v) = sum_ab m[a][b] <e_a|v> e_b (linear) or
/// sum_ab m[a][b] <v|e_a> e_b (anti-linear), m the state coefficients.
CVector apply_by_definition(const FunctionalLabel& f, const CVector& v);

/// sum_i conj(u_i) v_i
Complex inner(const CVector& u, const CVector& v);

/// n[b][c] = sum_a conj(psi[a]) M[a][b][c] computed entry by entry.
CMatrix first_order_by_contraction(const TripartiteLabel& t, const CVector& psi);

struct RandomCase {
  Network network;
  Path path;
  int projectors_on_path = 0;
  int unitaries_on_path = 0;
};

struct GeneratorLimits {
  int max_tracks = 6;
  int max_projectors = 8;
  int max_unitaries = 3;
  int times = 10;
};

/// A random valid network with a valid path grown through it. Forward paths
/// start at the input of their track, backward ones on a unipartite
/// projector. Projectors off the path and unitaries are scattered where
/// they do not touch the path's segments, except that a unitary landing on a
/// segment is traversed. Labels are anti-linear.
RandomCase random_case(Rng& rng, const GeneratorLimits& limits = {});

/// Projectors f (1 -> 2), g (2 -> 3), h (3 -> 4) at times 1, 3, 1 with
/// unitaries U on track 2 and V on track 3 at time 2. The path starts on a
/// unipartite projector on track 1 at time 5 heading down, passes U forward
/// and V backward and ends on track 4 at time 5, so its map is
/// h o V^dagger o g o U o f.
struct TwoUnitaryCase {
  Network network;
  Path path;
  FunctionalLabel f, g, h;
  CMatrix u, v;
};
TwoUnitaryCase two_unitary_case(Rng& rng);

/// h(V^dagger g(U f(phi))) evaluated term by term.
CVector two_unitary_expected(const TwoUnitaryCase& c, const CVector& phi);

/// Qubit instance of the eight-track example with entries in the unit disk.
WorkedExample random_worked_example(Rng& rng);

/// Output coefficients of the eight-track example for qubit instances, one
/// loop per track.
CVector by_loops(const WorkedExample& w);

/// Copy with every bipartite label switched to `l`.
Network with_projector_linearity(const Network& n, Linearity l);

/// A random document that parses without diagnostics: a random network and
/// path plus assorted other records with awkward numbers.
SpecDocument random_document(Rng& rng);

/// serialize() output rearranged: records shuffled, spacing varied,
/// comments and blank lines inserted. Parses to the same document.
std::string scramble(const std::string& canonical_text, Rng& rng);

}  // namespace espec::testing
