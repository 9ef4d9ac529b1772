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

#include <array>
#include <functional>

#include "espec/labels.hpp"
#include "espec/network.hpp"

namespace espec {

/// Coefficients M[a][b][c] of a state on three tracks, flattened as
/// (a * d2 + b) * d3 + c.
class TripartiteLabel {
 public:
  /// Throws DimensionError if the coefficient count is not d1 * d2 * d3.
  TripartiteLabel(std::array<Eigen::Index, 3> dims, CVector coefficients);

  const std::array<Eigen::Index, 3>& dims() const { return dims_; }
  const CVector& coefficients() const { return coefficients_; }
  Complex at(Eigen::Index a, Eigen::Index b, Eigen::Index c) const {
    return coefficients_((a * dims_[1] + b) * dims_[2] + c);
  }

 private:
  std::array<Eigen::Index, 3> dims_;
  CVector coefficients_;
};

/// psi |-> the anti-linear label (track 2 -> track 3) with state
/// coefficients n[b][c] = sum_a conj(psi[a]) M[a][b][c].
std::function<FunctionalLabel(const CVector&)> as_first_order(const TripartiteLabel& t);

/// m |-> v with v[c] = sum_ab conj(m[a][b]) M[a][b][c], where m[a][b] are the
/// state coefficients of an anti-linear label from track 1 to track 2.
std::function<CVector(const FunctionalLabel&)> as_second_order(const TripartiteLabel& t);

/// Inputs of the eight-track example: tripartite states on (1,2,3), (4,5,6)
/// and (6,7,8), bipartite labels on 3 -> 4 and 2 -> 5, unipartite states on
/// tracks 1 and 7.
struct WorkedExample {
  TripartiteLabel m1;
  TripartiteLabel m2;
  TripartiteLabel m3;
  FunctionalLabel b1;
  FunctionalLabel b2;
  CVector phi1;
  CVector phi2;
};

/// The explicit contraction
///   out[a8] = sum conj(phi2[a7]) b1[a3][a4] phi1[a1] conj(M1[a1][a2][a3])
///             b2[a2][a5] conj(M2[a4][a5][a6]) M3[a6][a7][a8]
/// with b1, b2 read as state coefficients. Throws DimensionError on
/// inconsistent dimensions.
CVector worked_example_predict(const WorkedExample& w);

/// The same output assembled from the curried readings: with
/// h = b2 o adjoint(f1(phi1)) o adjoint(b1), the result is f3(f2(h))(phi2)
/// where f_i are the first- or second-order readings of M_i.
CVector worked_example_curried(const WorkedExample& w);

/// Tracks 1..8; M1 at time 4, M2 at 3, M3 at 2, b1 at 2, b2 at 1, the
/// unipartite states at time 3. No pure inputs.
Network worked_example_network(const WorkedExample& w);

}  // namespace espec
