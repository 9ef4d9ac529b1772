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

// Functional labels: a bipartite state on H_dom (x) H_cod read as a linear or
// anti-linear map H_dom -> H_cod.
//
// Index convention: the state coefficient m(a, b) of e_a (x) e_b (a indexes the
// domain, b the codomain) is stored as matrix(b, a). Both readings share the
// same matrix; they differ only in how the map acts:
//
//   Linear:      v |-> matrix * v
//   AntiLinear:  v |-> matrix * conj(v)

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "espec/linalg.hpp"

namespace espec {

enum class Linearity { Linear, AntiLinear };

const char* to_string(Linearity l);

class FunctionalLabel {
 public:
  /// `matrix` is cod_dim x dom_dim.
  FunctionalLabel(CMatrix matrix, Linearity linearity);

  Eigen::Index dom_dim() const { return matrix_.cols(); }
  Eigen::Index cod_dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  Linearity linearity() const { return linearity_; }
  bool is_antilinear() const { return linearity_ == Linearity::AntiLinear; }

  CVector operator()(const CVector& v) const;

  FunctionalLabel with_linearity(Linearity l) const { return {matrix_, l}; }

  friend bool operator==(const FunctionalLabel& a, const FunctionalLabel& b) {
    return a.linearity_ == b.linearity_ && a.matrix_.rows() == b.matrix_.rows() &&
           a.matrix_.cols() == b.matrix_.cols() && a.matrix_ == b.matrix_;
  }

 private:
  CMatrix matrix_;
  Linearity linearity_;
};

/// Same linearity and proportional matrices.
bool prop_eq(const FunctionalLabel& a, const FunctionalLabel& b,
             double tol = kDefaultTol);

/// Amplitudes of the labelled bipartite state, flattened as a * cod_dim + b.
CVector state_of(const FunctionalLabel& l);
FunctionalLabel label_of(const CVector& state, Eigen::Index dom_dim,
                         Eigen::Index cod_dim, Linearity linearity);

/// g after f. Linearity follows the usual algebra: two anti-linear maps compose
/// to a linear one, a mixed pair is anti-linear.
FunctionalLabel compose(const FunctionalLabel& g, const FunctionalLabel& f);

/// Anti-linear: transpose (defined by <u, f(v)> = <v, f^dagger(u)>).
/// Linear: conjugate transpose.
FunctionalLabel adjoint(const FunctionalLabel& l);

/// The label of the same bipartite state read with domain and codomain
/// swapped. Coincides with adjoint() for anti-linear labels.
FunctionalLabel reversed(const FunctionalLabel& l);

/// Kronecker product of two labels of equal linearity. The result labels a
/// state whose axes are ordered (dom_f, dom_g, cod_f, cod_g); see
/// interleave_tensor_state for the relation to kron(state_of(f), state_of(g)).
FunctionalLabel tensor(const FunctionalLabel& f, const FunctionalLabel& g);

/// Reorders kron(state_of(f), state_of(g)), whose axes are
/// (dom_f, cod_f, dom_g, cod_g), into (dom_f, dom_g, cod_f, cod_g).
CVector interleave_tensor_state(const CVector& kron_state, Eigen::Index dom_f,
                                Eigen::Index cod_f, Eigen::Index dom_g,
                                Eigen::Index cod_g);

/// The same reordering applied to both sides of an operator on the state
/// space.
CMatrix interleave_tensor_operator(const CMatrix& kron_op, Eigen::Index dom_f,
                                   Eigen::Index cod_f, Eigen::Index dom_g,
                                   Eigen::Index cod_g);

/// Unnormalized |Psi_l><Psi_l|. Throws std::invalid_argument for the zero
/// label.
CMatrix projector_of(const FunctionalLabel& l);

bool is_disentangled(const FunctionalLabel& l, double tol = kDefaultTol);

namespace bell {

/// The four Bell labels (anti-linear), matrices as in
///   id ~ |00>+|11>, pi ~ |01>+|10>, id* ~ |00>-|11>, pi* ~ |01>-|10>.
FunctionalLabel id();
FunctionalLabel pi();
FunctionalLabel id_star();
FunctionalLabel pi_star();

}  // namespace bell

namespace pauli {

CMatrix x();
CMatrix y();  // i * pi*
CMatrix z();

}  // namespace pauli

/// Looks up a label by a short name: id, pi, id*, pi*, x, y, z, h, s, t, cnot,
/// cz, swap. Returned labels are anti-linear.
std::optional<FunctionalLabel> named_label(const std::string& name);

/// True for non-empty tokens made of ASCII letters, digits and '_'.
bool valid_token(const std::string& token);

struct Outcome {
  std::string token;
  FunctionalLabel label;
};

/// A measurement as a set of token-labelled rank-one projectors.
class Measurement {
 public:
  /// Throws std::invalid_argument on a malformed or duplicate token and
  /// DimensionError on outcome labels of differing shape.
  explicit Measurement(std::vector<Outcome> outcomes);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  Eigen::Index dom_dim() const;
  Eigen::Index cod_dim() const;

  const Outcome* find(const std::string& token) const;
  /// Token of the first outcome proportional to `label`, if any.
  std::optional<std::string> token_of(const FunctionalLabel& label,
                                      double tol = kDefaultTol) const;

  bool orthogonal(double tol = kDefaultTol) const;
  /// Normalized projectors sum to the identity on the spanned space.
  bool complete(double tol = kDefaultTol) const;

 private:
  std::vector<Outcome> outcomes_;
};

/// Tokens 00, 01, 10, 11 for id, pi, id*, pi*.
Measurement bell_measurement();

/// The Bell measurement factored into two one-bit stages: the first selects
/// the anti-linear base label {id, id*} (tokens 0, 1), the second a linear
/// correction-like factor {id, pi} (tokens 0, 1) composed after it, so that
/// compose(second, first) runs through all four Bell labels.
std::pair<Measurement, Measurement> virtual_factorization();

/// Outcomes {U1 (x) U2 : U1, U2 Bell labels}; token is the concatenation of
/// the two Bell tokens.
Measurement tensor_bell_measurement(int qubits);

}  // namespace espec
