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

#include "espec/labels.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "espec/error.hpp"

namespace espec {

const char* to_string(Linearity l) {
  return l == Linearity::Linear ? "linear" : "antilinear";
}

FunctionalLabel::FunctionalLabel(CMatrix matrix, Linearity linearity)
    : matrix_(std::move(matrix)), linearity_(linearity) {
  if (matrix_.rows() < 1 || matrix_.cols() < 1) {
    throw DimensionError("functional label needs positive dimensions");
  }
}

CVector FunctionalLabel::operator()(const CVector& v) const {
  if (v.size() != dom_dim()) {
    throw DimensionError("label applied to a vector of the wrong dimension");
  }
  return is_antilinear() ? CVector(matrix_ * v.conjugate())
                         : CVector(matrix_ * v);
}

bool prop_eq(const FunctionalLabel& a, const FunctionalLabel& b, double tol) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) return false;
  return a.linearity() == b.linearity() && prop_eq(a.matrix(), b.matrix(), tol);
}

CVector state_of(const FunctionalLabel& l) {
  const auto d = l.dom_dim();
  const auto c = l.cod_dim();
  CVector s(d * c);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < c; ++b) s(a * c + b) = l.matrix()(b, a);
  }
  return s;
}

FunctionalLabel label_of(const CVector& state, Eigen::Index dom_dim,
                         Eigen::Index cod_dim, Linearity linearity) {
  if (dom_dim < 1 || cod_dim < 1 || state.size() != dom_dim * cod_dim) {
    throw DimensionError("label_of: state length does not match dimensions");
  }
  CMatrix m(cod_dim, dom_dim);
  for (Eigen::Index a = 0; a < dom_dim; ++a) {
    for (Eigen::Index b = 0; b < cod_dim; ++b) m(b, a) = state(a * cod_dim + b);
  }
  return {std::move(m), linearity};
}

FunctionalLabel compose(const FunctionalLabel& g, const FunctionalLabel& f) {
  if (f.cod_dim() != g.dom_dim()) {
    throw DimensionError("compose: codomain of f (" +
                         std::to_string(f.cod_dim()) +
                         ") differs from domain of g (" +
                         std::to_string(g.dom_dim()) + ")");
  }
  const bool anti = f.is_antilinear() != g.is_antilinear();
  CMatrix m = g.is_antilinear() ? CMatrix(g.matrix() * f.matrix().conjugate())
                                : CMatrix(g.matrix() * f.matrix());
  return {std::move(m), anti ? Linearity::AntiLinear : Linearity::Linear};
}

FunctionalLabel adjoint(const FunctionalLabel& l) {
  if (l.is_antilinear()) return {l.matrix().transpose(), l.linearity()};
  return {l.matrix().adjoint(), l.linearity()};
}

FunctionalLabel reversed(const FunctionalLabel& l) {
  return {l.matrix().transpose(), l.linearity()};
}

FunctionalLabel tensor(const FunctionalLabel& f, const FunctionalLabel& g) {
  if (f.linearity() != g.linearity()) {
    throw std::invalid_argument("tensor: labels of mixed linearity");
  }
  return {kron(f.matrix(), g.matrix()), f.linearity()};
}

namespace {

// Position in the (df, dg, cf, cg) layout of the entry at (a, b, c, e) in the
// (df, cf, dg, cg) layout.
Eigen::Index interleaved_index(Eigen::Index k, Eigen::Index df,
                               Eigen::Index cf, Eigen::Index dg,
                               Eigen::Index cg) {
  const Eigen::Index e = k % cg;
  k /= cg;
  const Eigen::Index c = k % dg;
  k /= dg;
  const Eigen::Index b = k % cf;
  const Eigen::Index a = k / cf;
  (void)df;
  return ((a * dg + c) * cf + b) * cg + e;
}

}  // namespace

CVector interleave_tensor_state(const CVector& kron_state, Eigen::Index dom_f,
                                Eigen::Index cod_f, Eigen::Index dom_g,
                                Eigen::Index cod_g) {
  const Eigen::Index n = dom_f * cod_f * dom_g * cod_g;
  if (kron_state.size() != n) {
    throw DimensionError("interleave_tensor_state: size mismatch");
  }
  CVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out(interleaved_index(k, dom_f, cod_f, dom_g, cod_g)) = kron_state(k);
  }
  return out;
}

CMatrix interleave_tensor_operator(const CMatrix& kron_op, Eigen::Index dom_f,
                                   Eigen::Index cod_f, Eigen::Index dom_g,
                                   Eigen::Index cod_g) {
  const Eigen::Index n = dom_f * cod_f * dom_g * cod_g;
  if (kron_op.rows() != n || kron_op.cols() != n) {
    throw DimensionError("interleave_tensor_operator: size mismatch");
  }
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pi = interleaved_index(i, dom_f, cod_f, dom_g, cod_g);
    for (Eigen::Index j = 0; j < n; ++j) {
      out(pi, interleaved_index(j, dom_f, cod_f, dom_g, cod_g)) = kron_op(i, j);
    }
  }
  return out;
}

CMatrix projector_of(const FunctionalLabel& l) {
  const CVector s = state_of(l);
  if (s.squaredNorm() == 0.0) {
    throw std::invalid_argument("projector_of: zero label");
  }
  return s * s.adjoint();
}

bool is_disentangled(const FunctionalLabel& l, double tol) {
  return rank_one(l.matrix(), tol);
}

namespace bell {

namespace {
FunctionalLabel real2(double a, double b, double c, double d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return {std::move(m), Linearity::AntiLinear};
}
}  // namespace

FunctionalLabel id() { return real2(1, 0, 0, 1); }
FunctionalLabel pi() { return real2(0, 1, 1, 0); }
FunctionalLabel id_star() { return real2(1, 0, 0, -1); }
FunctionalLabel pi_star() { return real2(0, -1, 1, 0); }

}  // namespace bell

namespace pauli {

CMatrix x() { return bell::pi().matrix(); }
CMatrix y() { return Complex(0, 1) * bell::pi_star().matrix(); }
CMatrix z() { return bell::id_star().matrix(); }

}  // namespace pauli

std::optional<FunctionalLabel> named_label(const std::string& name) {
  const auto al = [](CMatrix m) {
    return FunctionalLabel(std::move(m), Linearity::AntiLinear);
  };
  if (name == "id") return bell::id();
  if (name == "pi" || name == "x") return bell::pi();
  if (name == "id*" || name == "z") return bell::id_star();
  if (name == "pi*") return bell::pi_star();
  if (name == "y") return al(pauli::y());
  CMatrix m;
  if (name == "h") {
    m.resize(2, 2);
    m << 1, 1, 1, -1;
    return al(m / std::sqrt(2.0));
  }
  if (name == "s") {
    m = CMatrix::Identity(2, 2);
    m(1, 1) = Complex(0, 1);
    return al(m);
  }
  if (name == "t") {
    m = CMatrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    return al(m);
  }
  if (name == "cnot" || name == "cz" || name == "swap") {
    m = CMatrix::Zero(4, 4);
    if (name == "cnot") {
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else if (name == "cz") {
      m(0, 0) = m(1, 1) = m(2, 2) = 1;
      m(3, 3) = -1;
    } else {
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
    }
    return al(m);
  }
  return std::nullopt;
}

bool valid_token(const std::string& token) {
  if (token.empty()) return false;
  for (unsigned char c : token) {
    if (!(std::isalnum(c) || c == '_') || c > 127) return false;
  }
  return true;
}

Measurement::Measurement(std::vector<Outcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) {
    throw std::invalid_argument("measurement needs at least one outcome");
  }
  std::set<std::string> seen;
  for (const auto& o : outcomes_) {
    if (!valid_token(o.token)) {
      throw std::invalid_argument("invalid outcome token '" + o.token + "'");
    }
    if (!seen.insert(o.token).second) {
      throw std::invalid_argument("duplicate outcome token '" + o.token + "'");
    }
    if (o.label.dom_dim() != outcomes_[0].label.dom_dim() ||
        o.label.cod_dim() != outcomes_[0].label.cod_dim()) {
      throw DimensionError("measurement outcomes have differing shapes");
    }
  }
}

Eigen::Index Measurement::dom_dim() const {
  return outcomes_.front().label.dom_dim();
}
Eigen::Index Measurement::cod_dim() const {
  return outcomes_.front().label.cod_dim();
}

const Outcome* Measurement::find(const std::string& token) const {
  for (const auto& o : outcomes_) {
    if (o.token == token) return &o;
  }
  return nullptr;
}

std::optional<std::string> Measurement::token_of(const FunctionalLabel& label,
                                                 double tol) const {
  for (const auto& o : outcomes_) {
    if (prop_eq(label, o.label, tol)) return o.token;
  }
  return std::nullopt;
}

bool Measurement::orthogonal(double tol) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const CVector a = state_of(outcomes_[i].label).normalized();
    for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
      const CVector b = state_of(outcomes_[j].label).normalized();
      if (std::abs(a.dot(b)) > tol) return false;
    }
  }
  return true;
}

bool Measurement::complete(double tol) const {
  const Eigen::Index n = dom_dim() * cod_dim();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& o : outcomes_) {
    const CMatrix p = projector_of(o.label);
    sum += p / p.trace();
  }
  return max_abs(sum - identity(n)) <= tol;
}

Measurement bell_measurement() {
  return Measurement({{"00", bell::id()},
                      {"01", bell::pi()},
                      {"10", bell::id_star()},
                      {"11", bell::pi_star()}});
}

std::pair<Measurement, Measurement> virtual_factorization() {
  Measurement base({{"0", bell::id()}, {"1", bell::id_star()}});
  Measurement flip({{"0", bell::id().with_linearity(Linearity::Linear)},
                    {"1", bell::pi().with_linearity(Linearity::Linear)}});
  return {std::move(base), std::move(flip)};
}

Measurement tensor_bell_measurement(int qubits) {
  if (qubits < 1) throw std::invalid_argument("tensor_bell_measurement: qubits < 1");
  const Measurement bell = bell_measurement();
  std::vector<Outcome> acc = bell.outcomes();
  for (int q = 1; q < qubits; ++q) {
    std::vector<Outcome> next;
    for (const auto& a : acc) {
      for (const auto& b : bell.outcomes()) {
        next.push_back({a.token + b.token, tensor(a.label, b.label)});
      }
    }
    acc = std::move(next);
  }
  return Measurement(std::move(acc));
}

}  // namespace espec
