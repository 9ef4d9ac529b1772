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

#include "espec/multipartite.hpp"

#include "espec/error.hpp"

namespace espec {

TripartiteLabel::TripartiteLabel(std::array<Eigen::Index, 3> dims, CVector coefficients)
    : dims_(dims), coefficients_(std::move(coefficients)) {
  if (dims_[0] < 1 || dims_[1] < 1 || dims_[2] < 1 ||
      coefficients_.size() != dims_[0] * dims_[1] * dims_[2]) {
    throw DimensionError("tripartite coefficients do not match dimensions");
  }
}

std::function<FunctionalLabel(const CVector&)> as_first_order(const TripartiteLabel& t) {
  return [t](const CVector& psi) {
    const auto [d1, d2, d3] = t.dims();
    if (psi.size() != d1) throw DimensionError("first-order argument has the wrong size");
    CMatrix m = CMatrix::Zero(d3, d2);
    for (Eigen::Index a = 0; a < d1; ++a) {
      for (Eigen::Index b = 0; b < d2; ++b) {
        for (Eigen::Index c = 0; c < d3; ++c) m(c, b) += std::conj(psi(a)) * t.at(a, b, c);
      }
    }
    return FunctionalLabel(std::move(m), Linearity::AntiLinear);
  };
}

std::function<CVector(const FunctionalLabel&)> as_second_order(const TripartiteLabel& t) {
  return [t](const FunctionalLabel& l) {
    const auto [d1, d2, d3] = t.dims();
    if (!l.is_antilinear()) throw std::invalid_argument("second-order argument must be anti-linear");
    if (l.dom_dim() != d1 || l.cod_dim() != d2) {
      throw DimensionError("second-order argument has the wrong shape");
    }
    CVector v = CVector::Zero(d3);
    for (Eigen::Index a = 0; a < d1; ++a) {
      for (Eigen::Index b = 0; b < d2; ++b) {
        for (Eigen::Index c = 0; c < d3; ++c) v(c) += std::conj(l.matrix()(b, a)) * t.at(a, b, c);
      }
    }
    return v;
  };
}

namespace {

void check_dims(const WorkedExample& w) {
  const auto& a = w.m1.dims();
  const auto& b = w.m2.dims();
  const auto& c = w.m3.dims();
  const bool ok = w.phi1.size() == a[0] && w.b2.dom_dim() == a[1] && w.b1.dom_dim() == a[2] &&
                  w.b1.cod_dim() == b[0] && w.b2.cod_dim() == b[1] && b[2] == c[0] &&
                  w.phi2.size() == c[1];
  if (!ok) throw DimensionError("worked example: inconsistent dimensions");
}

}  // namespace

CVector worked_example_predict(const WorkedExample& w) {
  check_dims(w);
  const auto [d1, d2, d3] = w.m1.dims();
  const auto [d4, d5, d6] = w.m2.dims();
  const Eigen::Index d7 = w.m3.dims()[1];
  const Eigen::Index d8 = w.m3.dims()[2];
  // b(a, c) as state coefficients live at matrix(c, a).
  const CMatrix& b1 = w.b1.matrix();
  const CMatrix& b2 = w.b2.matrix();

  CVector out = CVector::Zero(d8);
  for (Eigen::Index a1 = 0; a1 < d1; ++a1)
    for (Eigen::Index a2 = 0; a2 < d2; ++a2)
      for (Eigen::Index a3 = 0; a3 < d3; ++a3) {
        const Complex left = w.phi1(a1) * std::conj(w.m1.at(a1, a2, a3));
        for (Eigen::Index a4 = 0; a4 < d4; ++a4)
          for (Eigen::Index a5 = 0; a5 < d5; ++a5)
            for (Eigen::Index a6 = 0; a6 < d6; ++a6) {
              const Complex mid =
                  left * b1(a4, a3) * b2(a5, a2) * std::conj(w.m2.at(a4, a5, a6));
              for (Eigen::Index a7 = 0; a7 < d7; ++a7)
                for (Eigen::Index a8 = 0; a8 < d8; ++a8)
                  out(a8) += mid * std::conj(w.phi2(a7)) * w.m3.at(a6, a7, a8);
            }
      }
  return out;
}

CVector worked_example_curried(const WorkedExample& w) {
  check_dims(w);
  const FunctionalLabel h =
      compose(w.b2, compose(adjoint(as_first_order(w.m1)(w.phi1)), adjoint(w.b1)));
  return as_first_order(w.m3)(as_second_order(w.m2)(h))(w.phi2);
}

Network worked_example_network(const WorkedExample& w) {
  check_dims(w);
  const auto& a = w.m1.dims();
  const auto& b = w.m2.dims();
  const auto& c = w.m3.dims();
  const int dims[8] = {static_cast<int>(a[0]), static_cast<int>(a[1]), static_cast<int>(a[2]),
                       static_cast<int>(b[0]), static_cast<int>(b[1]), static_cast<int>(b[2]),
                       static_cast<int>(c[1]), static_cast<int>(c[2])};
  Network n;
  for (int t = 0; t < 8; ++t) n.add_track(t + 1, dims[t]);
  n.add_multiproj("M1", {1, 2, 3}, 4, w.m1.coefficients());
  n.add_multiproj("M2", {4, 5, 6}, 3, w.m2.coefficients());
  n.add_multiproj("M3", {6, 7, 8}, 2, w.m3.coefficients());
  n.add_projector("m1", 3, 4, 2, w.b1);
  n.add_projector("m2", 2, 5, 1, w.b2);
  n.add_uniproj("phi1", 1, 3, w.phi1);
  n.add_uniproj("phi2", 7, 3, w.phi2);
  return n;
}

}  // namespace espec
