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

#include "espec/linalg.hpp"

#include <algorithm>
#include <limits>

#include "espec/error.hpp"

namespace espec {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }
CMatrix transpose(const CMatrix& m) { return m.transpose(); }
CMatrix conj(const CMatrix& m) { return m.conjugate(); }
CVector conj(const CVector& v) { return v.conjugate(); }

CMatrix outer(const CVector& u, const CVector& v) { return u * v.transpose(); }

std::vector<double> singular_values(const CMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

namespace {

double prop_distance_flat(const Complex* u, const Complex* v, Eigen::Index n) {
  Eigen::Index pivot = 0;
  double vmax = 0.0;
  double umax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v[i]) > vmax) {
      vmax = std::abs(v[i]);
      pivot = i;
    }
    umax = std::max(umax, std::abs(u[i]));
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (vmax == 0.0 || umax == 0.0) return (vmax == 0.0 && umax == 0.0) ? 0.0 : inf;
  const Complex up = u[pivot];
  const Complex vp = v[pivot];
  if (std::abs(up) == 0.0) return inf;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(u[i] / up - v[i] / vp));
  }
  return worst;
}

}  // namespace

double prop_distance(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("prop_eq: vector sizes differ");
  }
  return prop_distance_flat(u.data(), v.data(), u.size());
}

double prop_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("prop_eq: matrix shapes differ");
  }
  return prop_distance_flat(u.data(), v.data(), u.size());
}

bool prop_eq(const CVector& u, const CVector& v, double tol) {
  return prop_distance(u, v) <= tol;
}

bool prop_eq(const CMatrix& u, const CMatrix& v, double tol) {
  return prop_distance(u, v) <= tol;
}

bool rank_one(const CMatrix& m, double tol) {
  const auto s = singular_values(m);
  if (s.empty() || s[0] == 0.0) return false;
  return s.size() < 2 || s[1] <= tol * s[0];
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

}  // namespace espec
