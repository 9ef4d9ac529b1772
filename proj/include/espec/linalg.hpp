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

// Small dense complex linear algebra. Everything here works on Eigen's
// dynamic complex types; dimensions are tiny (a few qubits) so no attention is
// paid to blocking or allocation.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace espec {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Default relative tolerance for scale-free comparisons.
inline constexpr double kDefaultTol = 1e-9;

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

CMatrix adjoint(const CMatrix& m);
CMatrix transpose(const CMatrix& m);
CMatrix conj(const CMatrix& m);
CVector conj(const CVector& v);

/// u * v^T, without conjugating either side.
CMatrix outer(const CVector& u, const CVector& v);

/// Singular values in non-increasing order.
std::vector<double> singular_values(const CMatrix& m);

/// Equality up to a nonzero complex scalar.
///
/// Both operands are rescaled so that the entry where `v` has its largest
/// magnitude becomes exactly 1; the result is true iff every entry of the
/// rescaled operands then agrees within `tol`. The zero object is equal only
/// to the zero object. Throws DimensionError on shape mismatch.
bool prop_eq(const CVector& u, const CVector& v, double tol = kDefaultTol);
bool prop_eq(const CMatrix& u, const CMatrix& v, double tol = kDefaultTol);

/// The largest entrywise difference after the rescaling prop_eq performs:
/// 0 for two zero objects, infinity when no rescaling matches them.
double prop_distance(const CVector& u, const CVector& v);
double prop_distance(const CMatrix& u, const CMatrix& v);

/// True iff the second singular value is at most tol times the first. The
/// zero matrix is not rank one.
bool rank_one(const CMatrix& m, double tol = kDefaultTol);

/// max_ij |(m^dagger m - I)_ij| <= tol.
bool is_unitary(const CMatrix& m, double tol = kDefaultTol);

double max_abs(const CMatrix& m);

CMatrix identity(Eigen::Index dim);

}  // namespace espec
