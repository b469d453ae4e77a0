#ifndef SPHROOTS_LINALG_HPP
#define SPHROOTS_LINALG_HPP

#include "sphroots/rat.hpp"

#include <optional>
#include <vector>

namespace sphroots {

// Row-major matrices; a QMat/IMat is a list of rows of equal length.
using QMat = std::vector<QVec>;
using IMat = std::vector<IVec>;

QVec mat_vec(const QMat& m, const QVec& v);

// Row echelon rank over Q.
int q_rank(QMat m);

// Solve m * x = rhs over Q (m given as rows).  Empty optional if inconsistent;
// if the solution space is positive-dimensional any one solution is returned.
std::optional<QVec> q_solve(QMat m, QVec rhs);

/// Basis of the right null space {x : m x = 0} over Q.
QMat q_nullspace(QMat m);

/// Row Hermite normal form of an integer matrix.  Zero rows are dropped;
/// pivots are positive and entries above each pivot are reduced into [0, pivot).
/// The result is the unique canonical basis of the row span.
IMat hnf(IMat m);

/// Basis of the integral kernel {x in Z^n : m x = 0} of an integer matrix.
IMat int_kernel(const IMat& m);

long long content(const IMat& m);

} // namespace sphroots

#endif
