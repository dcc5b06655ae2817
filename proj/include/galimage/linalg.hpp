#pragma once

#include <optional>
#include <vector>

#include "galimage/bigint.hpp"

namespace galimage {

using QVector = std::vector<BigRat>;
/// Row-major dense matrix over Q.
using QMatrix = std::vector<QVector>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

/// Basis of {x : A x = 0}; A has `cols` columns (needed when A has no rows).
std::vector<QVector> nullspace(const QMatrix& a, std::size_t cols);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

QVector mat_vec(const QMatrix& a, const QVector& x);

}  // namespace galimage
