#pragma once

#include "jetcov/rational_expr.hpp"

#include <vector>

namespace jetcov {

using Matrix = std::vector<std::vector<RationalExpr>>;

/// Laplace expansion; meant for the small matrices of a coframe
RationalExpr determinant(const Matrix &m);
/// adjugate over determinant; throws DivisionByZero for a singular matrix
Matrix inverse(const Matrix &m);
Matrix multiply(const Matrix &a, const Matrix &b);
Matrix transpose(const Matrix &m);

/**
 * Basis of { x : m x = 0 } by fraction-free (Bareiss) elimination. Pivots
 * are the first nonzero entry in column order, so the result is
 * reproducible. Each basis vector has a 1 in its free column and zeros in
 * the other free columns.
 */
std::vector<std::vector<RationalExpr>> nullspace(Matrix m);

} // namespace jetcov
