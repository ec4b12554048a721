#pragma once

#include <optional>
#include <vector>

#include "rgit/exactgeom/rational.hpp"

namespace rgit::geom {

/// Dense row-major rational matrix stored as a list of rows.
using QMat = std::vector<QVec>;

struct RowEchelon {
  QMat rows;                       ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  ///< pivot column of each row
};

/// Reduced row echelon form of `rows`, all of dimension `cols`.
RowEchelon rref(QMat rows, std::size_t cols);

std::size_t rank(const QMat& rows, std::size_t cols);

/// Basis of {x : r . x = 0 for every row r}; one vector per free column.
QMat nullspace(const QMat& rows, std::size_t cols);

/// Solves the square system a x = b; nullopt when a is singular.
std::optional<QVec> solve_square(const QMat& a, const QVec& b);

/// Determinant of a square matrix (fraction-free elimination over Q).
Rat determinant(QMat a);

/// Orthogonal projection of `v` onto the orthogonal complement of span(`normals`).
/// `normals` must be linearly independent.
QVec project_out(const QVec& v, const QMat& normals);

}  // namespace rgit::geom
