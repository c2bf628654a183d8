#pragma once

// Small dense matrices over a finite field.

#include <optional>
#include <vector>

#include "ql/gf.hpp"

namespace ql {

using Matrix = std::vector<std::vector<Elem>>;

Matrix identity_matrix(std::size_t n);
Matrix mat_mul(const FieldCtx& F, const Matrix& a, const Matrix& b);
std::vector<Elem> mat_vec(const FieldCtx& F, const Matrix& a, const std::vector<Elem>& v);
Matrix transpose(const Matrix& a);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(const FieldCtx& F, Matrix& a);
int rank(const FieldCtx& F, Matrix a);
Elem determinant(const FieldCtx& F, Matrix a);
std::optional<Matrix> inverse(const FieldCtx& F, const Matrix& a);
/// Basis of the right kernel {v : a v = 0}.
std::vector<std::vector<Elem>> kernel(const FieldCtx& F, Matrix a, std::size_t ncols);

Matrix map_matrix(const Embedding& e, const Matrix& a);

}  // namespace ql
