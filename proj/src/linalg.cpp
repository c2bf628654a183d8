#include "ql/linalg.hpp"

namespace ql {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Elem>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix mat_mul(const FieldCtx& F, const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size()) throw Error("matrix shape mismatch");
  Matrix c(a.size(), std::vector<Elem>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] = F.add(c[i][j], F.mul(a[i][k], b[k][j]));
    }
  return c;
}

std::vector<Elem> mat_vec(const FieldCtx& F, const Matrix& a, const std::vector<Elem>& v) {
  std::vector<Elem> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw Error("matrix shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = F.add(out[i], F.mul(a[i][j], v[j]));
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), std::vector<Elem>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

std::vector<int> rref(const FieldCtx& F, Matrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    const Elem inv = F.inv(a[r][c]);
    for (auto& x : a[r]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Elem factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(factor, a[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(const FieldCtx& F, Matrix a) { return static_cast<int>(rref(F, a).size()); }

Elem determinant(const FieldCtx& F, Matrix a) {
  const std::size_t n = a.size();
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a[sel][c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(a[c], a[sel]);
      det = F.neg(det);
    }
    det = F.mul(det, a[c][c]);
    const Elem inv = F.inv(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Elem factor = F.mul(a[i][c], inv);
      for (std::size_t j = c; j < n; ++j) a[i][j] = F.sub(a[i][j], F.mul(factor, a[c][j]));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const FieldCtx& F, const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug(n, std::vector<Elem>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(F, aug);
  if (piv.size() < n || piv[n - 1] != static_cast<int>(n - 1)) return std::nullopt;
  Matrix inv(n, std::vector<Elem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::vector<std::vector<Elem>> kernel(const FieldCtx& F, Matrix a, std::size_t ncols) {
  auto piv = rref(F, a);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : piv) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix map_matrix(const Embedding& e, const Matrix& a) {
  Matrix out = a;
  for (auto& row : out)
    for (auto& x : row) x = e(x);
  return out;
}

}  // namespace ql
