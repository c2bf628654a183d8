#include "ql/resultant.hpp"

#include <bit>
#include <optional>

namespace ql {

int UPolyOver::actual_degree() const {
  for (int i = static_cast<int>(coeffs.size()); i-- > 0;)
    if (!coeffs[i].is_zero()) return i;
  return -1;
}

upoly::UPoly UPolyOver::eval(std::span<const Elem> x) const {
  upoly::UPoly out(degree + 1, 0);
  for (int i = 0; i <= degree && i < static_cast<int>(coeffs.size()); ++i) out[i] = coeffs[i].eval(x);
  return out;
}

namespace {

constexpr int kLaplaceLimit = 14;

struct LaplaceMemo {
  const std::vector<std::vector<MVPoly>>& m;
  int n;
  std::vector<std::optional<MVPoly>> memo;
  MVPoly zero;
  MVPoly one;

  // Determinant of rows popcount(used)..n-1 on the columns not in `used`.
  const MVPoly& minor(std::uint32_t used) {
    auto& slot = memo[used];
    if (slot) return *slot;
    const int row = std::popcount(used);
    if (row == n) {
      slot = one;
      return *slot;
    }
    MVPoly acc = zero;
    int position = 0;
    for (int c = 0; c < n; ++c) {
      if (used & (1u << c)) continue;
      const MVPoly& entry = m[row][c];
      if (!entry.is_zero()) {
        const MVPoly& sub = minor(used | (1u << c));
        if (!sub.is_zero()) {
          MVPoly prod = entry * sub;
          if (position % 2) acc -= prod;
          else acc += prod;
        }
      }
      ++position;
    }
    slot = std::move(acc);
    return *slot;
  }
};

template <class T, class Ops>
T bareiss(std::vector<std::vector<T>> a, const Ops& ops) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return ops.one();
  bool negate = false;
  T prev = ops.one();
  for (int k = 0; k < n - 1; ++k) {
    if (ops.is_zero(a[k][k])) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r)
        if (!ops.is_zero(a[r][k])) {
          swap = r;
          break;
        }
      if (swap < 0) return ops.zero();
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        T v = ops.sub(ops.mul(a[i][j], a[k][k]), ops.mul(a[i][k], a[k][j]));
        a[i][j] = ops.exact_div(v, prev);
      }
    prev = a[k][k];
  }
  T det = a[n - 1][n - 1];
  return negate ? ops.neg(det) : det;
}

struct MVOps {
  Field f;
  int nvars;
  MVPoly zero() const { return MVPoly(f, nvars); }
  MVPoly one() const { return MVPoly::constant(f, nvars, 1); }
  bool is_zero(const MVPoly& a) const { return a.is_zero(); }
  MVPoly mul(const MVPoly& a, const MVPoly& b) const { return a * b; }
  MVPoly sub(const MVPoly& a, const MVPoly& b) const { return a - b; }
  MVPoly neg(const MVPoly& a) const { return -a; }
  MVPoly exact_div(const MVPoly& a, const MVPoly& b) const {
    auto q = a.exact_div(b);
    if (!q) throw Error("internal: inexact Bareiss division");
    return *q;
  }
};

struct UOps {
  const FieldCtx& F;
  upoly::UPoly zero() const { return {}; }
  upoly::UPoly one() const { return {1}; }
  bool is_zero(const upoly::UPoly& a) const { return upoly::degree(a) < 0; }
  upoly::UPoly mul(const upoly::UPoly& a, const upoly::UPoly& b) const { return upoly::mul(F, a, b); }
  upoly::UPoly sub(const upoly::UPoly& a, const upoly::UPoly& b) const { return upoly::sub(F, a, b); }
  upoly::UPoly neg(const upoly::UPoly& a) const { return upoly::sub(F, {}, a); }
  upoly::UPoly exact_div(const upoly::UPoly& a, const upoly::UPoly& b) const {
    return upoly::exact_div(F, a, b);
  }
};

}  // namespace

MVPoly determinant(const std::vector<std::vector<MVPoly>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw Error("determinant of an empty matrix");
  const Field& f = m[0][0].field();
  int nvars = 1;
  for (const auto& row : m)
    for (const auto& e : row) nvars = std::max(nvars, e.nvars());
  if (n <= kLaplaceLimit) {
    LaplaceMemo memo{m, n, std::vector<std::optional<MVPoly>>(std::size_t{1} << n), MVPoly(f, nvars),
                     MVPoly::constant(f, nvars, 1)};
    return memo.minor(0);
  }
  return bareiss(m, MVOps{f, nvars});
}

upoly::UPoly determinant(const FieldCtx& F, std::vector<std::vector<upoly::UPoly>> m) {
  return bareiss(std::move(m), UOps{F});
}

MVPoly sylvester_resultant(const UPolyOver& a, const UPolyOver& b) {
  if (a.actual_degree() < 0 || b.actual_degree() < 0) throw Error("resultant of a zero form");
  const int da = a.degree, db = b.degree;
  const int n = da + db;
  const Field& f = a.coeffs.front().field();
  int nvars = 1;
  for (const auto& c : a.coeffs) nvars = std::max(nvars, c.nvars());
  for (const auto& c : b.coeffs) nvars = std::max(nvars, c.nvars());
  if (n == 0) return MVPoly::constant(f, nvars, 1);
  std::vector<std::vector<MVPoly>> m(n, std::vector<MVPoly>(n, MVPoly(f, nvars)));
  auto coef = [&](const UPolyOver& p, int i) {
    return i < static_cast<int>(p.coeffs.size()) ? p.coeffs[i] : MVPoly(f, nvars);
  };
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = coef(a, da - i);
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = coef(b, db - i);
  return determinant(m);
}

MVPoly resultant_in(const MVPoly& a, const MVPoly& b, int var) {
  auto ca = a.coefficients_in(var);
  auto cb = b.coefficients_in(var);
  UPolyOver A{static_cast<int>(ca.size()) - 1, std::move(ca)};
  UPolyOver B{static_cast<int>(cb.size()) - 1, std::move(cb)};
  return sylvester_resultant(A, B);
}

}  // namespace ql
