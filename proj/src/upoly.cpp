#include "ql/upoly.hpp"

#include <algorithm>

namespace ql::upoly {

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const UPoly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

UPoly add(const FieldCtx& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

UPoly sub(const FieldCtx& F, const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

UPoly mul(const FieldCtx& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

UPoly scale(const FieldCtx& F, const UPoly& a, Elem c) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> divmod(const FieldCtx& F, const UPoly& a, const UPoly& b) {
  const int db = degree(b);
  if (db < 0) throw Error("polynomial division by zero");
  UPoly r = a;
  trim(r);
  const int da = degree(r);
  if (da < db) return {{}, r};
  UPoly q(da - db + 1, 0);
  const Elem lead_inv = F.inv(b[db]);
  for (int i = da; i >= db; --i) {
    const Elem c = F.mul(r[i], lead_inv);
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

UPoly exact_div(const FieldCtx& F, const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(F, a, b);
  if (!r.empty()) throw Error("inexact polynomial division");
  return q;
}

UPoly gcd(const FieldCtx& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = scale(F, a, F.inv(a.back()));
  return a;
}

Elem eval(const FieldCtx& F, const UPoly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

UPoly derivative(const FieldCtx& F, const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]);
  trim(d);
  return d;
}

std::vector<Elem> roots(const FieldCtx& F, const UPoly& a) {
  std::vector<Elem> out;
  if (degree(a) < 0) throw Error("roots of the zero polynomial");
  for (Elem x = 0; x < F.order(); ++x)
    if (eval(F, a, x) == 0) out.push_back(x);
  return out;
}

int root_multiplicity(const FieldCtx& F, UPoly a, Elem x) {
  trim(a);
  if (a.empty()) throw Error("multiplicity in the zero polynomial");
  const UPoly lin{F.neg(x), 1};
  int m = 0;
  while (true) {
    auto [q, r] = divmod(F, a, lin);
    if (!r.empty()) return m;
    ++m;
    a = std::move(q);
  }
}

std::vector<BinaryRoot> binary_roots(const FieldCtx& F, const UPoly& form, int deg) {
  // form(s, t) = sum c_i s^{d-i} t^i.  Affine chart s = 1 gives c(t); the
  // point (0:1) is a root of multiplicity d - deg(c).
  UPoly c = form;
  c.resize(deg + 1, 0);
  UPoly ct = c;
  trim(ct);
  if (ct.empty()) throw Error("roots of the zero binary form");
  std::vector<BinaryRoot> out;
  for (Elem t = 0; t < F.order(); ++t)
    if (eval(F, ct, t) == 0) out.push_back({1, t, root_multiplicity(F, ct, t)});
  const int at_infinity = deg - degree(ct);
  if (at_infinity > 0) out.push_back({0, 1, at_infinity});
  return out;
}

UPoly interpolate(const FieldCtx& F, const std::vector<Elem>& xs, const std::vector<Elem>& ys) {
  if (xs.size() != ys.size()) throw Error("interpolation data size mismatch");
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Elem> d = ys;
  if (n == 0) return {};
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      const Elem den = F.sub(xs[i], xs[i - j]);
      if (den == 0) throw Error("interpolation nodes are not distinct");
      d[i] = F.div(F.sub(d[i], d[i - 1]), den);
      if (i == j) break;
    }
  UPoly out{d[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    // out = out * (x - xs[k]) + d[k]
    UPoly next(out.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], out[i]);
      next[i] = F.sub(next[i], F.mul(out[i], xs[k]));
    }
    next[0] = F.add(next[0], d[k]);
    out = std::move(next);
  }
  trim(out);
  return out;
}

Elem binary_resultant(const FieldCtx& F, const UPoly& a, int da, const UPoly& b, int db) {
  const int n = da + db;
  if (n == 0) return 1;
  std::vector<std::vector<Elem>> m(n, std::vector<Elem>(n, 0));
  auto coef = [](const UPoly& p, int i) { return i < static_cast<int>(p.size()) ? p[i] : Elem{0}; };
  // Rows: db shifted copies of a, then da shifted copies of b; columns are
  // descending powers of t.
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = coef(a, da - i);
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = coef(b, db - i);
  Elem det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = F.neg(det);
    }
    det = F.mul(det, m[col][col]);
    const Elem inv = F.inv(m[col][col]);
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Elem f = F.mul(m[r][col], inv);
      for (int c = col; c < n; ++c) m[r][c] = F.sub(m[r][c], F.mul(f, m[col][c]));
    }
  }
  return det;
}

}  // namespace ql::upoly
