#include "ql/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

namespace ql {

namespace {

constexpr Elem kFullTableLimit = 1024;
constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 21;

using CoeffPoly = std::vector<unsigned>;

void trim(CoeffPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo b over F_p; b monic or with invertible lead.
CoeffPoly poly_rem(CoeffPoly a, const CoeffPoly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  unsigned lead_inv = 1;
  for (unsigned x = 1; x < p; ++x)
    if ((x * b.back()) % p == 1) lead_inv = x;
  while (a.size() >= b.size()) {
    const unsigned c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = (a[shift + i] + p - (c * b[i]) % p) % p;
    trim(a);
  }
  return a;
}

}  // namespace

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly) {
  CoeffPoly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Every monic divisor of degree d in [1, deg/2].
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      CoeffPoly g(d + 1);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<unsigned> first_irreducible(unsigned p, unsigned n) {
  if (n == 1) return {0, 1};
  // Lexicographic order of (c_0, c_1, ..., c_{n-1}) with c_0 most significant.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    CoeffPoly g(n + 1);
    std::uint64_t v = idx;
    for (unsigned i = n; i-- > 0;) {
      g[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    g[n] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw Error("no irreducible polynomial found");
}

FieldCtx::FieldCtx(Token, unsigned p, unsigned n, std::vector<unsigned> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  if (q > kMaxFieldOrder) throw Error("field order exceeds supported size");
  q_ = static_cast<Elem>(q);

  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    auto c = coeffs(a);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_[a] = from_coeffs(c);
  }

  // Primitive element: order q-1, tested against prime factors of q-1.
  std::vector<std::uint64_t> factors;
  {
    std::uint64_t m = q_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) factors.push_back(m);
  }
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem gen = 1;
  if (q_ > 2) {
    for (Elem cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto f : factors)
        if (slow_pow(cand, (q_ - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen = cand;
        break;
      }
    }
  }
  exp_.resize(2 * static_cast<std::size_t>(q_ - 1));
  log_.assign(q_, 0);
  Elem x = 1;
  for (Elem i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = mul_poly(x, gen);
  }
  for (Elem i = q_ - 1; i < 2 * (q_ - 1); ++i) exp_[i] = exp_[i - (q_ - 1)];

  if (q_ <= kFullTableLimit) {
    full_tables_ = true;
    add_tab_.resize(static_cast<std::size_t>(q_) * q_);
    mul_tab_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        add_tab_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
        mul_tab_[static_cast<std::size_t>(a) * q_ + b] =
            (a == 0 || b == 0) ? 0 : exp_[log_[a] + log_[b]];
      }
  } else if (p_ != 2) {
    zech_.resize(q_ - 1);
    for (Elem i = 0; i < q_ - 1; ++i) {
      const Elem s = add_digits(1, exp_[i]);
      zech_[i] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
    }
  }
}

Elem FieldCtx::add_digits(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  while (a || b) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem FieldCtx::add_slow(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  if (a == 0) return b;
  if (b == 0) return a;
  const Elem la = log_[a], lb = log_[b];
  const Elem d = lb >= la ? lb - la : lb + (q_ - 1) - la;
  const std::int64_t z = zech_[d];
  if (z < 0) return 0;
  return exp_[la + static_cast<Elem>(z)];
}

Elem FieldCtx::mul_poly(Elem a, Elem b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  CoeffPoly prod(2 * n_, 0);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  auto r = poly_rem(prod, modulus_, p_);
  r.resize(n_, 0);
  return from_coeffs(r);
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw Error("division by zero in " + spec());
  const Elem l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem FieldCtx::pow(Elem a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) {
    if (e < 0) throw Error("division by zero in " + spec());
    return 0;
  }
  const std::int64_t m = q_ - 1;
  std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % m)) % m;
  if (k < 0) k += m;
  return exp_[static_cast<std::size_t>(k)];
}

Elem FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<unsigned> FieldCtx::coeffs(Elem a) const {
  std::vector<unsigned> c(n_);
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem FieldCtx::from_coeffs(std::span<const unsigned> c) const {
  Elem r = 0, scale = 1;
  for (std::size_t i = 0; i < c.size() && i < n_; ++i) {
    r += (c[i] % p_) * scale;
    scale *= p_;
  }
  return r;
}

std::string FieldCtx::literal(Elem a) const {
  if (n_ == 1) return std::to_string(a);
  std::string s = "[";
  auto c = coeffs(a);
  for (unsigned i = 0; i < n_; ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + "]";
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error("bad integer literal '" + std::string(s) + "'");
  return v;
}

std::vector<std::int64_t> parse_int_list(std::string_view s) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(',', start);
    if (pos == std::string_view::npos) pos = s.size();
    out.push_back(parse_int(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

}  // namespace

Elem FieldCtx::parse_literal(std::string_view s) const {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error("unterminated field literal");
    auto vals = parse_int_list(s.substr(1, s.size() - 2));
    if (vals.size() > n_) throw Error("field literal longer than extension degree");
    Elem r = 0, scale = 1;
    for (auto v : vals) {
      r += from_int(v) * scale;
      scale *= p_;
    }
    return r;
  }
  return from_int(parse_int(s));
}

std::string FieldCtx::spec() const {
  std::string s = "p=" + std::to_string(p_) + ",n=" + std::to_string(n_) + ",mod=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(modulus_[i]);
  }
  return s;
}

void FieldCtx::require_enumerable(std::uint64_t cap) const {
  if (q_ > cap)
    throw Error("field of order " + std::to_string(q_) + " exceeds enumeration cap " +
                std::to_string(cap));
}

namespace {

struct Registry {
  std::mutex mu;
  std::map<std::pair<unsigned, std::vector<unsigned>>, Field> fields;
  std::map<std::pair<const FieldCtx*, const FieldCtx*>, std::shared_ptr<Embedding>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Field make_field(unsigned p, unsigned n, std::optional<std::vector<unsigned>> modulus) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) throw Error("extension degree must be >= 1");
  std::vector<unsigned> mod;
  if (modulus) {
    mod = *modulus;
    for (auto& c : mod) c %= p;
    if (mod.size() != n + 1 || mod.back() != 1)
      throw Error("modulus must be monic of degree " + std::to_string(n));
    if (!is_irreducible(p, mod)) throw Error("modulus is reducible");
  }
  if (!modulus) mod = first_irreducible(p, n);
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mu);
    if (auto it = reg.fields.find({p, mod}); it != reg.fields.end()) return it->second;
  }
  auto f = std::make_shared<const FieldCtx>(FieldCtx::Token{}, p, n, mod);
  std::lock_guard lock(reg.mu);
  auto [it, inserted] = reg.fields.emplace(std::make_pair(p, mod), f);
  return it->second;
}

Field parse_field_spec(std::string_view spec) {
  std::optional<unsigned> p, n;
  std::optional<std::vector<unsigned>> mod;
  std::string s(spec);
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto eq = s.find('=', pos);
    if (eq == std::string::npos) throw Error("bad field spec '" + s + "'");
    std::string key = s.substr(pos, eq - pos);
    while (!key.empty() && key.front() == ' ') key.erase(key.begin());
    if (key == "mod") {
      auto vals = parse_int_list(std::string_view(s).substr(eq + 1));
      mod.emplace();
      for (auto v : vals) {
        if (v < 0) throw Error("negative modulus coefficient");
        mod->push_back(static_cast<unsigned>(v));
      }
      break;
    }
    auto comma = s.find(',', eq);
    if (comma == std::string::npos) comma = s.size();
    auto v = parse_int(std::string_view(s).substr(eq + 1, comma - eq - 1));
    if (v <= 0) throw Error("bad value for '" + key + "'");
    if (key == "p") p = static_cast<unsigned>(v);
    else if (key == "n") n = static_cast<unsigned>(v);
    else throw Error("unknown field spec key '" + key + "'");
    pos = comma + 1;
  }
  if (!p) throw Error("field spec missing p");
  return make_field(*p, n.value_or(1), mod);
}

Field extension_field(const Field& base, unsigned degree) {
  if (degree == 1) return base;
  return make_field(base->p(), base->n() * degree);
}

Field extension_with_order(const Field& base, std::uint64_t min_order) {
  unsigned d = 1;
  std::uint64_t q = base->order();
  while (q < min_order) {
    ++d;
    q *= base->order();
  }
  return extension_field(base, d);
}

bool same_field(const FieldCtx& a, const FieldCtx& b) {
  return &a == &b || (a.p() == b.p() && a.modulus() == b.modulus());
}

void FieldElement::check(const FieldElement& o) const {
  if (!same_field(*field_, *o.field_)) throw Error("mismatched field contexts");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check(o);
  return {field_, field_->add(v_, o.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check(o);
  return {field_, field_->sub(v_, o.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check(o);
  return {field_, field_->mul(v_, o.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check(o);
  return {field_, field_->div(v_, o.v_)};
}
bool FieldElement::operator==(const FieldElement& o) const {
  return same_field(*field_, *o.field_) && v_ == o.v_;
}

std::vector<FieldElement> enumerate_elements(const Field& f, std::uint64_t cap) {
  f->require_enumerable(cap);
  std::vector<FieldElement> out;
  out.reserve(f->order());
  for (Elem a = 0; a < f->order(); ++a) out.emplace_back(f, a);
  return out;
}

Embedding::Embedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->n() % small_->n() != 0)
    throw Error("no embedding of " + small_->spec() + " into " + big_->spec());
  const auto& F = *big_;
  Elem root = 0;
  bool found = false;
  if (small_->n() == 1) {
    found = true;
  } else if (same_field(*small_, *big_)) {
    root = small_->p();
    found = true;
  } else {
    const auto& mod = small_->modulus();
    for (Elem x = 0; x < F.order() && !found; ++x) {
      Elem acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = F.add(F.mul(acc, x), F.from_int(mod[i]));
      if (acc == 0) {
        root = x;
        found = true;
      }
    }
  }
  if (!found) throw Error("internal: no root of small modulus in big field");
  image_.resize(small_->order());
  preimage_.assign(F.order(), -1);
  for (Elem a = 0; a < small_->order(); ++a) {
    auto c = small_->coeffs(a);
    Elem acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, root), F.from_int(c[i]));
    image_[a] = acc;
    preimage_[acc] = a;
  }
}

FieldElement Embedding::operator()(const FieldElement& a) const {
  if (!same_field(*a.field(), *small_)) throw Error("element not in embedding domain");
  return {big_, image_[a.value()]};
}

std::optional<Elem> Embedding::preimage(Elem b) const {
  if (preimage_[b] < 0) return std::nullopt;
  return static_cast<Elem>(preimage_[b]);
}

const Embedding& embed(const Field& small, const Field& big) {
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mu);
    if (auto it = reg.embeddings.find({small.get(), big.get()}); it != reg.embeddings.end())
      return *it->second;
  }
  auto e = std::make_shared<Embedding>(small, big);
  std::lock_guard lock(reg.mu);
  auto [it, inserted] = reg.embeddings.emplace(std::make_pair(small.get(), big.get()), e);
  return *it->second;
}

}  // namespace ql
