#include "ql/mvpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ql {

namespace {

std::uint64_t sort_key(std::uint32_t k) {
  return (static_cast<std::uint64_t>(key_degree(k)) << 32) | k;
}

void check_nvars(int nvars) {
  if (nvars < 1 || nvars > 4) throw Error("polynomials support 1 to 4 variables");
}

}  // namespace

unsigned binomial_mod(unsigned n, unsigned k, unsigned p) {
  unsigned result = 1;
  while (n || k) {
    const unsigned ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) with ni < p, small enough for exact integer arithmetic.
    std::uint64_t c = 1;
    for (unsigned i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
    result = static_cast<unsigned>((result * (c % p)) % p);
    n /= p;
    k /= p;
  }
  return result;
}

MVPoly::MVPoly(Field f, int nvars) : field_(std::move(f)), nvars_(nvars) { check_nvars(nvars); }

MVPoly MVPoly::constant(Field f, int nvars, Elem c) {
  MVPoly r(std::move(f), nvars);
  if (c != 0) r.terms_.push_back({0, c});
  return r;
}

MVPoly MVPoly::variable(Field f, int nvars, int index) {
  if (index < 0 || index >= nvars) throw Error("variable index out of range");
  Exponents e{};
  e[index] = 1;
  return monomial(std::move(f), nvars, e, 1);
}

MVPoly MVPoly::monomial(Field f, int nvars, const Exponents& e, Elem c) {
  MVPoly r(std::move(f), nvars);
  for (int i = nvars; i < 4; ++i)
    if (e[i]) throw Error("monomial uses a variable beyond nvars");
  if (c != 0) r.terms_.push_back({pack(e), c});
  return r;
}

MVPoly MVPoly::linear_form(Field f, std::span<const Elem> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  MVPoly r(f, n);
  for (int i = 0; i < n; ++i)
    if (coeffs[i] != 0) {
      Exponents e{};
      e[i] = 1;
      r.terms_.push_back({pack(e), coeffs[i]});
    }
  return r;
}

void MVPoly::normalize(std::vector<Term>& raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Term& a, const Term& b) { return sort_key(a.key) > sort_key(b.key); });
  terms_.clear();
  const auto& F = *field_;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    Elem c = 0;
    while (j < raw.size() && raw[j].key == raw[i].key) c = F.add(c, raw[j++].coeff);
    if (c != 0) terms_.push_back({raw[i].key, c});
    i = j;
  }
}

int MVPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return key_degree(terms_.front().key);
}

bool MVPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = key_degree(terms_.front().key);
  return key_degree(terms_.back().key) == d;
}

int MVPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(unpack(t.key)[var]));
  return d;
}

Elem MVPoly::coefficient(const Exponents& e) const {
  const auto k = pack(e);
  for (const auto& t : terms_)
    if (t.key == k) return t.coeff;
  return 0;
}

MVPoly MVPoly::operator+(const MVPoly& o) const {
  if (field_ != o.field_ && !same_field(*field_, *o.field_)) throw Error("mismatched field contexts");
  MVPoly r(field_, std::max(nvars_, o.nvars_));
  const auto& F = *field_;
  std::size_t i = 0, j = 0;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && grlex_greater(terms_[i].key, o.terms_[j].key))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || grlex_greater(o.terms_[j].key, terms_[i].key)) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      const Elem c = F.add(terms_[i].coeff, o.terms_[j].coeff);
      if (c != 0) r.terms_.push_back({terms_[i].key, c});
      ++i;
      ++j;
    }
  }
  return r;
}

MVPoly MVPoly::operator-() const {
  MVPoly r = *this;
  for (auto& t : r.terms_) t.coeff = field_->neg(t.coeff);
  return r;
}

MVPoly MVPoly::operator-(const MVPoly& o) const { return *this + (-o); }

MVPoly MVPoly::operator*(const MVPoly& o) const {
  if (field_ != o.field_ && !same_field(*field_, *o.field_)) throw Error("mismatched field contexts");
  MVPoly r(field_, std::max(nvars_, o.nvars_));
  if (terms_.empty() || o.terms_.empty()) return r;
  if (total_degree() + o.total_degree() > 255) throw Error("polynomial degree overflow");
  for (int v = 0; v < 4; ++v)
    if (degree_in(v) + o.degree_in(v) > 255) throw Error("polynomial degree overflow");
  const auto& F = *field_;
  std::vector<Term> raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) raw.push_back({a.key + b.key, F.mul(a.coeff, b.coeff)});
  r.normalize(raw);
  return r;
}

MVPoly MVPoly::scaled(Elem c) const {
  MVPoly r(field_, nvars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = field_->mul(t.coeff, c);
  return r;
}

MVPoly MVPoly::pow(unsigned e) const {
  MVPoly result = constant(field_, nvars_, 1);
  MVPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool MVPoly::operator==(const MVPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].key != o.terms_[i].key || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Elem MVPoly::eval(std::span<const Elem> point) const {
  if (static_cast<int>(point.size()) < nvars_) throw Error("evaluation point has too few coordinates");
  const auto& F = *field_;
  std::array<std::vector<Elem>, 4> powers;
  for (int v = 0; v < nvars_; ++v) {
    const int d = std::max(0, degree_in(v));
    powers[v].resize(d + 1);
    powers[v][0] = 1;
    for (int k = 1; k <= d; ++k) powers[v][k] = F.mul(powers[v][k - 1], point[v]);
  }
  Elem acc = 0;
  for (const auto& t : terms_) {
    const auto e = unpack(t.key);
    Elem m = t.coeff;
    for (int v = 0; v < nvars_ && m != 0; ++v) m = F.mul(m, powers[v][e[v]]);
    acc = F.add(acc, m);
  }
  return acc;
}

MVPoly MVPoly::hasse_derivative(const Exponents& alpha) const {
  const auto& F = *field_;
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    auto e = unpack(t.key);
    unsigned scale = 1;
    bool ok = true;
    for (int v = 0; v < 4 && ok; ++v) {
      if (e[v] < alpha[v]) {
        ok = false;
        break;
      }
      scale = (scale * binomial_mod(e[v], alpha[v], F.p())) % F.p();
      e[v] = static_cast<std::uint8_t>(e[v] - alpha[v]);
    }
    if (!ok || scale == 0) continue;
    raw.push_back({pack(e), F.mul(t.coeff, F.from_int(scale))});
  }
  MVPoly r(field_, nvars_);
  r.normalize(raw);
  return r;
}

MVPoly MVPoly::partial(int var) const {
  Exponents a{};
  a[var] = 1;
  return hasse_derivative(a);
}

MVPoly MVPoly::substitute(std::span<const MVPoly> images) const {
  if (static_cast<int>(images.size()) != nvars_) throw Error("substitution arity mismatch");
  const int out_vars = images.empty() ? nvars_ : images.front().nvars();
  for (const auto& im : images)
    if (im.nvars() != out_vars) throw Error("substitution images disagree on variable count");
  std::array<std::vector<MVPoly>, 4> powers;
  for (int v = 0; v < nvars_; ++v) {
    const int d = std::max(0, degree_in(v));
    powers[v].reserve(d + 1);
    powers[v].push_back(constant(field_, out_vars, 1));
    for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * images[v]);
  }
  MVPoly acc(field_, out_vars);
  for (const auto& t : terms_) {
    const auto e = unpack(t.key);
    MVPoly m = constant(field_, out_vars, t.coeff);
    for (int v = 0; v < nvars_; ++v)
      if (e[v]) m = m * powers[v][e[v]];
    acc += m;
  }
  return acc;
}

std::vector<MVPoly> MVPoly::coefficients_in(int var) const {
  const int d = std::max(0, degree_in(var));
  std::vector<std::vector<Term>> raw(d + 1);
  for (const auto& t : terms_) {
    auto e = unpack(t.key);
    const int k = e[var];
    e[var] = 0;
    raw[k].push_back({pack(e), t.coeff});
  }
  std::vector<MVPoly> out;
  out.reserve(d + 1);
  for (auto& r : raw) {
    MVPoly p(field_, nvars_);
    p.normalize(r);
    out.push_back(std::move(p));
  }
  return out;
}

MVPoly MVPoly::specialize(int var, Elem value) const {
  const auto& F = *field_;
  std::vector<Term> raw;
  const int d = std::max(0, degree_in(var));
  std::vector<Elem> powers(d + 1, 1);
  for (int k = 1; k <= d; ++k) powers[k] = F.mul(powers[k - 1], value);
  for (const auto& t : terms_) {
    auto e = unpack(t.key);
    const Elem c = F.mul(t.coeff, powers[e[var]]);
    if (c == 0) continue;
    e[var] = 0;
    raw.push_back({pack(e), c});
  }
  MVPoly r(field_, nvars_);
  r.normalize(raw);
  return r;
}

MVPoly MVPoly::with_nvars(int nvars) const {
  check_nvars(nvars);
  for (int v = nvars; v < nvars_; ++v)
    if (degree_in(v) > 0) throw Error("polynomial involves a dropped variable");
  MVPoly r = *this;
  r.nvars_ = nvars;
  return r;
}

MVPoly MVPoly::drop_variable(int var) const {
  if (degree_in(var) > 0) throw Error("polynomial involves the dropped variable");
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto e = unpack(t.key);
    Exponents f{};
    int j = 0;
    for (int v = 0; v < 4; ++v)
      if (v != var) f[j++] = e[v];
    raw.push_back({pack(f), t.coeff});
  }
  MVPoly r(field_, std::max(1, nvars_ - 1));
  r.normalize(raw);
  return r;
}

MVPoly MVPoly::map_field(const Embedding& e) const {
  MVPoly r(e.big(), nvars_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = e(t.coeff);
  return r;
}

std::optional<MVPoly> MVPoly::pull_back(const Embedding& e) const {
  MVPoly r(e.small(), nvars_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) {
    auto pre = e.preimage(t.coeff);
    if (!pre) return std::nullopt;
    t.coeff = *pre;
  }
  return r;
}

std::pair<MVPoly, MVPoly> MVPoly::divmod(const MVPoly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  const auto& F = *field_;
  const auto lead = d.terms_.front();
  const auto le = unpack(lead.key);
  const Elem lead_inv = F.inv(lead.coeff);
  auto cmp = [](std::uint64_t a, std::uint64_t b) { return a > b; };
  std::map<std::uint64_t, Elem, decltype(cmp)> rest(cmp);
  for (const auto& t : terms_) rest[sort_key(t.key)] = t.coeff;
  std::vector<Term> quot, rem;
  while (!rest.empty()) {
    auto it = rest.begin();
    const std::uint32_t k = static_cast<std::uint32_t>(it->first);
    const Elem c = it->second;
    rest.erase(it);
    const auto e = unpack(k);
    bool divisible = true;
    for (int v = 0; v < 4; ++v)
      if (e[v] < le[v]) divisible = false;
    if (!divisible) {
      rem.push_back({k, c});
      continue;
    }
    const std::uint32_t qk = k - lead.key;
    const Elem qc = F.mul(c, lead_inv);
    quot.push_back({qk, qc});
    for (std::size_t i = 1; i < d.terms_.size(); ++i) {
      const auto& dt = d.terms_[i];
      const auto sk = sort_key(qk + dt.key);
      const Elem delta = F.neg(F.mul(qc, dt.coeff));
      auto [pos, inserted] = rest.emplace(sk, delta);
      if (!inserted) {
        pos->second = F.add(pos->second, delta);
        if (pos->second == 0) rest.erase(pos);
      }
    }
  }
  MVPoly q(field_, std::max(nvars_, d.nvars_)), r(field_, nvars_);
  q.normalize(quot);
  r.normalize(rem);
  return {q, r};
}

std::optional<MVPoly> MVPoly::exact_div(const MVPoly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

std::vector<Elem> MVPoly::restrict_to_line(std::span<const Elem> P, std::span<const Elem> Q) const {
  const auto& F = *field_;
  const int deg = total_degree();
  if (deg < 0) return {};
  if (!is_homogeneous()) throw Error("restriction to a line requires a homogeneous polynomial");
  // powers[v][k] = (P_v s + Q_v t)^k as a binary form of degree k.
  std::array<std::vector<std::vector<Elem>>, 4> powers;
  for (int v = 0; v < nvars_; ++v) {
    const int d = std::max(0, degree_in(v));
    powers[v].resize(d + 1);
    powers[v][0] = {1};
    for (int k = 1; k <= d; ++k) {
      const auto& prev = powers[v][k - 1];
      std::vector<Elem> next(k + 1, 0);
      for (int i = 0; i < k; ++i) {
        next[i] = F.add(next[i], F.mul(prev[i], P[v]));
        next[i + 1] = F.add(next[i + 1], F.mul(prev[i], Q[v]));
      }
      powers[v][k] = std::move(next);
    }
  }
  std::vector<Elem> out(deg + 1, 0);
  std::vector<Elem> cur, tmp;
  for (const auto& t : terms_) {
    const auto e = unpack(t.key);
    cur.assign(1, t.coeff);
    for (int v = 0; v < nvars_; ++v) {
      if (!e[v]) continue;
      const auto& pw = powers[v][e[v]];
      tmp.assign(cur.size() + pw.size() - 1, 0);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] == 0) continue;
        for (std::size_t j = 0; j < pw.size(); ++j) tmp[i + j] = F.add(tmp[i + j], F.mul(cur[i], pw[j]));
      }
      cur.swap(tmp);
    }
    for (std::size_t i = 0; i < cur.size(); ++i) out[i] = F.add(out[i], cur[i]);
  }
  return out;
}

bool MVPoly::is_pth_power() const {
  const unsigned p = field_->p();
  for (const auto& t : terms_) {
    const auto e = unpack(t.key);
    for (int v = 0; v < 4; ++v)
      if (e[v] % p) return false;
  }
  return true;
}

MVPoly MVPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_->inv(terms_.front().coeff));
}

std::string MVPoly::to_string() const {
  if (terms_.empty()) return "0";
  const auto& F = *field_;
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    const auto e = unpack(terms_[i].key);
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      if (!e[v]) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(v + 1);
      if (e[v] > 1) mono += '^' + std::to_string(e[v]);
    }
    const Elem c = terms_[i].coeff;
    if (mono.empty()) out += F.literal(c);
    else if (c == 1) out += mono;
    else out += F.literal(c) + '*' + mono;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const Field& f, int nvars, std::string_view s) : f_(f), nvars_(nvars), s_(s) {}

  MVPoly run() {
    MVPoly acc(f_, nvars_);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      bool negate = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negate = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      MVPoly t = term();
      acc += negate ? -t : t;
      first = false;
      skip();
    }
    if (first) fail("empty polynomial");
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  unsigned number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
  }
  MVPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '[') {
      auto end = s_.find(']', pos_);
      if (end == std::string_view::npos) fail("unterminated '['");
      const Elem v = f_->parse_literal(s_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return MVPoly::constant(f_, nvars_, v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const unsigned v = number();
      return MVPoly::constant(f_, nvars_, f_->from_int(v));
    }
    if (c == 'x') {
      ++pos_;
      const unsigned idx = number();
      if (idx < 1 || static_cast<int>(idx) > nvars_) fail("variable index out of range");
      unsigned e = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        e = number();
      }
      if (e > 255) fail("exponent too large");
      Exponents ex{};
      ex[idx - 1] = static_cast<std::uint8_t>(e);
      return MVPoly::monomial(f_, nvars_, ex, 1);
    }
    if (c == '(') {
      ++pos_;
      auto close = find_close();
      Parser inner(f_, nvars_, s_.substr(pos_, close - pos_));
      MVPoly v = inner.run();
      pos_ = close + 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        v = v.pow(number());
      }
      return v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  std::size_t find_close() const {
    int depth = 1;
    for (std::size_t i = pos_; i < s_.size(); ++i) {
      if (s_[i] == '(') ++depth;
      if (s_[i] == ')' && --depth == 0) return i;
    }
    throw Error("polynomial parse error: unbalanced parentheses");
  }
  MVPoly term() {
    MVPoly t = factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      t = t * factor();
      skip();
    }
    return t;
  }

  const Field& f_;
  int nvars_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MVPoly MVPoly::parse(Field f, int nvars, std::string_view text) {
  check_nvars(nvars);
  return Parser(f, nvars, text).run();
}

}  // namespace ql
