#pragma once

// Finite fields F_{p^n} with table-driven arithmetic.
//
// Elements are packed integers: the coefficient vector (c_0, ..., c_{n-1}) of
// the residue class modulo the defining polynomial is stored as
// c_0 + c_1 p + ... + c_{n-1} p^{n-1}.  Zero is 0 and one is 1, so the
// enumeration order 0, 1, ..., q-1 starts with zero.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ql {

/// Error raised for invalid input or violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

class FieldCtx;
using Field = std::shared_ptr<const FieldCtx>;

class FieldCtx {
 public:
  struct Token {};
  FieldCtx(Token, unsigned p, unsigned n, std::vector<unsigned> modulus);

  unsigned p() const { return p_; }
  unsigned n() const { return n_; }
  Elem order() const { return q_; }
  /// Monic defining polynomial, coefficients low-to-high (length n + 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  /// A generator of the multiplicative group.
  Elem primitive() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const {
    if (full_tables_) return add_tab_[static_cast<std::size_t>(a) * q_ + b];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (full_tables_) return mul_tab_[static_cast<std::size_t>(a) * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;
  std::vector<unsigned> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const unsigned> c) const;

  /// Integer literal for prime fields, "[c0,c1,...]" otherwise.
  std::string literal(Elem a) const;
  Elem parse_literal(std::string_view s) const;
  /// "p=3,n=2,mod=1,0,1"
  std::string spec() const;

  /// Throws unless q <= cap.
  void require_enumerable(std::uint64_t cap = kDefaultEnumerationCap) const;

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem add_digits(Elem a, Elem b) const;
  Elem mul_poly(Elem a, Elem b) const;

  unsigned p_;
  unsigned n_;
  Elem q_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> exp_;   // length 2(q-1), exp_[i] = g^i
  std::vector<Elem> log_;   // log_[0] unused
  std::vector<Elem> neg_;
  std::vector<std::int64_t> zech_;  // log(1 + g^i), -1 when 1 + g^i = 0
  bool full_tables_ = false;
  std::vector<Elem> add_tab_;
  std::vector<Elem> mul_tab_;
};

bool is_prime(unsigned p);
/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);
/// First monic irreducible of degree n, comparing coefficient lists
/// low-to-high lexicographically.
std::vector<unsigned> first_irreducible(unsigned p, unsigned n);

/// Returns a shared, immutable context.  Contexts are interned: equal
/// (p, modulus) pairs yield the same pointer.
Field make_field(unsigned p, unsigned n,
                 std::optional<std::vector<unsigned>> modulus = std::nullopt);
/// Parses "p=3,n=2" or "p=3,n=2,mod=1,0,1".
Field parse_field_spec(std::string_view spec);
/// F_{q^degree} with the deterministic modulus.
Field extension_field(const Field& base, unsigned degree);
/// Smallest extension of `base` with at least `min_order` elements.
Field extension_with_order(const Field& base, std::uint64_t min_order);

bool same_field(const FieldCtx& a, const FieldCtx& b);

/// Value-type element carrying its context.
class FieldElement {
 public:
  FieldElement(Field f, Elem v) : field_(std::move(f)), v_(v) {}
  static FieldElement zero(Field f) { return {std::move(f), 0}; }
  static FieldElement one(Field f) { return {std::move(f), 1}; }

  const Field& field() const { return field_; }
  Elem value() const { return v_; }
  std::vector<unsigned> coeffs() const { return field_->coeffs(v_); }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(v_)}; }
  FieldElement pow(std::int64_t e) const { return {field_, field_->pow(v_, e)}; }
  FieldElement inv() const { return {field_, field_->inv(v_)}; }
  FieldElement frobenius() const { return {field_, field_->frobenius(v_)}; }
  bool operator==(const FieldElement& o) const;

 private:
  void check(const FieldElement& o) const;
  Field field_;
  Elem v_;
};

/// All q elements, 0 first.
std::vector<FieldElement> enumerate_elements(const Field& f,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Field homomorphism small -> big determined by a root of small's modulus.
class Embedding {
 public:
  Embedding() = default;
  Embedding(Field small, Field big);

  const Field& small() const { return small_; }
  const Field& big() const { return big_; }
  Elem operator()(Elem a) const { return image_[a]; }
  FieldElement operator()(const FieldElement& a) const;
  /// Inverse image, if `b` lies in the image.
  std::optional<Elem> preimage(Elem b) const;
  bool identity() const { return small_ == big_; }

 private:
  Field small_;
  Field big_;
  std::vector<Elem> image_;
  std::vector<std::int64_t> preimage_;
};

/// Cached; the reference stays valid for the life of the process.
const Embedding& embed(const Field& small, const Field& big);

}  // namespace ql
