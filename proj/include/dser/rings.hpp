#pragma once

// Exact commutative rings: Z, Q, Z/n (n odd), Laurent polynomials, principal
// localizations R_s and univariate polynomial extensions R[X].
//
// Every element is stored in a canonical form, so structural equality is ring
// equality. Values are immutable; compound payloads are shared.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dser/error.hpp"

namespace dser {

class RingDescriptor;
using Ring = std::shared_ptr<const RingDescriptor>;

struct LaurentPoly;
struct LocalFraction;
struct UniPoly;

enum class RingKind { Integers, Rationals, Mod, Laurent, Localized, Poly };

class RingElement {
 public:
  using Payload = std::variant<mpz_class, mpq_class, std::shared_ptr<const LaurentPoly>,
                               std::shared_ptr<const LocalFraction>, std::shared_ptr<const UniPoly>>;

  RingElement() = default;

  const Ring& ring() const { return ring_; }
  const Payload& payload() const { return payload_; }
  bool valid() const { return ring_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;

  std::string to_string() const;

  friend bool operator==(const RingElement& x, const RingElement& y);

 private:
  friend class RingDescriptor;
  RingElement(Ring ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {}

  Ring ring_;
  Payload payload_;
};

struct LaurentTerm {
  std::vector<int> exponents;
  RingElement coefficient;
};

/// Terms sorted by exponent vector, coefficients nonzero.
struct LaurentPoly {
  std::vector<LaurentTerm> terms;
};

/// num / s^k with k minimal (s does not divide num when k > 0).
struct LocalFraction {
  RingElement num;
  unsigned k = 0;
};

/// Dense coefficients, constant term first, no trailing zeros.
struct UniPoly {
  std::vector<RingElement> coeffs;
};

class RingDescriptor : public std::enable_shared_from_this<RingDescriptor> {
 public:
  static Ring integers();
  static Ring rationals();
  static Ring mod(const mpz_class& modulus);
  static Ring laurent(Ring base, std::vector<std::string> vars, const std::vector<std::string>& invertible);
  static Ring localized(Ring base, const RingElement& s);
  static Ring poly(Ring base, std::string var);

  RingKind kind() const { return kind_; }
  const Ring& base() const { return base_; }
  const mpz_class& modulus() const { return modulus_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<bool>& invertible() const { return invertible_; }
  const RingElement& s() const { return s_; }
  const std::string& var() const { return vars_.front(); }
  /// For Localized(Mod n, s): the part of n coprime to s, i.e. R_s = Z/n'.
  const mpz_class& local_modulus() const { return local_modulus_; }

  /// Descriptor grammar: Z, Q, Zmod:9, laurent:Q:[a,u]:inv=[u], loc:Z:s=2, poly:Z:X.
  std::string to_string() const;
  bool same_as(const RingDescriptor& other) const;

  /// Declared local: Q, or Z/p^k with p an odd prime.
  bool is_local() const;
  /// In a local ring, whether x lies outside the maximal ideal.
  bool residue_is_unit(const RingElement& x) const;

  RingElement zero() const;
  RingElement one() const;
  RingElement from_integer(const mpz_class& value) const;
  RingElement from_integer(long value) const { return from_integer(mpz_class(value)); }
  /// Integer over Rationals, reduced residue over Mod; throws NotDivisible elsewhere.
  RingElement from_rational(const mpq_class& value) const;
  /// Generator named `name` found anywhere in the tower, embedded here.
  RingElement variable(const std::string& name) const;
  std::optional<RingElement> try_variable(const std::string& name) const;

  /// Image of a base-ring element (Laurent, Localized, Poly only).
  RingElement embed_from_base(const RingElement& x) const;

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement sub(const RingElement& x, const RingElement& y) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;
  RingElement neg(const RingElement& x) const;
  RingElement pow(const RingElement& x, long e) const;
  std::optional<RingElement> try_inv(const RingElement& x) const;
  RingElement inv(const RingElement& x) const;
  /// x / c for an integer c, exact; throws NotDivisible when no quotient exists.
  RingElement divide_by_integer(const RingElement& x, const mpz_class& c) const;

  // Constructors from canonical payload parts; used by the arithmetic layer.
  RingElement make_laurent(std::vector<LaurentTerm> terms) const;
  RingElement make_local(RingElement num, unsigned k) const;
  RingElement make_poly(std::vector<RingElement> coeffs) const;

 private:
  struct Token {};

 public:
  RingDescriptor(Token, RingKind kind) : kind_(kind) {}

 private:
  Ring self() const { return shared_from_this(); }
  void check(const RingElement& x) const;
  RingElement canonical_int(mpz_class v) const;
  RingElement local_from_parts(RingElement num, unsigned k) const;

  RingKind kind_;
  Ring base_;
  mpz_class modulus_;
  mpz_class local_modulus_;
  std::vector<std::string> vars_;
  std::vector<bool> invertible_;
  RingElement s_;
};

bool same_ring(const Ring& a, const Ring& b);

RingElement operator+(const RingElement& x, const RingElement& y);
RingElement operator-(const RingElement& x, const RingElement& y);
RingElement operator*(const RingElement& x, const RingElement& y);
RingElement operator-(const RingElement& x);
inline bool operator!=(const RingElement& x, const RingElement& y) { return !(x == y); }

RingElement ring_add(const RingElement& x, const RingElement& y);
RingElement ring_mul(const RingElement& x, const RingElement& y);
RingElement ring_neg(const RingElement& x);
RingElement ring_inv(const RingElement& x);
std::optional<RingElement> try_ring_inv(const RingElement& x);
bool is_unit(const RingElement& x);
RingElement half(const RingElement& x);

/// Canonical map R -> R_s; `target` must be Localized with base R.
RingElement localize(const RingElement& x, const Ring& target);

/// For x in R_s: the minimal k with s^k x in the image of R, and that preimage.
std::pair<unsigned, RingElement> clear_denominator_power(const RingElement& x);

/// Evaluation homomorphism X |-> image applied to p in Poly(R, X).
RingElement poly_substitute(const RingElement& p, const RingElement& image);

/// Coefficients of p in Poly(R, X), constant term first.
std::vector<RingElement> poly_coefficients(const RingElement& p);

/// Image of x under the chain of canonical maps from x's ring into `target`
/// (base-into-extension along the tower, and Z -> Q).
RingElement lift(const RingElement& x, const Ring& target);

/// Parse a descriptor string (see RingDescriptor::to_string).
Ring parse_ring(const std::string& text);
/// Parse an element literal such as `3*a^2*u^-1 + 1/2` in `ring`.
RingElement parse_element(const Ring& ring, const std::string& text);

}  // namespace dser
