#include "dser/rings.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dser {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::OrderingMismatch: return "OrderingMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotHyperbolicForm: return "NotHyperbolicForm";
    case ErrorKind::SamePlane: return "SamePlane";
    case ErrorKind::IsotropicVector: return "IsotropicVector";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotLocalRing: return "NotLocalRing";
    case ErrorKind::UnsupportedConjugator: return "UnsupportedConjugator";
    case ErrorKind::NonIntegralConjugator: return "NonIntegralConjugator";
    case ErrorKind::NotComaximal: return "NotComaximal";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

mpz_class mod_floor(const mpz_class& v, const mpz_class& n) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  return r;
}

mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Splits |a| = s_part * rest where every prime of s_part divides s and rest is coprime to s.
std::pair<mpz_class, mpz_class> split_by(const mpz_class& a, const mpz_class& s) {
  mpz_class rest = abs(a);
  mpz_class s_part = 1;
  for (;;) {
    mpz_class g = gcd(rest, s);
    if (g <= 1) break;
    rest /= g;
    s_part *= g;
  }
  return {s_part, rest};
}

const mpz_class& as_int(const RingElement& x) { return std::get<mpz_class>(x.payload()); }
const mpq_class& as_rat(const RingElement& x) { return std::get<mpq_class>(x.payload()); }
const LaurentPoly& as_laurent(const RingElement& x) {
  return *std::get<std::shared_ptr<const LaurentPoly>>(x.payload());
}
const LocalFraction& as_local(const RingElement& x) {
  return *std::get<std::shared_ptr<const LocalFraction>>(x.payload());
}
const UniPoly& as_poly(const RingElement& x) { return *std::get<std::shared_ptr<const UniPoly>>(x.payload()); }

bool needs_parens(const std::string& s) { return s.find(' ') != std::string::npos; }

std::string term_string(const std::string& coeff, const std::string& monomial) {
  if (monomial.empty()) return coeff;
  if (coeff == "1") return monomial;
  if (coeff == "-1") return "-" + monomial;
  if (needs_parens(coeff)) return "(" + coeff + ")*" + monomial;
  return coeff + "*" + monomial;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const std::string& t = terms[i];
    if (!t.empty() && t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out;
}

}  // namespace

bool same_ring(const Ring& a, const Ring& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------------------
// RingElement

bool operator==(const RingElement& x, const RingElement& y) {
  if (!same_ring(x.ring_, y.ring_)) return false;
  if (x.payload_.index() != y.payload_.index()) return false;
  switch (x.payload_.index()) {
    case 0: return as_int(x) == as_int(y);
    case 1: return as_rat(x) == as_rat(y);
    case 2: {
      const auto& a = as_laurent(x).terms;
      const auto& b = as_laurent(y).terms;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].exponents != b[i].exponents || !(a[i].coefficient == b[i].coefficient)) return false;
      return true;
    }
    case 3: {
      const auto& a = as_local(x);
      const auto& b = as_local(y);
      return a.k == b.k && a.num == b.num;
    }
    case 4: {
      const auto& a = as_poly(x).coeffs;
      const auto& b = as_poly(y).coeffs;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
      return true;
    }
  }
  return false;
}

bool RingElement::is_zero() const {
  switch (payload_.index()) {
    case 0: return as_int(*this) == 0;
    case 1: return as_rat(*this) == 0;
    case 2: return as_laurent(*this).terms.empty();
    case 3: return as_local(*this).num.is_zero();
    case 4: return as_poly(*this).coeffs.empty();
  }
  return false;
}

bool RingElement::is_one() const { return ring_ && *this == ring_->one(); }

std::string RingElement::to_string() const {
  if (!ring_) return "<invalid>";
  switch (ring_->kind()) {
    case RingKind::Integers:
    case RingKind::Mod: return as_int(*this).get_str();
    case RingKind::Rationals: return as_rat(*this).get_str();
    case RingKind::Laurent: {
      std::vector<std::string> terms;
      const auto& vars = ring_->vars();
      for (const auto& t : as_laurent(*this).terms) {
        std::string mono;
        for (std::size_t i = 0; i < vars.size(); ++i) {
          int e = t.exponents[i];
          if (e == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += vars[i];
          if (e != 1) mono += "^" + std::to_string(e);
        }
        terms.push_back(term_string(t.coefficient.to_string(), mono));
      }
      return join_terms(terms);
    }
    case RingKind::Localized: {
      const auto& f = as_local(*this);
      if (ring_->base()->kind() != RingKind::Integers || f.k == 0) return f.num.to_string();
      mpz_class num = as_int(f.num);
      mpz_class den = ipow(as_int(ring_->s()), f.k);
      if (den < 0) {
        den = -den;
        num = -num;
      }
      return num.get_str() + "/" + den.get_str();
    }
    case RingKind::Poly: {
      std::vector<std::string> terms;
      const auto& c = as_poly(*this).coeffs;
      for (std::size_t d = c.size(); d-- > 0;) {
        if (c[d].is_zero()) continue;
        std::string mono;
        if (d >= 1) mono = ring_->var();
        if (d >= 2) mono += "^" + std::to_string(d);
        terms.push_back(term_string(c[d].to_string(), mono));
      }
      return join_terms(terms);
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Descriptor construction

Ring RingDescriptor::integers() {
  static const Ring z = std::make_shared<RingDescriptor>(Token{}, RingKind::Integers);
  return z;
}

Ring RingDescriptor::rationals() {
  static const Ring q = std::make_shared<RingDescriptor>(Token{}, RingKind::Rationals);
  return q;
}

Ring RingDescriptor::mod(const mpz_class& modulus) {
  if (modulus <= 0 || mpz_even_p(modulus.get_mpz_t()))
    throw Error(ErrorKind::PreconditionViolated, "modulus must be a positive odd integer", modulus.get_str());
  auto r = std::make_shared<RingDescriptor>(Token{}, RingKind::Mod);
  r->modulus_ = modulus;
  return r;
}

Ring RingDescriptor::laurent(Ring base, std::vector<std::string> vars, const std::vector<std::string>& invertible) {
  if (vars.empty()) throw Error(ErrorKind::PreconditionViolated, "Laurent ring needs at least one variable");
  auto r = std::make_shared<RingDescriptor>(Token{}, RingKind::Laurent);
  r->base_ = std::move(base);
  for (const auto& name : invertible)
    if (std::find(vars.begin(), vars.end(), name) == vars.end())
      throw Error(ErrorKind::PreconditionViolated, "invertible variable not in variable list", name);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error(ErrorKind::PreconditionViolated, "duplicate variable", vars[i]);
  r->invertible_.resize(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    r->invertible_[i] = std::find(invertible.begin(), invertible.end(), vars[i]) != invertible.end();
  r->vars_ = std::move(vars);
  return r;
}

Ring RingDescriptor::localized(Ring base, const RingElement& s) {
  if (!same_ring(s.ring(), base)) throw Error(ErrorKind::DescriptorMismatch, "localizing element not in base ring");
  auto r = std::make_shared<RingDescriptor>(Token{}, RingKind::Localized);
  switch (base->kind()) {
    case RingKind::Integers:
      if (s.is_zero()) throw Error(ErrorKind::PreconditionViolated, "s is nilpotent", "0");
      break;
    case RingKind::Rationals:
      if (s.is_zero()) throw Error(ErrorKind::PreconditionViolated, "s is nilpotent", "0");
      break;
    case RingKind::Mod: {
      mpz_class rest = base->modulus();
      for (;;) {
        mpz_class g = gcd(rest, as_int(s));
        if (g <= 1) break;
        rest /= g;
      }
      if (rest == 1) throw Error(ErrorKind::PreconditionViolated, "s is nilpotent", s.to_string());
      r->local_modulus_ = rest;
      break;
    }
    default:
      throw Error(ErrorKind::Unsupported, "localization is implemented over Z, Q and Z/n only");
  }
  r->base_ = std::move(base);
  r->s_ = s;
  return r;
}

Ring RingDescriptor::poly(Ring base, std::string var) {
  auto r = std::make_shared<RingDescriptor>(Token{}, RingKind::Poly);
  r->base_ = std::move(base);
  r->vars_ = {std::move(var)};
  return r;
}

std::string RingDescriptor::to_string() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::Mod: return "Zmod:" + modulus_.get_str();
    case RingKind::Laurent: {
      std::string out = "laurent:" + base_->to_string() + ":[";
      std::string inv;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        out += (i ? "," : "") + vars_[i];
        if (invertible_[i]) inv += (inv.empty() ? "" : ",") + vars_[i];
      }
      return out + "]:inv=[" + inv + "]";
    }
    case RingKind::Localized: return "loc:" + base_->to_string() + ":s=" + s_.to_string();
    case RingKind::Poly: return "poly:" + base_->to_string() + ":" + vars_.front();
  }
  return "?";
}

bool RingDescriptor::same_as(const RingDescriptor& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Rationals: return true;
    case RingKind::Mod: return modulus_ == o.modulus_;
    case RingKind::Laurent:
      return vars_ == o.vars_ && invertible_ == o.invertible_ && base_->same_as(*o.base_);
    case RingKind::Localized: return base_->same_as(*o.base_) && s_ == o.s_;
    case RingKind::Poly: return vars_ == o.vars_ && base_->same_as(*o.base_);
  }
  return false;
}

bool RingDescriptor::is_local() const {
  switch (kind_) {
    case RingKind::Rationals: return true;
    case RingKind::Mod: {
      if (modulus_ == 1) return false;
      for (unsigned long k = 1; k <= mpz_sizeinbase(modulus_.get_mpz_t(), 2); ++k) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), modulus_.get_mpz_t(), k) != 0 &&
            mpz_probab_prime_p(root.get_mpz_t(), 30) > 0)
          return true;
      }
      return false;
    }
    default: return false;
  }
}

bool RingDescriptor::residue_is_unit(const RingElement& x) const {
  check(x);
  if (!is_local()) throw Error(ErrorKind::NotLocalRing, "residue test needs a local ring", to_string());
  return try_inv(x).has_value();
}

void RingDescriptor::check(const RingElement& x) const {
  if (!x.ring_ || !(x.ring_.get() == this || x.ring_->same_as(*this)))
    throw Error(ErrorKind::DescriptorMismatch,
                "element of " + (x.ring_ ? x.ring_->to_string() : std::string("<none>")) + " used in " + to_string());
}

// ---------------------------------------------------------------------------
// Element construction

RingElement RingDescriptor::canonical_int(mpz_class v) const {
  if (kind_ == RingKind::Mod) v = mod_floor(v, modulus_);
  return RingElement(self(), std::move(v));
}

RingElement RingDescriptor::make_laurent(std::vector<LaurentTerm> terms) const {
  std::sort(terms.begin(), terms.end(),
            [](const LaurentTerm& a, const LaurentTerm& b) { return a.exponents < b.exponents; });
  std::vector<LaurentTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coefficient = base_->add(out.back().coefficient, t.coefficient);
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const LaurentTerm& t) { return t.coefficient.is_zero(); }),
            out.end());
  for (const auto& t : out)
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (t.exponents[i] < 0 && !invertible_[i])
        throw Error(ErrorKind::NotAUnit, "negative power of non-invertible variable", vars_[i]);
  auto p = std::make_shared<LaurentPoly>();
  p->terms = std::move(out);
  return RingElement(self(), std::shared_ptr<const LaurentPoly>(std::move(p)));
}

RingElement RingDescriptor::local_from_parts(RingElement num, unsigned k) const {
  base_->check(num);
  auto f = std::make_shared<LocalFraction>();
  switch (base_->kind()) {
    case RingKind::Integers: {
      mpz_class a = as_int(num);
      const mpz_class& s = as_int(s_);
      if (a == 0) k = 0;
      while (k > 0 && mpz_divisible_p(a.get_mpz_t(), s.get_mpz_t())) {
        a /= s;
        --k;
      }
      f->num = base_->from_integer(a);
      f->k = k;
      break;
    }
    case RingKind::Mod: {
      mpz_class a = mod_floor(as_int(num), local_modulus_);
      if (k > 0) {
        mpz_class sinv;
        mpz_invert(sinv.get_mpz_t(), as_int(s_).get_mpz_t(), local_modulus_.get_mpz_t());
        mpz_class scale;
        mpz_powm_ui(scale.get_mpz_t(), sinv.get_mpz_t(), k, local_modulus_.get_mpz_t());
        a = mod_floor(a * scale, local_modulus_);
      }
      f->num = base_->from_integer(a);
      f->k = 0;
      break;
    }
    case RingKind::Rationals: {
      mpq_class a = as_rat(num);
      for (unsigned i = 0; i < k; ++i) a /= as_rat(s_);
      f->num = base_->from_rational(a);
      f->k = 0;
      break;
    }
    default: throw Error(ErrorKind::Unsupported, "localization base");
  }
  return RingElement(self(), std::shared_ptr<const LocalFraction>(std::move(f)));
}

RingElement RingDescriptor::make_local(RingElement num, unsigned k) const { return local_from_parts(std::move(num), k); }

RingElement RingDescriptor::make_poly(std::vector<RingElement> coeffs) const {
  for (const auto& c : coeffs) base_->check(c);
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  auto p = std::make_shared<UniPoly>();
  p->coeffs = std::move(coeffs);
  return RingElement(self(), std::shared_ptr<const UniPoly>(std::move(p)));
}

RingElement RingDescriptor::zero() const { return from_integer(0); }
RingElement RingDescriptor::one() const { return from_integer(1); }

RingElement RingDescriptor::from_integer(const mpz_class& value) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Mod: return canonical_int(value);
    case RingKind::Rationals: return RingElement(self(), mpq_class(value));
    case RingKind::Laurent: {
      std::vector<LaurentTerm> terms;
      if (value != 0) terms.push_back({std::vector<int>(vars_.size(), 0), base_->from_integer(value)});
      return make_laurent(std::move(terms));
    }
    case RingKind::Localized: return local_from_parts(base_->from_integer(value), 0);
    case RingKind::Poly: return make_poly({base_->from_integer(value)});
  }
  throw Error(ErrorKind::Unsupported, "from_integer");
}

RingElement RingDescriptor::from_rational(const mpq_class& value) const {
  if (kind_ == RingKind::Rationals) {
    mpq_class v = value;
    v.canonicalize();
    return RingElement(self(), v);
  }
  return divide_by_integer(from_integer(value.get_num()), value.get_den());
}

std::optional<RingElement> RingDescriptor::try_variable(const std::string& name) const {
  switch (kind_) {
    case RingKind::Laurent: {
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) {
          std::vector<int> e(vars_.size(), 0);
          e[i] = 1;
          return make_laurent({{e, base_->one()}});
        }
      }
      break;
    }
    case RingKind::Poly:
      if (vars_.front() == name) return make_poly({base_->zero(), base_->one()});
      break;
    default: break;
  }
  if (base_) {
    if (auto v = base_->try_variable(name)) return embed_from_base(*v);
  }
  return std::nullopt;
}

RingElement RingDescriptor::variable(const std::string& name) const {
  if (auto v = try_variable(name)) return *v;
  throw Error(ErrorKind::Parse, "unknown variable '" + name + "' in " + to_string(), name);
}

RingElement RingDescriptor::embed_from_base(const RingElement& x) const {
  if (!base_) throw Error(ErrorKind::Unsupported, "ring has no base: " + to_string());
  base_->check(x);
  switch (kind_) {
    case RingKind::Laurent: {
      std::vector<LaurentTerm> terms;
      if (!x.is_zero()) terms.push_back({std::vector<int>(vars_.size(), 0), x});
      return make_laurent(std::move(terms));
    }
    case RingKind::Localized: return local_from_parts(x, 0);
    case RingKind::Poly: return make_poly({x});
    default: break;
  }
  throw Error(ErrorKind::Unsupported, "embed_from_base");
}

// ---------------------------------------------------------------------------
// Arithmetic

RingElement RingDescriptor::add(const RingElement& x, const RingElement& y) const {
  check(x);
  check(y);
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Mod: return canonical_int(as_int(x) + as_int(y));
    case RingKind::Rationals: return RingElement(self(), mpq_class(as_rat(x) + as_rat(y)));
    case RingKind::Laurent: {
      const auto& a = as_laurent(x).terms;
      const auto& b = as_laurent(y).terms;
      std::vector<LaurentTerm> out;
      out.reserve(a.size() + b.size());
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exponents < b[j].exponents)) {
          out.push_back(a[i++]);
        } else if (i == a.size() || b[j].exponents < a[i].exponents) {
          out.push_back(b[j++]);
        } else {
          RingElement c = base_->add(a[i].coefficient, b[j].coefficient);
          if (!c.is_zero()) out.push_back({a[i].exponents, std::move(c)});
          ++i;
          ++j;
        }
      }
      auto p = std::make_shared<LaurentPoly>();
      p->terms = std::move(out);
      return RingElement(self(), std::shared_ptr<const LaurentPoly>(std::move(p)));
    }
    case RingKind::Localized: {
      const auto& a = as_local(x);
      const auto& b = as_local(y);
      unsigned k = std::max(a.k, b.k);
      RingElement sa = base_->pow(s_, k - a.k);
      RingElement sb = base_->pow(s_, k - b.k);
      return local_from_parts(base_->add(base_->mul(a.num, sa), base_->mul(b.num, sb)), k);
    }
    case RingKind::Poly: {
      const auto& a = as_poly(x).coeffs;
      const auto& b = as_poly(y).coeffs;
      std::vector<RingElement> c(std::max(a.size(), b.size()));
      for (std::size_t d = 0; d < c.size(); ++d) {
        if (d < a.size() && d < b.size())
          c[d] = base_->add(a[d], b[d]);
        else
          c[d] = d < a.size() ? a[d] : b[d];
      }
      return make_poly(std::move(c));
    }
  }
  throw Error(ErrorKind::Unsupported, "add");
}

RingElement RingDescriptor::neg(const RingElement& x) const {
  check(x);
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Mod: return canonical_int(-as_int(x));
    case RingKind::Rationals: return RingElement(self(), mpq_class(-as_rat(x)));
    case RingKind::Laurent: {
      auto p = std::make_shared<LaurentPoly>(as_laurent(x));
      for (auto& t : p->terms) t.coefficient = base_->neg(t.coefficient);
      return RingElement(self(), std::shared_ptr<const LaurentPoly>(std::move(p)));
    }
    case RingKind::Localized: {
      const auto& a = as_local(x);
      return local_from_parts(base_->neg(a.num), a.k);
    }
    case RingKind::Poly: {
      std::vector<RingElement> c = as_poly(x).coeffs;
      for (auto& v : c) v = base_->neg(v);
      return make_poly(std::move(c));
    }
  }
  throw Error(ErrorKind::Unsupported, "neg");
}

RingElement RingDescriptor::sub(const RingElement& x, const RingElement& y) const { return add(x, neg(y)); }

RingElement RingDescriptor::mul(const RingElement& x, const RingElement& y) const {
  check(x);
  check(y);
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::Mod: return canonical_int(as_int(x) * as_int(y));
    case RingKind::Rationals: return RingElement(self(), mpq_class(as_rat(x) * as_rat(y)));
    case RingKind::Laurent: {
      const auto& a = as_laurent(x).terms;
      const auto& b = as_laurent(y).terms;
      if (a.empty() || b.empty()) return zero();
      std::map<std::vector<int>, RingElement> acc;
      std::vector<int> e(vars_.size());
      for (const auto& ta : a) {
        for (const auto& tb : b) {
          for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exponents[i] + tb.exponents[i];
          RingElement c = base_->mul(ta.coefficient, tb.coefficient);
          auto it = acc.find(e);
          if (it == acc.end())
            acc.emplace(e, std::move(c));
          else
            it->second = base_->add(it->second, c);
        }
      }
      auto p = std::make_shared<LaurentPoly>();
      p->terms.reserve(acc.size());
      for (auto& [exps, c] : acc)
        if (!c.is_zero()) p->terms.push_back({exps, std::move(c)});
      return RingElement(self(), std::shared_ptr<const LaurentPoly>(std::move(p)));
    }
    case RingKind::Localized: {
      const auto& a = as_local(x);
      const auto& b = as_local(y);
      return local_from_parts(base_->mul(a.num, b.num), a.k + b.k);
    }
    case RingKind::Poly: {
      const auto& a = as_poly(x).coeffs;
      const auto& b = as_poly(y).coeffs;
      if (a.empty() || b.empty()) return zero();
      std::vector<RingElement> c(a.size() + b.size() - 1, base_->zero());
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (b[j].is_zero()) continue;
          c[i + j] = base_->add(c[i + j], base_->mul(a[i], b[j]));
        }
      }
      return make_poly(std::move(c));
    }
  }
  throw Error(ErrorKind::Unsupported, "mul");
}

RingElement RingDescriptor::pow(const RingElement& x, long e) const {
  check(x);
  RingElement b = e < 0 ? inv(x) : x;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  RingElement r = one();
  while (n > 0) {
    if (n & 1UL) r = mul(r, b);
    n >>= 1;
    if (n > 0) b = mul(b, b);
  }
  return r;
}

std::optional<RingElement> RingDescriptor::try_inv(const RingElement& x) const {
  check(x);
  switch (kind_) {
    case RingKind::Integers: {
      const mpz_class& v = as_int(x);
      if (v == 1 || v == -1) return x;
      return std::nullopt;
    }
    case RingKind::Mod: {
      mpz_class r;
      if (mpz_invert(r.get_mpz_t(), as_int(x).get_mpz_t(), modulus_.get_mpz_t()) == 0) return std::nullopt;
      return canonical_int(r);
    }
    case RingKind::Rationals:
      if (as_rat(x) == 0) return std::nullopt;
      return RingElement(self(), mpq_class(1 / as_rat(x)));
    case RingKind::Laurent: {
      const auto& t = as_laurent(x).terms;
      if (t.size() != 1) return std::nullopt;
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (t[0].exponents[i] != 0 && !invertible_[i]) return std::nullopt;
      auto c = base_->try_inv(t[0].coefficient);
      if (!c) return std::nullopt;
      std::vector<int> e = t[0].exponents;
      for (auto& v : e) v = -v;
      return make_laurent({{e, *c}});
    }
    case RingKind::Localized: {
      const auto& f = as_local(x);
      if (base_->kind() == RingKind::Integers) {
        const mpz_class& a = as_int(f.num);
        const mpz_class& s = as_int(s_);
        if (a == 0) return std::nullopt;
        auto [s_part, rest] = split_by(a, s);
        if (rest != 1) return std::nullopt;
        unsigned e = 0;
        mpz_class se = 1;
        while (!mpz_divisible_p(se.get_mpz_t(), s_part.get_mpz_t())) {
          se *= s;
          ++e;
        }
        mpz_class num = ipow(s, f.k) * (se / s_part);
        if (a < 0) num = -num;
        return local_from_parts(base_->from_integer(num), e);
      }
      if (base_->kind() == RingKind::Mod) {
        mpz_class r;
        if (mpz_invert(r.get_mpz_t(), as_int(f.num).get_mpz_t(), local_modulus_.get_mpz_t()) == 0)
          return std::nullopt;
        return local_from_parts(base_->from_integer(r), 0);
      }
      auto c = base_->try_inv(f.num);
      if (!c) return std::nullopt;
      return local_from_parts(*c, 0);
    }
    case RingKind::Poly: {
      const auto& c = as_poly(x).coeffs;
      if (c.size() != 1) return std::nullopt;
      auto i = base_->try_inv(c[0]);
      if (!i) return std::nullopt;
      return make_poly({*i});
    }
  }
  return std::nullopt;
}

RingElement RingDescriptor::inv(const RingElement& x) const {
  if (auto r = try_inv(x)) return *r;
  std::string witness = x.to_string();
  if (kind_ == RingKind::Mod) witness = mpz_class(gcd(as_int(x), modulus_)).get_str();
  if (kind_ == RingKind::Laurent && as_laurent(x).terms.size() != 1) witness = "non-monomial: " + x.to_string();
  throw Error(ErrorKind::NotAUnit, x.to_string() + " is not a unit in " + to_string(), witness);
}

RingElement RingDescriptor::divide_by_integer(const RingElement& x, const mpz_class& c) const {
  check(x);
  if (c == 0) throw Error(ErrorKind::NotDivisible, "division by zero");
  switch (kind_) {
    case RingKind::Integers: {
      if (!mpz_divisible_p(as_int(x).get_mpz_t(), c.get_mpz_t()))
        throw Error(ErrorKind::NotDivisible, x.to_string() + " is not divisible by " + c.get_str() + " in Z");
      return canonical_int(as_int(x) / c);
    }
    case RingKind::Rationals: return RingElement(self(), mpq_class(as_rat(x) / mpq_class(c)));
    case RingKind::Mod: {
      auto ci = try_inv(from_integer(c));
      if (!ci) throw Error(ErrorKind::NotAUnit, c.get_str() + " is not a unit in " + to_string(), c.get_str());
      return mul(x, *ci);
    }
    case RingKind::Laurent: {
      std::vector<LaurentTerm> terms = as_laurent(x).terms;
      for (auto& t : terms) t.coefficient = base_->divide_by_integer(t.coefficient, c);
      return make_laurent(std::move(terms));
    }
    case RingKind::Poly: {
      std::vector<RingElement> coeffs = as_poly(x).coeffs;
      for (auto& v : coeffs) v = base_->divide_by_integer(v, c);
      return make_poly(std::move(coeffs));
    }
    case RingKind::Localized: {
      if (base_->kind() == RingKind::Integers) {
        const auto& f = as_local(x);
        auto [s_part, rest] = split_by(c, as_int(s_));
        const mpz_class& a = as_int(f.num);
        if (!mpz_divisible_p(a.get_mpz_t(), rest.get_mpz_t()))
          throw Error(ErrorKind::NotDivisible, x.to_string() + " is not divisible by " + c.get_str() + " in " +
                                                   to_string());
        RingElement q = local_from_parts(base_->from_integer(a / rest), f.k);
        RingElement unit = inv(from_integer(c < 0 ? mpz_class(-s_part) : s_part));
        return mul(q, unit);
      }
      auto ci = try_inv(from_integer(c));
      if (!ci) throw Error(ErrorKind::NotAUnit, c.get_str() + " is not a unit in " + to_string(), c.get_str());
      return mul(x, *ci);
    }
  }
  throw Error(ErrorKind::Unsupported, "divide_by_integer");
}

// ---------------------------------------------------------------------------
// Free functions

RingElement operator+(const RingElement& x, const RingElement& y) { return x.ring()->add(x, y); }
RingElement operator-(const RingElement& x, const RingElement& y) { return x.ring()->sub(x, y); }
RingElement operator*(const RingElement& x, const RingElement& y) { return x.ring()->mul(x, y); }
RingElement operator-(const RingElement& x) { return x.ring()->neg(x); }

RingElement ring_add(const RingElement& x, const RingElement& y) { return x + y; }
RingElement ring_mul(const RingElement& x, const RingElement& y) { return x * y; }
RingElement ring_neg(const RingElement& x) { return -x; }
RingElement ring_inv(const RingElement& x) { return x.ring()->inv(x); }
std::optional<RingElement> try_ring_inv(const RingElement& x) { return x.ring()->try_inv(x); }
bool is_unit(const RingElement& x) { return x.ring()->try_inv(x).has_value(); }
RingElement half(const RingElement& x) { return x.ring()->divide_by_integer(x, 2); }

RingElement localize(const RingElement& x, const Ring& target) {
  if (target->kind() != RingKind::Localized)
    throw Error(ErrorKind::DescriptorMismatch, "localize target is not a localization: " + target->to_string());
  if (!same_ring(x.ring(), target->base()))
    throw Error(ErrorKind::DescriptorMismatch,
                "localize: " + x.ring()->to_string() + " is not the base of " + target->to_string());
  return target->embed_from_base(x);
}

std::pair<unsigned, RingElement> clear_denominator_power(const RingElement& x) {
  if (x.ring()->kind() != RingKind::Localized)
    throw Error(ErrorKind::DescriptorMismatch, "clear_denominator_power needs an element of a localization");
  const auto& f = as_local(x);
  return {f.k, f.num};
}

std::vector<RingElement> poly_coefficients(const RingElement& p) {
  if (p.ring()->kind() != RingKind::Poly) throw Error(ErrorKind::DescriptorMismatch, "not a polynomial");
  return as_poly(p).coeffs;
}

RingElement poly_substitute(const RingElement& p, const RingElement& image) {
  const auto& coeffs = poly_coefficients(p);
  const Ring& target = image.ring();
  RingElement acc = target->zero();
  for (std::size_t d = coeffs.size(); d-- > 0;) acc = target->add(target->mul(acc, image), lift(coeffs[d], target));
  return acc;
}

RingElement lift(const RingElement& x, const Ring& target) {
  if (same_ring(x.ring(), target)) return x;
  if (target->kind() == RingKind::Rationals && x.ring()->kind() == RingKind::Integers)
    return target->from_integer(std::get<mpz_class>(x.payload()));
  if (target->base()) return target->embed_from_base(lift(x, target->base()));
  throw Error(ErrorKind::DescriptorMismatch, "no canonical map " + x.ring()->to_string() + " -> " + target->to_string());
}

}  // namespace dser
