#include "dser/localglobal.hpp"

namespace dser {

namespace {

void collect_params(const Letter& l, std::vector<RingElement>& out) {
  switch (l.kind) {
    case LetterKind::EAlpha:
    case LetterKind::EBetaStar:
    case LetterKind::BlockOq:
      for (std::size_t i = 0; i < l.mat.rows(); ++i)
        for (std::size_t j = 0; j < l.mat.cols(); ++j) out.push_back(l.mat(i, j));
      break;
    case LetterKind::Inverse: collect_params(*l.of, out); break;
    default: out.push_back(l.x); break;
  }
}

Letter map_letter(const Letter& l, const std::function<RingElement(const RingElement&)>& f, const Ring& target) {
  Letter r = l;
  if (l.x.valid()) r.x = f(l.x);
  if (l.mat.rows() > 0) r.mat = l.mat.map(f, target);
  if (l.of) r.of = std::make_shared<const Letter>(map_letter(*l.of, f, target));
  return r;
}

RingElement delocalize(const RingElement& x, const Ring& base) {
  auto [k, r] = clear_denominator_power(x);
  if (k != 0) throw Error(ErrorKind::NonIntegralConjugator, x.to_string() + " has a denominator", x.to_string());
  return lift(r, base);
}

AmbientForm make_base_form(const Matrix& phi, std::size_t m, Ordering ordering) {
  return AmbientForm(QuadraticSpace(phi), m, ordering);
}

}  // namespace

Letter lift_letter(const Letter& letter, const Ring& target) {
  return map_letter(letter, [&](const RingElement& x) { return lift(x, target); }, target);
}

Word lift_word(const Word& w, const Ring& target) {
  Word r;
  for (const auto& l : w.letters) r.push(lift_letter(l, target));
  return r;
}

AmbientForm lift_form(const AmbientForm& form, const Ring& target) {
  return AmbientForm(QuadraticSpace(lift(form.space().gram(), target)), form.m(), form.ordering());
}

Matrix evaluate(const Matrix& theta, const RingElement& value) {
  return theta.map([&](const RingElement& p) { return poly_substitute(p, value); }, value.ring());
}

Matrix dilate_variable(const Matrix& theta, const RingElement& c) {
  const Ring& P = theta.ring();
  if (P->kind() != RingKind::Poly) throw Error(ErrorKind::DescriptorMismatch, "expected a polynomial matrix");
  return theta.map(
      [&](const RingElement& p) {
        auto coeffs = poly_coefficients(p);
        RingElement scale = P->base()->one();
        for (auto& cd : coeffs) {
          cd = P->base()->mul(cd, scale);
          scale = P->base()->mul(scale, c);
        }
        return P->make_poly(std::move(coeffs));
      },
      P);
}

Matrix localize_poly_matrix(const Matrix& theta, const Ring& local_poly) {
  if (theta.ring()->kind() != RingKind::Poly || local_poly->kind() != RingKind::Poly)
    throw Error(ErrorKind::DescriptorMismatch, "expected polynomial rings");
  const Ring& L = local_poly->base();
  return theta.map(
      [&](const RingElement& p) {
        auto coeffs = poly_coefficients(p);
        for (auto& cd : coeffs) cd = lift(cd, L);
        return local_poly->make_poly(std::move(coeffs));
      },
      local_poly);
}

bool eval_at_zero_is_identity(const Matrix& theta) {
  if (theta.ring()->kind() != RingKind::Poly) throw Error(ErrorKind::DescriptorMismatch, "expected a polynomial matrix");
  return evaluate(theta, theta.ring()->base()->zero()).is_identity();
}

LocalizedWord::LocalizedWord(Ring base, RingElement s, Matrix phi, std::size_t m, Ordering ordering, std::string var)
    : base_(base),
      local_(RingDescriptor::localized(base, s)),
      poly_(RingDescriptor::poly(local_, var)),
      base_poly_(RingDescriptor::poly(base, var)),
      s_(std::move(s)),
      var_(std::move(var)),
      base_form_(make_base_form(phi, m, ordering)),
      poly_form_(lift_form(base_form_, poly_)) {}

Matrix LocalizedWord::matrix() const {
  Matrix M = Matrix::identity(poly_, poly_form_.dim());
  for (const auto& ll : letters) {
    Word g = lift_word(ll.conjugator, poly_);
    Letter core = lift_letter(ll.core, poly_);
    M = M * word_matrix(g, poly_form_) * letter_matrix(core, poly_form_) * word_matrix(inverse_word(g, poly_form_), poly_form_);
  }
  return M;
}

bool kernel_shape_check(const LocalizedWord& w) {
  for (const auto& ll : w.letters) {
    if (!ll.core.is_dser()) return false;
    std::vector<RingElement> params;
    collect_params(ll.core, params);
    for (const auto& p : params) {
      if (p.ring()->kind() != RingKind::Poly) return false;
      auto coeffs = poly_coefficients(p);
      if (!coeffs.empty() && !coeffs.front().is_zero()) return false;
    }
  }
  return eval_at_zero_is_identity(w.matrix());
}

DilationResult dilate(const LocalizedWord& w) {
  const Ring& R = w.base();
  const Ring& Rx = w.base_poly_ring();
  for (std::size_t idx = 0; idx < w.letters.size(); ++idx) {
    for (const auto& g : w.letters[idx].conjugator.letters) {
      std::vector<RingElement> params;
      collect_params(g, params);
      if (g.kind == LetterKind::Tau || g.kind == LetterKind::SigmaU) params.push_back(ring_inv(lift(g.x, w.local_ring())));
      for (const auto& p : params) {
        auto [k, r] = clear_denominator_power(lift(p, w.local_ring()));
        (void)r;
        if (k != 0)
          throw Error(ErrorKind::NonIntegralConjugator,
                      "letter " + std::to_string(idx) + ": conjugator " + g.to_string() + " has a denominator",
                      p.to_string());
      }
    }
  }

  unsigned N = 0;
  for (const auto& ll : w.letters) {
    std::vector<RingElement> params;
    collect_params(ll.core, params);
    for (const auto& p : params) {
      auto coeffs = poly_coefficients(lift(p, w.poly_ring()));
      for (std::size_t d = 0; d < coeffs.size(); ++d) {
        unsigned k = clear_denominator_power(coeffs[d]).first;
        if (k == 0) continue;
        if (d == 0)
          throw Error(ErrorKind::PreconditionViolated, "core parameter has a nonzero constant term", p.to_string());
        N = std::max<unsigned>(N, static_cast<unsigned>((k + d - 1) / d));
      }
    }
  }

  const Ring& L = w.local_ring();
  RingElement sN = L->pow(localize(w.s(), L), N);
  auto core_map = [&](const RingElement& p) {
    auto coeffs = poly_coefficients(lift(p, w.poly_ring()));
    std::vector<RingElement> out;
    RingElement scale = L->one();
    for (auto& cd : coeffs) {
      out.push_back(delocalize(L->mul(cd, scale), R));
      scale = L->mul(scale, sN);
    }
    return Rx->make_poly(std::move(out));
  };
  auto conj_map = [&](const RingElement& x) { return lift(delocalize(lift(x, L), R), Rx); };

  AmbientForm form = lift_form(w.base_form(), Rx);
  Word out;
  for (const auto& ll : w.letters) {
    Word g;
    for (const auto& l : ll.conjugator.letters) g.push(map_letter(l, conj_map, Rx));
    out.append(g);
    out.push(map_letter(ll.core, core_map, Rx));
    out.append(inverse_word(g, form));
  }
  return DilationResult{N, std::move(out), std::move(form)};
}

bool dilation_sound(const LocalizedWord& w, const DilationResult& result) {
  Matrix lhs = localize_poly_matrix(word_matrix(result.word, result.form), w.poly_ring());
  const Ring& L = w.local_ring();
  Matrix rhs = dilate_variable(w.matrix(), L->pow(localize(w.s(), L), result.N));
  return lhs == rhs;
}

std::vector<RingElement> comaximal_certificate(const Ring& base, const std::vector<RingElement>& cover) {
  if (base->kind() != RingKind::Integers && base->kind() != RingKind::Mod)
    throw Error(ErrorKind::Unsupported, "comaximality is decided over Z and Z/n only");
  std::vector<mpz_class> coeffs;
  mpz_class g = 0;
  auto step = [&](const mpz_class& s) {
    mpz_class ng, a, b;
    mpz_gcdext(ng.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    for (auto& c : coeffs) c *= a;
    coeffs.push_back(b);
    g = ng;
  };
  for (const auto& s : cover) step(std::get<mpz_class>(lift(s, base).payload()));
  if (base->kind() == RingKind::Mod) {
    step(base->modulus());
    coeffs.pop_back();
  }
  if (g != 1) {
    std::string w = g.get_str();
    throw Error(ErrorKind::NotComaximal, "cover generates the ideal (" + w + ")", w);
  }
  std::vector<RingElement> out;
  for (const auto& c : coeffs) out.push_back(base->from_integer(c));
  return out;
}

bool verify_local_membership(const Matrix& theta, const std::vector<CoverEntry>& cover) {
  if (theta.ring()->kind() != RingKind::Poly) throw Error(ErrorKind::DescriptorMismatch, "theta must be over R[X]");
  const Ring& R = theta.ring()->base();
  std::vector<RingElement> ss;
  for (const auto& c : cover) ss.push_back(c.s);
  comaximal_certificate(R, ss);
  for (const auto& c : cover) {
    if (!same_ring(c.word.base(), R) || c.word.s() != c.s) return false;
    if (!kernel_shape_check(c.word)) return false;
    if (c.word.matrix() != localize_poly_matrix(theta, c.word.poly_ring())) return false;
  }
  return true;
}

}  // namespace dser
