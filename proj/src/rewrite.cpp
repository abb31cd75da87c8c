#include "dser/rewrite.hpp"

namespace dser {

namespace {

// A DSER letter in block form: the m x n parameter and which side it acts on.
struct Piece {
  bool beta = false;
  Matrix a;
};

Piece to_piece(const Letter& letter, const AmbientForm& form) {
  const Ring& R = form.ring();
  switch (letter.kind) {
    case LetterKind::EAlpha: return {false, letter.mat};
    case LetterKind::EBetaStar: return {true, letter.mat};
    case LetterKind::EAlphaSingle: return {false, single_entry(R, form.m(), form.n(), letter.i, letter.j, letter.x)};
    case LetterKind::EBetaStarSingle:
      return {true, single_entry(R, form.m(), form.n(), letter.i, letter.j, letter.x)};
    case LetterKind::Inverse: return to_piece(structural_inverse(*letter.of, form), form);
    default: break;
  }
  throw Error(ErrorKind::PreconditionViolated, "expected a DSER letter, got " + letter.to_string());
}

// Appends the letter for `p`, as a single-entry letter when possible; identity pieces are dropped.
void emit(Word& out, const Piece& p) {
  std::size_t count = 0, ri = 0, ci = 0;
  for (std::size_t r = 0; r < p.a.rows(); ++r)
    for (std::size_t c = 0; c < p.a.cols(); ++c)
      if (!p.a(r, c).is_zero()) {
        ++count;
        ri = r;
        ci = c;
      }
  if (count == 0) return;
  if (count == 1) {
    out.push(p.beta ? Letter::beta_star_single(ri + 1, ci + 1, p.a(ri, ci))
                    : Letter::alpha_single(ri + 1, ci + 1, p.a(ri, ci)));
  } else {
    out.push(p.beta ? Letter::e_beta_star(p.a) : Letter::e_alpha(p.a));
  }
}

std::vector<std::size_t> nonzero_rows(const Matrix& a) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero()) {
        rows.push_back(r);
        break;
      }
  return rows;
}

Matrix only_row(const Matrix& a, std::size_t r) {
  Matrix out(a.ring(), a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return out;
}

Matrix without_row(const Matrix& a, std::size_t r) {
  Matrix out = a;
  for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a.ring()->zero();
  return out;
}

Matrix halved(const Matrix& a) { return a.map([](const RingElement& x) { return half(x); }, a.ring()); }

RingElement signed_power(const RingElement& u, int p) { return u.ring()->pow(u, p); }

class Conjugator {
 public:
  Conjugator(const AmbientForm& form, const RuleTable& rules) : form_(form), rules_(rules) {}

  Word run(const Letter& g, const Letter& e) {
    Piece p = to_piece(e, form_);
    switch (g.kind) {
      case LetterKind::Tau: return tau(g, p);
      case LetterKind::SigmaU: return sigma(g, p);
      case LetterKind::BlockOq: return block(g, p);
      case LetterKind::OE: return oe(g, p);
      case LetterKind::Inverse: return run(structural_inverse(*g.of, form_), e);
      case LetterKind::EAlpha:
      case LetterKind::EBetaStar:
      case LetterKind::EAlphaSingle:
      case LetterKind::EBetaStarSingle: {
        Word w;
        w.push(g);
        emit(w, p);
        w.push(structural_inverse(g, form_));
        return w;
      }
    }
    throw Error(ErrorKind::UnsupportedConjugator, "no rule for conjugator " + g.to_string());
  }

 private:
  Word tau(const Letter& g, const Piece& p) {
    letter_matrix(g, form_);
    Piece out = p;
    std::size_t r = g.plane() - 1;
    RingElement scale = signed_power(g.x, p.beta ? rules_.tau_beta_power : rules_.tau_alpha_power);
    for (std::size_t c = 0; c < out.a.cols(); ++c) out.a(r, c) = scale * out.a(r, c);
    Word w;
    emit(w, out);
    return w;
  }

  Word sigma(const Letter& g, const Piece& p) {
    letter_matrix(g, form_);
    std::size_t r = g.plane() - 1;
    Piece rest{p.beta, without_row(p.a, r)};
    Piece moved{p.beta, only_row(p.a, r)};
    Word w;
    if (moved.a.is_zero() || !rules_.sigma_swaps) {
      emit(w, p);
      return w;
    }
    const RingElement& u = g.x;
    RingElement scale = p.beta ? u : u.ring()->inv(u);
    moved.a = moved.a.scaled(scale);
    moved.beta = !p.beta;
    if (rest.a.is_zero()) {
      emit(w, moved);
      return w;
    }
    Piece h{rest.beta, halved(rest.a)};
    emit(w, h);
    emit(w, moved);
    emit(w, h);
    return w;
  }

  Word block(const Letter& g, const Piece& p) {
    letter_matrix(g, form_);
    const auto& q = form_.space();
    Matrix factor = rules_.block_uses_inverse ? q.gram_inverse() * g.mat.transpose() * q.gram() : g.mat;
    Word w;
    emit(w, Piece{p.beta, p.a * factor});
    return w;
  }

  Word oe(const Letter& g, const Piece& p) {
    const std::size_t n = form_.n();
    if (g.k() <= n || g.l() <= n) {
      if (form_.ordering() != Ordering::Interleaved || !form_.space().is_hyperbolic())
        throw Error(ErrorKind::UnsupportedConjugator,
                    "oe with a Q-block index needs hyperbolic phi: " + g.to_string());
      Word expanded = oe_to_dser(g.k(), g.l(), g.x, form_);
      Word e;
      emit(e, p);
      return conjugate_word(expanded, e, form_, rules_);
    }
    letter_matrix(g, form_);
    auto rows = nonzero_rows(p.a);
    if (rows.empty()) return {};
    if (rows.size() > 1) {
      // E_alpha = E_{r/2} E_rest E_{r/2} for a row r; conjugate each factor.
      Piece h{p.beta, halved(only_row(p.a, rows.front()))};
      Piece rest{p.beta, without_row(p.a, rows.front())};
      Word hw = oe_single_row(g, h);
      Word w = hw;
      w.append(oe(g, rest));
      w.append(hw);
      return w;
    }
    return oe_single_row(g, p);
  }

  Word oe_single_row(const Letter& g, const Piece& p) {
    const std::size_t n = form_.n(), m = form_.m();
    std::size_t r = nonzero_rows(p.a).front();
    std::size_t t = p.beta ? form_.pstar_index(r + 1) : form_.p_index(r + 1);
    std::size_t k0 = g.k() - 1, l0 = g.l() - 1;
    std::size_t sk0 = sigma_pair(g.k(), n, m) - 1, sl0 = sigma_pair(g.l(), n, m) - 1;
    std::size_t target;
    int sign;
    if (t == l0) {
      target = k0;
      sign = rules_.oe_target_sign;
    } else if (t == sk0) {
      target = sl0;
      sign = rules_.oe_partner_sign;
    } else {
      Word w;
      emit(w, p);
      return w;
    }
    const Ring& R = form_.ring();
    std::size_t offset = target - n;
    std::size_t plane = offset / 2;
    RingElement coeff = sign > 0 ? g.x : R->neg(g.x);
    Matrix d(R, m, n);
    for (std::size_t c = 0; c < n; ++c) d(plane, c) = coeff * p.a(r, c);
    Piece dp{offset % 2 == 1, d};
    Word w;
    if (rules_.oe_split_halves) {
      Piece h{dp.beta, halved(d)};
      emit(w, h);
      emit(w, p);
      emit(w, h);
    } else {
      emit(w, dp);
      emit(w, p);
    }
    return w;
  }

  const AmbientForm& form_;
  const RuleTable& rules_;
};

void require_interleaved_hyperbolic(const AmbientForm& form) {
  if (form.ordering() != Ordering::Interleaved)
    throw Error(ErrorKind::OrderingMismatch, "translation to oe needs the interleaved ordering");
  if (!form.space().is_hyperbolic()) throw Error(ErrorKind::NotHyperbolicForm, "phi is not hyperbolic");
}

}  // namespace

Letter dser_to_oe(const Letter& letter, const AmbientForm& form) {
  require_interleaved_hyperbolic(form);
  Piece p = to_piece(letter, form);
  std::size_t ri = 0, ci = 0, count = 0;
  for (std::size_t r = 0; r < p.a.rows(); ++r)
    for (std::size_t c = 0; c < p.a.cols(); ++c)
      if (!p.a(r, c).is_zero()) {
        ri = r;
        ci = c;
        ++count;
      }
  if (count > 1) throw Error(ErrorKind::PreconditionViolated, "dser_to_oe needs a single-entry letter");
  if (count == 0 && (letter.kind == LetterKind::EAlphaSingle || letter.kind == LetterKind::EBetaStarSingle)) {
    ri = letter.i - 1;
    ci = letter.j - 1;
  }
  const std::size_t n = form.n(), m = form.m();
  const std::size_t k = ri + 1, l = ci + 1;
  RingElement x = form.ring()->neg(p.a(ri, ci));
  std::size_t col = p.beta ? n + 2 * k - 1 : n + 2 * k;
  return Letter::oe(sigma_pair(l, n, m), col, x);
}

Word oe_to_dser(std::size_t k, std::size_t l, const RingElement& a, const AmbientForm& form) {
  const std::size_t n = form.n(), m = form.m();
  if (form.ordering() != Ordering::Interleaved)
    throw Error(ErrorKind::OrderingMismatch, "oe generators are defined for the interleaved ordering");
  if (k < 1 || l < 1 || k > n + 2 * m || l > n + 2 * m) throw Error(ErrorKind::OutOfRange, "oe index out of range");
  if (k >= l) throw Error(ErrorKind::PreconditionViolated, "oe requires k < l");
  if (k > n && l > n && sigma_pair(k, n, m) == l)
    throw Error(ErrorKind::SamePlane, "indices " + std::to_string(k) + "," + std::to_string(l) + " share a plane");
  const Ring& R = form.ring();
  if (k <= n || l <= n) require_interleaved_hyperbolic(form);
  if (k == sigma_pair(l, n, m)) throw Error(ErrorKind::PreconditionViolated, "oe requires k != sigma(l)");

  if (l <= n) {
    Word A{Letter::alpha_single(1, l, a)};
    Word B{Letter::beta_star_single(1, sigma_pair(k, n, m), R->one())};
    return commutator_word(A, B, form);
  }
  if (k <= n) {
    std::size_t t = l - n, i = (t + 1) / 2;
    RingElement x = R->neg(a);
    if (t % 2 == 0) return Word{Letter::alpha_single(i, sigma_pair(k, n, m), x)};
    return Word{Letter::beta_star_single(i, sigma_pair(k, n, m), x)};
  }

  // Both indices in the hyperbolic block: pick s, s' with (phi^-1)_{s s'} a unit.
  const Matrix& pinv = form.space().gram_inverse();
  std::size_t s = 0, s2 = 0;
  std::optional<RingElement> cinv;
  for (std::size_t a0 = 0; a0 < n && !cinv; ++a0)
    for (std::size_t b0 = 0; b0 < n && !cinv; ++b0)
      if (auto v = R->try_inv(pinv(a0, b0))) {
        s = a0 + 1;
        s2 = b0 + 1;
        cinv = v;
      }
  if (!cinv) throw Error(ErrorKind::PreconditionViolated, "phi^-1 has no unit entry");
  RingElement y = R->neg(*cinv);
  const std::size_t i = (k - n + 1) / 2, j = (l - n + 1) / 2;
  const bool kp = (k - n) % 2 == 1, lp = (l - n) % 2 == 1;
  Letter A = kp ? Letter::alpha_single(i, s, a) : Letter::beta_star_single(i, s, a);
  Letter B = lp ? Letter::beta_star_single(j, s2, y) : Letter::alpha_single(j, s2, y);
  return commutator_word(Word{A}, Word{B}, form);
}

RuleTable RuleTable::corrupted(const std::string& name) {
  RuleTable t;
  if (name == "tau-beta")
    t.tau_beta_power = 1;
  else if (name == "sigma-fixed")
    t.sigma_swaps = false;
  else if (name == "block-direct")
    t.block_uses_inverse = false;
  else if (name == "oe-sign")
    t.oe_target_sign = -1;
  else if (name == "oe-whole")
    t.oe_split_halves = false;
  else
    throw Error(ErrorKind::PreconditionViolated, "unknown rule fault '" + name + "'", name);
  return t;
}

std::vector<std::string> RuleTable::fault_names() {
  return {"tau-beta", "sigma-fixed", "block-direct", "oe-sign", "oe-whole"};
}

Word conjugate_letter(const Letter& g, const Letter& e, const AmbientForm& form, const RuleTable& rules) {
  return Conjugator(form, rules).run(g, e);
}

Word conjugate_word(const Word& g, const Word& e, const AmbientForm& form, const RuleTable& rules) {
  Word cur;
  for (const auto& l : e.letters) {
    if (!l.is_dser()) throw Error(ErrorKind::PreconditionViolated, "conjugated word must be DSER: " + l.to_string());
    cur.push(l);
  }
  Conjugator c(form, rules);
  for (std::size_t idx = g.size(); idx-- > 0;) {
    Word next;
    for (const auto& l : cur.letters) {
      try {
        next.append(c.run(g.letters[idx], l));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::UnsupportedConjugator) throw;
        throw Error(ErrorKind::UnsupportedConjugator, "conjugator letter " + std::to_string(idx) + ": " + err.what(),
                    std::to_string(idx));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Matrix SplitResult::realize() const {
  const Ring& R = u.ring();
  Matrix M(R, 2, 2);
  if (tag == Tag::Diag) {
    M(0, 0) = u;
    M(1, 1) = R->inv(u);
  } else {
    M(0, 1) = u;
    M(1, 0) = R->inv(u);
  }
  return M;
}

SplitResult split_orthogonal_h(const Matrix& M) {
  if (M.rows() != 2 || M.cols() != 2) throw Error(ErrorKind::PreconditionViolated, "split needs a 2 x 2 matrix");
  const Ring& R = M.ring();
  Matrix psi = hyperbolic_gram(R, 1, Ordering::Interleaved);
  if (!is_orthogonal(M, psi)) throw Error(ErrorKind::NotOrthogonal, "matrix is not orthogonal for psi_1");
  RingElement delta = M.determinant();
  auto not_local = [&](const std::string& why) {
    return Error(ErrorKind::NotLocalRing, why + " (det = " + delta.to_string() + ")", delta.to_string());
  };
  if (delta.is_one()) {
    if (!M(0, 1).is_zero() || !M(1, 0).is_zero()) throw not_local("det 1 but not diagonal");
    SplitResult s{SplitResult::Tag::Diag, M(0, 0)};
    if (s.realize() != M) throw not_local("diagonal entries are not inverse units");
    return s;
  }
  if (delta == R->neg(R->one())) {
    Matrix beta = M * psi;
    if (!beta(0, 1).is_zero() || !beta(1, 0).is_zero()) throw not_local("det -1 but M psi is not diagonal");
    SplitResult s{SplitResult::Tag::AntiDiag, M(0, 1)};
    if (s.realize() != M) throw not_local("anti-diagonal entries are not inverse units");
    return s;
  }
  throw not_local("determinant is not +-1");
}

}  // namespace dser
