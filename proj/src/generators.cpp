#include "dser/generators.hpp"

namespace dser {

std::string to_string(LetterKind kind) {
  switch (kind) {
    case LetterKind::EAlpha: return "EAlpha";
    case LetterKind::EBetaStar: return "EBetaStar";
    case LetterKind::EAlphaSingle: return "EAlphaSingle";
    case LetterKind::EBetaStarSingle: return "EBetaStarSingle";
    case LetterKind::OE: return "OE";
    case LetterKind::Tau: return "Tau";
    case LetterKind::SigmaU: return "SigmaU";
    case LetterKind::BlockOq: return "BlockOq";
    case LetterKind::Inverse: return "Inverse";
  }
  return "?";
}

Letter Letter::e_alpha(Matrix alpha) {
  Letter l;
  l.kind = LetterKind::EAlpha;
  l.mat = std::move(alpha);
  return l;
}

Letter Letter::e_beta_star(Matrix beta) {
  Letter l;
  l.kind = LetterKind::EBetaStar;
  l.mat = std::move(beta);
  return l;
}

Letter Letter::alpha_single(std::size_t i, std::size_t j, RingElement x) {
  Letter l;
  l.kind = LetterKind::EAlphaSingle;
  l.i = i;
  l.j = j;
  l.x = std::move(x);
  return l;
}

Letter Letter::beta_star_single(std::size_t i, std::size_t j, RingElement x) {
  Letter l = alpha_single(i, j, std::move(x));
  l.kind = LetterKind::EBetaStarSingle;
  return l;
}

Letter Letter::oe(std::size_t k, std::size_t l_, RingElement a) {
  Letter l = alpha_single(k, l_, std::move(a));
  l.kind = LetterKind::OE;
  return l;
}

Letter Letter::tau(RingElement u, std::size_t plane) {
  Letter l;
  l.kind = LetterKind::Tau;
  l.x = std::move(u);
  l.i = plane;
  return l;
}

Letter Letter::sigma_u(RingElement u, std::size_t plane) {
  Letter l = tau(std::move(u), plane);
  l.kind = LetterKind::SigmaU;
  return l;
}

Letter Letter::block_oq(Matrix A) {
  Letter l;
  l.kind = LetterKind::BlockOq;
  l.mat = std::move(A);
  return l;
}

Letter Letter::inverse(Letter of) {
  Letter l;
  l.kind = LetterKind::Inverse;
  l.of = std::make_shared<const Letter>(std::move(of));
  return l;
}

bool Letter::is_dser() const {
  switch (kind) {
    case LetterKind::EAlpha:
    case LetterKind::EBetaStar:
    case LetterKind::EAlphaSingle:
    case LetterKind::EBetaStarSingle: return true;
    case LetterKind::Inverse: return of->is_dser();
    default: return false;
  }
}

std::string Letter::to_string() const {
  auto idx = [](std::size_t a, std::size_t b) { return std::to_string(a) + std::to_string(b); };
  switch (kind) {
    case LetterKind::EAlpha: return "E_alpha(" + mat.to_string() + ")";
    case LetterKind::EBetaStar: return "E*_beta(" + mat.to_string() + ")";
    case LetterKind::EAlphaSingle: return "E_alpha" + idx(i, j) + "(" + x.to_string() + ")";
    case LetterKind::EBetaStarSingle: return "E*_beta" + idx(i, j) + "(" + x.to_string() + ")";
    case LetterKind::OE: return "oe" + idx(i, j) + "(" + x.to_string() + ")";
    case LetterKind::Tau: return "tau_" + std::to_string(i) + "(" + x.to_string() + ")";
    case LetterKind::SigmaU: return "sigma_" + std::to_string(i) + "(" + x.to_string() + ")";
    case LetterKind::BlockOq: return "(" + mat.to_string() + " + I)";
    case LetterKind::Inverse: return of->to_string() + "^-1";
  }
  return "?";
}

bool Word::is_dser() const {
  for (const auto& l : letters)
    if (!l.is_dser()) return false;
  return true;
}

std::string Word::to_string() const {
  if (letters.empty()) return "I";
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) out += (k ? " " : "") + letters[k].to_string();
  return out;
}

Word inverse_word(const Word& w, const AmbientForm& form) {
  Word r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.push(structural_inverse(*it, form));
  return r;
}

Word commutator_word(const Word& a, const Word& b, const AmbientForm& form) {
  Word r = a;
  r.append(b);
  r.append(inverse_word(a, form));
  r.append(inverse_word(b, form));
  return r;
}

std::size_t sigma_pair(std::size_t l, std::size_t n, std::size_t m) {
  if (l < 1 || l > n + 2 * m) throw Error(ErrorKind::OutOfRange, "index " + std::to_string(l) + " out of range");
  if (l > n) return ((l - n) % 2 == 1) ? l + 1 : l - 1;
  if (n % 2 != 0)
    throw Error(ErrorKind::OutOfRange, "index " + std::to_string(l) + " lies in a Q block of odd rank");
  return (l % 2 == 1) ? l + 1 : l - 1;
}

Matrix single_entry(const Ring& ring, std::size_t m, std::size_t n, std::size_t i, std::size_t j, const RingElement& x) {
  if (i < 1 || i > m || j < 1 || j > n)
    throw Error(ErrorKind::OutOfRange, "single entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  Matrix a(ring, m, n);
  a(i - 1, j - 1) = x;
  return a;
}

Matrix adjoint(const Matrix& alpha, const QuadraticSpace& q) { return q.gram_inverse() * alpha.transpose(); }

namespace {

void check_shape(const Matrix& a, const AmbientForm& form) {
  if (a.rows() != form.m() || a.cols() != form.n())
    throw Error(ErrorKind::PreconditionViolated, "DSER parameter must be " + std::to_string(form.m()) + "x" +
                                                     std::to_string(form.n()));
  if (!same_ring(a.ring(), form.ring()))
    throw Error(ErrorKind::DescriptorMismatch, "letter over " + a.ring()->to_string() + ", form over " +
                                                   form.ring()->to_string());
}

// E_alpha when `beta_side` is false, E*_beta otherwise.
Matrix block_letter(const Matrix& a, bool beta_side, const AmbientForm& form) {
  check_shape(a, form);
  const Ring& R = form.ring();
  const std::size_t n = form.n(), m = form.m();
  Matrix as = adjoint(a, form.space());
  Matrix aas = a * as;
  Matrix M = Matrix::identity(R, form.dim());
  auto row = [&](std::size_t r) { return beta_side ? form.pstar_index(r) : form.p_index(r); };
  auto col = [&](std::size_t r) { return beta_side ? form.p_index(r) : form.pstar_index(r); };
  for (std::size_t r = 1; r <= m; ++r) {
    for (std::size_t c = 0; c < n; ++c) M(row(r), c) = a(r - 1, c);
    for (std::size_t q = 0; q < n; ++q) M(q, col(r)) = R->neg(as(q, r - 1));
    for (std::size_t t = 1; t <= m; ++t)
      if (!aas(r - 1, t - 1).is_zero()) M.add_to(row(r), col(t), R->neg(half(aas(r - 1, t - 1))));
  }
  return M;
}

void check_oe(std::size_t k, std::size_t l, const AmbientForm& form) {
  if (form.ordering() != Ordering::Interleaved)
    throw Error(ErrorKind::OrderingMismatch, "oe generators are defined for the interleaved ordering");
  const std::size_t n = form.n(), m = form.m();
  if (k < 1 || l < 1 || k > n + 2 * m || l > n + 2 * m) throw Error(ErrorKind::OutOfRange, "oe index out of range");
  if ((k <= n || l <= n) && !form.space().is_hyperbolic())
    throw Error(ErrorKind::NotHyperbolicForm, "oe on Q-block indices needs phi hyperbolic");
  if (k >= l) throw Error(ErrorKind::PreconditionViolated, "oe requires k < l");
  if (k == sigma_pair(l, n, m)) throw Error(ErrorKind::PreconditionViolated, "oe requires k != sigma(l)");
}

}  // namespace

Matrix dser_letter_matrix(const Letter& letter, const AmbientForm& form) {
  const Ring& R = form.ring();
  switch (letter.kind) {
    case LetterKind::EAlpha: return block_letter(letter.mat, false, form);
    case LetterKind::EBetaStar: return block_letter(letter.mat, true, form);
    case LetterKind::EAlphaSingle:
      return block_letter(single_entry(R, form.m(), form.n(), letter.i, letter.j, letter.x), false, form);
    case LetterKind::EBetaStarSingle:
      return block_letter(single_entry(R, form.m(), form.n(), letter.i, letter.j, letter.x), true, form);
    default: break;
  }
  throw Error(ErrorKind::PreconditionViolated, "not a DSER letter: " + letter.to_string());
}

Matrix diagonal_single_matrix(const Letter& letter, const AmbientForm& form) {
  if (letter.kind != LetterKind::EAlphaSingle && letter.kind != LetterKind::EBetaStarSingle)
    throw Error(ErrorKind::PreconditionViolated, "closed form applies to single-entry letters only");
  if (form.ordering() != Ordering::Interleaved)
    throw Error(ErrorKind::OrderingMismatch, "closed form is stated for the interleaved ordering");
  auto d = d_vector(form.space());
  const Ring& R = form.ring();
  const std::size_t n = form.n();
  const std::size_t i = letter.i, j = letter.j;
  if (i < 1 || i > form.m() || j < 1 || j > n) throw Error(ErrorKind::OutOfRange, "single entry out of range");
  const RingElement& x = letter.x;
  // 0-based rows: p_i = n+2i-2, p*_i = n+2i-1.
  std::size_t a = n + 2 * i - 2, b = n + 2 * i - 1;
  if (letter.kind == LetterKind::EBetaStarSingle) std::swap(a, b);
  Matrix M = Matrix::identity(R, form.dim());
  M.add_to(a, j - 1, x);
  M.add_to(j - 1, b, R->neg(R->mul(d[j - 1], x)));
  M.add_to(a, b, R->neg(half(R->mul(d[j - 1], R->mul(x, x)))));
  return M;
}

Matrix oe_matrix(std::size_t k, std::size_t l, const RingElement& a, const AmbientForm& form) {
  check_oe(k, l, form);
  const std::size_t n = form.n(), m = form.m();
  Matrix M = Matrix::identity(form.ring(), form.dim());
  M.add_to(k - 1, l - 1, a);
  M.add_to(sigma_pair(l, n, m) - 1, sigma_pair(k, n, m) - 1, form.ring()->neg(a));
  return M;
}

Letter structural_inverse(const Letter& letter, const AmbientForm& form) {
  const Ring& R = form.ring();
  switch (letter.kind) {
    case LetterKind::EAlpha: return Letter::e_alpha(-letter.mat);
    case LetterKind::EBetaStar: return Letter::e_beta_star(-letter.mat);
    case LetterKind::EAlphaSingle: return Letter::alpha_single(letter.i, letter.j, R->neg(letter.x));
    case LetterKind::EBetaStarSingle: return Letter::beta_star_single(letter.i, letter.j, R->neg(letter.x));
    case LetterKind::OE: return Letter::oe(letter.i, letter.j, R->neg(letter.x));
    case LetterKind::Tau: return Letter::tau(R->inv(letter.x), letter.i);
    case LetterKind::SigmaU: return letter;
    case LetterKind::BlockOq: {
      const auto& q = form.space();
      return Letter::block_oq(q.gram_inverse() * letter.mat.transpose() * q.gram());
    }
    case LetterKind::Inverse: return *letter.of;
  }
  throw Error(ErrorKind::Unsupported, "structural_inverse");
}

Matrix letter_matrix(const Letter& letter, const AmbientForm& form) {
  const Ring& R = form.ring();
  switch (letter.kind) {
    case LetterKind::EAlpha:
    case LetterKind::EBetaStar:
    case LetterKind::EAlphaSingle:
    case LetterKind::EBetaStarSingle: return dser_letter_matrix(letter, form);
    case LetterKind::OE: return oe_matrix(letter.i, letter.j, letter.x, form);
    case LetterKind::Tau: {
      Matrix M = Matrix::identity(R, form.dim());
      M(form.p_index(letter.i), form.p_index(letter.i)) = letter.x;
      M(form.pstar_index(letter.i), form.pstar_index(letter.i)) = R->inv(letter.x);
      return M;
    }
    case LetterKind::SigmaU: {
      Matrix M = Matrix::identity(R, form.dim());
      std::size_t p = form.p_index(letter.i), ps = form.pstar_index(letter.i);
      M(p, p) = R->zero();
      M(ps, ps) = R->zero();
      M(p, ps) = letter.x;
      M(ps, p) = R->inv(letter.x);
      return M;
    }
    case LetterKind::BlockOq: {
      const Matrix& A = letter.mat;
      if (A.rows() != form.n() || A.cols() != form.n())
        throw Error(ErrorKind::PreconditionViolated, "block matrix must be n x n");
      if (!is_orthogonal(A, form.space().gram()))
        throw Error(ErrorKind::NotOrthogonal, "block matrix is not orthogonal for phi");
      return direct_sum(A, Matrix::identity(R, 2 * form.m()));
    }
    case LetterKind::Inverse: return letter_matrix(structural_inverse(*letter.of, form), form);
  }
  throw Error(ErrorKind::Unsupported, "letter_matrix");
}

Matrix word_matrix(const Word& w, const AmbientForm& form) {
  Matrix M = Matrix::identity(form.ring(), form.dim());
  for (const auto& l : w.letters) M = M * letter_matrix(l, form);
  return M;
}

bool touches_only_hyperbolic(const Letter& letter, const AmbientForm& form) {
  switch (letter.kind) {
    case LetterKind::Tau:
    case LetterKind::SigmaU: return true;
    case LetterKind::OE: return letter.i > form.n() && letter.j > form.n();
    case LetterKind::Inverse: return touches_only_hyperbolic(*letter.of, form);
    default: return false;
  }
}

bool verify_rao_factorization(const Matrix& eta, const Word& w1, const Word& w2, const AmbientForm& form) {
  if (!w1.is_dser()) return false;
  for (const auto& l : w2.letters)
    if (!touches_only_hyperbolic(l, form)) return false;
  return eta == word_matrix(w1, form) * word_matrix(w2, form);
}

}  // namespace dser
