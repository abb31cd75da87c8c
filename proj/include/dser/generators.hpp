#pragma once

// Generator letters of the orthogonal group of the ambient form, words of
// letters, and their exact matrix realizations.
//
// Index conventions: plane indices i and coordinate indices j are 1-based as
// in the usual notation; OE indices k, l are 1-based positions in the ambient
// basis (Interleaved ordering).

#include <memory>
#include <string>
#include <vector>

#include "dser/quadform.hpp"

namespace dser {

enum class LetterKind { EAlpha, EBetaStar, EAlphaSingle, EBetaStarSingle, OE, Tau, SigmaU, BlockOq, Inverse };

std::string to_string(LetterKind kind);

struct Letter {
  LetterKind kind = LetterKind::EAlpha;
  Matrix mat;       // alpha / beta (m x n) or A (n x n)
  std::size_t i = 0, j = 0;
  RingElement x;    // single-entry parameter, OE parameter a, or the unit u
  std::shared_ptr<const Letter> of;

  static Letter e_alpha(Matrix alpha);
  static Letter e_beta_star(Matrix beta);
  static Letter alpha_single(std::size_t i, std::size_t j, RingElement x);
  static Letter beta_star_single(std::size_t i, std::size_t j, RingElement x);
  static Letter oe(std::size_t k, std::size_t l, RingElement a);
  static Letter tau(RingElement u, std::size_t plane);
  static Letter sigma_u(RingElement u, std::size_t plane);
  static Letter block_oq(Matrix A);
  static Letter inverse(Letter of);

  // OE accessors.
  std::size_t k() const { return i; }
  std::size_t l() const { return j; }
  std::size_t plane() const { return i; }

  bool is_dser() const;
  std::string to_string() const;
};

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  Word(std::initializer_list<Letter> ls) : letters(ls) {}
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  void append(const Word& w) { letters.insert(letters.end(), w.letters.begin(), w.letters.end()); }
  void push(Letter l) { letters.push_back(std::move(l)); }
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  /// Every letter is a DSER generator or the inverse of one.
  bool is_dser() const;
  std::string to_string() const;
};

/// Formal inverse of a word: reversed letters, each replaced by its structural inverse.
Word inverse_word(const Word& w, const AmbientForm& form);
/// [A, B] = A B A^-1 B^-1 as a word.
Word commutator_word(const Word& a, const Word& b, const AmbientForm& form);

/// Partner of a hyperbolic basis index (1-based).  Indices above n pair by the
/// parity of l - n; indices in the Q block require n even.
std::size_t sigma_pair(std::size_t l, std::size_t n, std::size_t m);

/// The letter whose matrix is the inverse of `letter`'s, built from parameters.
Letter structural_inverse(const Letter& letter, const AmbientForm& form);

/// Single-entry alpha / beta as an m x n matrix.
Matrix single_entry(const Ring& ring, std::size_t m, std::size_t n, std::size_t i, std::size_t j, const RingElement& x);

/// alpha* = phi^-1 alpha^T (n x m).
Matrix adjoint(const Matrix& alpha, const QuadraticSpace& q);

/// Matrix of E_alpha, E*_beta or a single-entry letter, for any invertible
/// symmetric phi and either ordering.
Matrix dser_letter_matrix(const Letter& letter, const AmbientForm& form);

/// Closed single-entry formula with d_j = phi_jj^-1; needs diagonal phi and
/// Interleaved ordering (NotDiagonal / OrderingMismatch otherwise).
Matrix diagonal_single_matrix(const Letter& letter, const AmbientForm& form);

/// I + a e_kl - a e_{sigma l, sigma k}.
Matrix oe_matrix(std::size_t k, std::size_t l, const RingElement& a, const AmbientForm& form);

Matrix letter_matrix(const Letter& letter, const AmbientForm& form);
Matrix word_matrix(const Word& w, const AmbientForm& form);

/// Whether the letter acts only on the hyperbolic block.
bool touches_only_hyperbolic(const Letter& letter, const AmbientForm& form);

/// eta == word_matrix(w1) * word_matrix(w2) with w1 DSER and w2 supported on
/// the hyperbolic block.
bool verify_rao_factorization(const Matrix& eta, const Word& w1, const Word& w2, const AmbientForm& form);

}  // namespace dser
