#pragma once

// Polynomial matrices over R[X], words over R_s[X] whose letters are
// conjugated elementary generators vanishing at X = 0, and the dilation
// X -> s^N X that clears their denominators.

#include <vector>

#include "dser/generators.hpp"

namespace dser {

/// Copy of `letter` with every parameter mapped into `target` along the canonical maps.
Letter lift_letter(const Letter& letter, const Ring& target);
Word lift_word(const Word& w, const Ring& target);
AmbientForm lift_form(const AmbientForm& form, const Ring& target);

/// Entries of a matrix over Poly(R, X) evaluated at X = value (value in R).
Matrix evaluate(const Matrix& theta, const RingElement& value);
/// X -> c X applied entry-wise to a matrix over Poly(R, X), c in R.
Matrix dilate_variable(const Matrix& theta, const RingElement& c);
/// Entry-wise image of a matrix over Poly(R, X) in Poly(R_s, X).
Matrix localize_poly_matrix(const Matrix& theta, const Ring& local_poly);

bool eval_at_zero_is_identity(const Matrix& theta);

struct LocalizedLetter {
  Word conjugator;  // over R_s
  Letter core;      // DSER letter, parameters in R_s[X]
};

class LocalizedWord {
 public:
  /// phi over R; the word lives over R_s[X] with variable `var`.
  LocalizedWord(Ring base, RingElement s, Matrix phi, std::size_t m, Ordering ordering, std::string var = "X");

  const Ring& base() const { return base_; }
  const RingElement& s() const { return s_; }
  const Ring& local_ring() const { return local_; }
  const Ring& poly_ring() const { return poly_; }
  const Ring& base_poly_ring() const { return base_poly_; }
  const AmbientForm& base_form() const { return base_form_; }
  const AmbientForm& poly_form() const { return poly_form_; }
  const std::string& var() const { return var_; }

  std::vector<LocalizedLetter> letters;

  /// prod gamma E gamma^-1 over R_s[X].
  Matrix matrix() const;

 private:
  Ring base_, local_, poly_, base_poly_;
  RingElement s_;
  std::string var_;
  AmbientForm base_form_;
  AmbientForm poly_form_;
};

/// Every core is a DSER letter with parameters divisible by X and the word is I at X = 0.
bool kernel_shape_check(const LocalizedWord& w);

struct DilationResult {
  unsigned N = 0;
  Word word;          // over R[X]
  AmbientForm form;   // ambient form over R[X]
};

/// Smallest N with s^{N d} c_d in R for every coefficient c_d X^d of every core
/// parameter.  Conjugators must be localizations of words over R
/// (NonIntegralConjugator otherwise).
DilationResult dilate(const LocalizedWord& w);

/// localize(word_matrix(result.word)) == input matrix with X -> s^N X.
bool dilation_sound(const LocalizedWord& w, const DilationResult& result);

/// Coefficients c_i with sum c_i s_i = 1 in R (Z or Z/n).  NotComaximal otherwise.
std::vector<RingElement> comaximal_certificate(const Ring& base, const std::vector<RingElement>& cover);

struct CoverEntry {
  RingElement s;
  LocalizedWord word;
};

/// theta over R[X].  True iff every certificate is kernel-shaped and its
/// matrix equals theta localized at its s.  NotComaximal if the s_i do not
/// generate R.
bool verify_local_membership(const Matrix& theta, const std::vector<CoverEntry>& cover);

}  // namespace dser
