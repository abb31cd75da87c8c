#pragma once

// Constructive rewritings between DSER letters and classical oe generators,
// conjugation of DSER letters by the covered conjugator families, and the
// splitting of O(h) over a local ring.

#include <optional>
#include <string>
#include <vector>

#include "dser/generators.hpp"

namespace dser {

/// E_alpha_kl(a) = oe_{sigma l, n+2k}(-a), E*_beta_kl(b) = oe_{sigma l, n+2k-1}(-b).
/// Needs phi hyperbolic (NotHyperbolicForm) and Interleaved ordering.
Letter dser_to_oe(const Letter& letter, const AmbientForm& form);

/// A DSER word with the same matrix as oe_kl(a): a commutator of two letters,
/// or one letter when exactly one index lies in the Q block.
Word oe_to_dser(std::size_t k, std::size_t l, const RingElement& a, const AmbientForm& form);

/// Conjugation rules as data so that test fixtures can corrupt individual entries.
struct RuleTable {
  int tau_alpha_power = 1;          // alpha row on the plane -> u^p * row
  int tau_beta_power = -1;          // beta row on the plane -> u^p * row
  bool sigma_swaps = true;          // sigma_u exchanges alpha and beta rows on its plane
  bool block_uses_inverse = true;   // E_alpha -> E_{alpha A^-1}
  int oe_target_sign = 1;           // row index t = l
  int oe_partner_sign = -1;         // row index t = sigma(k)
  bool oe_split_halves = true;      // [D/2, e, D/2] instead of [D, e]

  static RuleTable standard() { return {}; }
  /// Named faults: tau-beta, sigma-fixed, block-direct, oe-sign, oe-whole.
  static RuleTable corrupted(const std::string& name);
  static std::vector<std::string> fault_names();
};

/// DSER word equal to g e g^-1.  Throws UnsupportedConjugator for g outside
/// Tau, SigmaU, BlockOq, OE or DSER letters (and their inverses).
Word conjugate_letter(const Letter& g, const Letter& e, const AmbientForm& form,
                      const RuleTable& rules = RuleTable::standard());

/// DSER word equal to g e g^-1, rewriting one conjugator letter at a time
/// from the innermost outwards.
Word conjugate_word(const Word& g, const Word& e, const AmbientForm& form,
                    const RuleTable& rules = RuleTable::standard());

struct SplitResult {
  enum class Tag { Diag, AntiDiag };
  Tag tag;
  RingElement u;

  /// [u] + [u^-1] or [u] T [u^-1] as a 2 x 2 matrix.
  Matrix realize() const;
  std::string tag_name() const { return tag == Tag::Diag ? "Diag" : "AntiDiag"; }
};

/// M orthogonal for psi_1 over a local ring: M = [u] + [u^-1] or [u] T [u^-1].
/// NotOrthogonal when M^T psi M != psi; NotLocalRing when det M is not +-1
/// (witness: det M).
SplitResult split_orthogonal_h(const Matrix& M);

}  // namespace dser
