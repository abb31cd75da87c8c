#pragma once

// Seeded random elements for property suites.

#include <random>

#include "dser/localglobal.hpp"
#include "dser/quadform.hpp"

namespace dser {

using Rng = std::mt19937_64;

RingElement random_element(const Ring& ring, Rng& rng, long bound = 5);
RingElement random_unit(const Ring& ring, Rng& rng, long bound = 5);
Matrix random_matrix(const Ring& ring, std::size_t rows, std::size_t cols, Rng& rng, long bound = 5);

/// Product of `count` reflections in vectors with small integer entries.
Matrix random_orthogonal(const QuadraticSpace& q, std::size_t count, Rng& rng);

long uniform(Rng& rng, long lo, long hi);

/// Word over Z_s[X] on q = h (rank 2) with m planes: one to three conjugated
/// single letters, integral conjugators, core parameters of degree 1..3 whose
/// coefficients carry denominators s^k, k <= 3.
LocalizedWord random_localized_word(const RingElement& s, std::size_t m, Rng& rng);

/// A single-entry or full-block DSER letter for `form`.
Letter random_dser_letter(const AmbientForm& form, Rng& rng);

/// A letter from the covered conjugator families: Tau, SigmaU, BlockOq (product of
/// reflections) and oe on the hyperbolic block (when m >= 2).  BlockOq needs
/// anisotropic vectors with small integer entries, e.g. a diagonal phi.
Letter random_conjugator(const AmbientForm& form, Rng& rng);

}  // namespace dser
