#pragma once

// JSON encodings of rings, matrices, letters, words and certificates.

#include "json.hpp"

#include "dser/localglobal.hpp"
#include "dser/rewrite.hpp"

namespace dser {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Ring& ring, const Json& j);

Json letter_to_json(const Letter& l);
Letter letter_from_json(const Ring& ring, const Json& j);

Json word_to_json(const Word& w);
Word word_from_json(const Ring& ring, const Json& j);

/// {n, m, ordering, ring, phi}
Json context_to_json(const AmbientForm& form);
AmbientForm context_from_json(const Json& j);

/// {base_ring, s, context, letters: [{conjugator, core}]}.  Conjugators are read
/// over R_s and cores over R_s[X].
Json localized_word_to_json(const LocalizedWord& w);
LocalizedWord localized_word_from_json(const Json& j);

/// Certificate that word_matrix(lhs) == word_matrix(output) in `form`.
Json word_certificate(const std::string& kind, const Json& input, const Word& lhs, const Word& output,
                      const AmbientForm& form);
Json split_certificate(const Matrix& M, const SplitResult& r);
Json dilation_certificate(const LocalizedWord& w, const DilationResult& r);

struct CheckOutcome {
  bool matrices_equal = false;
  std::string detail;
};

/// Re-derives every matrix named in the certificate from its words alone and
/// compares them with each other and with the inline copies.
CheckOutcome check_certificate(const Json& cert);

}  // namespace dser
