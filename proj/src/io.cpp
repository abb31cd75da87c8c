#include "dser/io.hpp"

namespace dser {

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorKind::Parse, "expected a ring element, got " + j.dump());
}

std::size_t index_of(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw Error(ErrorKind::Parse, std::string("letter field '") + key + "' must be an integer");
  long long v = j.at(key).get<long long>();
  if (v < 1) throw Error(ErrorKind::Parse, std::string("letter field '") + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json matrix_to_json(const Matrix& m) { return Json(m.to_strings()); }

Matrix matrix_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorKind::Parse, "matrix row must be an array");
    rows.emplace_back();
    for (const auto& e : r) rows.back().push_back(scalar_text(e));
  }
  return Matrix::from_strings(ring, rows);
}

Json letter_to_json(const Letter& l) {
  Json j;
  j["kind"] = to_string(l.kind);
  switch (l.kind) {
    case LetterKind::EAlpha: j["alpha"] = matrix_to_json(l.mat); break;
    case LetterKind::EBetaStar: j["beta"] = matrix_to_json(l.mat); break;
    case LetterKind::EAlphaSingle:
    case LetterKind::EBetaStarSingle:
      j["i"] = l.i;
      j["j"] = l.j;
      j["x"] = l.x.to_string();
      break;
    case LetterKind::OE:
      j["k"] = l.k();
      j["l"] = l.l();
      j["a"] = l.x.to_string();
      break;
    case LetterKind::Tau:
    case LetterKind::SigmaU:
      j["u"] = l.x.to_string();
      j["plane"] = l.plane();
      break;
    case LetterKind::BlockOq: j["A"] = matrix_to_json(l.mat); break;
    case LetterKind::Inverse: j["of"] = letter_to_json(*l.of); break;
  }
  return j;
}

Letter letter_from_json(const Ring& ring, const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  auto el = [&](const char* key) { return parse_element(ring, scalar_text(field(j, key))); };
  if (kind == "EAlpha") return Letter::e_alpha(matrix_from_json(ring, field(j, "alpha")));
  if (kind == "EBetaStar") return Letter::e_beta_star(matrix_from_json(ring, field(j, "beta")));
  if (kind == "EAlphaSingle") return Letter::alpha_single(index_of(j, "i"), index_of(j, "j"), el("x"));
  if (kind == "EBetaStarSingle") return Letter::beta_star_single(index_of(j, "i"), index_of(j, "j"), el("x"));
  if (kind == "OE") return Letter::oe(index_of(j, "k"), index_of(j, "l"), el("a"));
  if (kind == "Tau") return Letter::tau(el("u"), index_of(j, "plane"));
  if (kind == "SigmaU") return Letter::sigma_u(el("u"), index_of(j, "plane"));
  if (kind == "BlockOq") return Letter::block_oq(matrix_from_json(ring, field(j, "A")));
  if (kind == "Inverse") return Letter::inverse(letter_from_json(ring, field(j, "of")));
  throw Error(ErrorKind::Parse, "unknown letter kind '" + kind + "'");
}

Json word_to_json(const Word& w) {
  Json j = Json::array();
  for (const auto& l : w.letters) j.push_back(letter_to_json(l));
  return j;
}

Word word_from_json(const Ring& ring, const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "word must be an array of letters");
  Word w;
  for (const auto& l : j) w.push(letter_from_json(ring, l));
  return w;
}

Json context_to_json(const AmbientForm& form) {
  Json j;
  j["n"] = form.n();
  j["m"] = form.m();
  j["ordering"] = to_string(form.ordering());
  j["ring"] = form.ring()->to_string();
  j["phi"] = matrix_to_json(form.space().gram());
  return j;
}

AmbientForm context_from_json(const Json& j) {
  Ring R = parse_ring(field(j, "ring").get<std::string>());
  Matrix phi = matrix_from_json(R, field(j, "phi"));
  std::size_t m = index_of(j, "m");
  Ordering o = parse_ordering(field(j, "ordering").get<std::string>());
  AmbientForm form(QuadraticSpace(phi), m, o);
  if (j.contains("n") && j.at("n").get<std::size_t>() != form.n())
    throw Error(ErrorKind::Parse, "context n does not match phi");
  return form;
}

Json localized_word_to_json(const LocalizedWord& w) {
  Json j;
  j["base_ring"] = w.base()->to_string();
  j["s"] = w.s().to_string();
  Json ctx = context_to_json(w.base_form());
  ctx.erase("ring");
  j["context"] = ctx;
  j["var"] = w.var();
  Json letters = Json::array();
  for (const auto& ll : w.letters) {
    Json e;
    e["conjugator"] = word_to_json(ll.conjugator);
    e["core"] = letter_to_json(ll.core);
    letters.push_back(e);
  }
  j["letters"] = letters;
  return j;
}

LocalizedWord localized_word_from_json(const Json& j) {
  Ring R = parse_ring(field(j, "base_ring").get<std::string>());
  RingElement s = parse_element(R, scalar_text(field(j, "s")));
  const Json& ctx = field(j, "context");
  Matrix phi = matrix_from_json(R, field(ctx, "phi"));
  std::string var = j.contains("var") ? j.at("var").get<std::string>() : "X";
  LocalizedWord w(R, s, phi, index_of(ctx, "m"), parse_ordering(field(ctx, "ordering").get<std::string>()), var);
  for (const auto& e : field(j, "letters")) {
    Word g = e.contains("conjugator") ? word_from_json(w.local_ring(), e.at("conjugator")) : Word{};
    w.letters.push_back({g, letter_from_json(w.poly_ring(), field(e, "core"))});
  }
  return w;
}

Json word_certificate(const std::string& kind, const Json& input, const Word& lhs, const Word& output,
                      const AmbientForm& form) {
  Matrix a = word_matrix(lhs, form), b = word_matrix(output, form);
  Json j;
  j["v"] = 1;
  j["kind"] = kind;
  j["input"] = input;
  j["ring"] = form.ring()->to_string();
  j["context"] = context_to_json(form);
  j["lhs_word"] = word_to_json(lhs);
  j["output_word"] = word_to_json(output);
  j["matrices_equal"] = a == b;
  j["matrices"] = {{"lhs", matrix_to_json(a)}, {"output", matrix_to_json(b)}};
  return j;
}

Json split_certificate(const Matrix& M, const SplitResult& r) {
  Matrix back = r.realize();
  Json j;
  j["v"] = 1;
  j["kind"] = "split-oh";
  j["input"] = {{"matrix", matrix_to_json(M)}};
  j["ring"] = M.ring()->to_string();
  j["tag"] = r.tag_name();
  j["u"] = r.u.to_string();
  j["matrices_equal"] = back == M;
  j["matrices"] = {{"input", matrix_to_json(M)}, {"realized", matrix_to_json(back)}};
  return j;
}

Json dilation_certificate(const LocalizedWord& w, const DilationResult& r) {
  Json j;
  j["v"] = 1;
  j["kind"] = "dilate";
  j["input"] = localized_word_to_json(w);
  j["N"] = r.N;
  j["ring"] = r.form.ring()->to_string();
  j["context"] = context_to_json(r.form);
  j["output_word"] = word_to_json(r.word);
  j["matrices_equal"] = dilation_sound(w, r);
  const Ring& L = w.local_ring();
  j["matrices"] = {{"input_dilated", matrix_to_json(dilate_variable(w.matrix(), L->pow(localize(w.s(), L), r.N)))},
                   {"output", matrix_to_json(word_matrix(r.word, r.form))}};
  return j;
}

CheckOutcome check_certificate(const Json& cert) {
  if (!cert.is_object() || !cert.contains("v") || cert.at("v") != 1)
    throw Error(ErrorKind::Parse, "not a version 1 certificate");
  std::string kind = field(cert, "kind").get<std::string>();
  const Json& inline_m = field(cert, "matrices");

  if (kind == "split-oh") {
    Ring R = parse_ring(field(cert, "ring").get<std::string>());
    Matrix M = matrix_from_json(R, field(field(cert, "input"), "matrix"));
    std::string tag = field(cert, "tag").get<std::string>();
    if (tag != "Diag" && tag != "AntiDiag") return {false, "unknown tag " + tag};
    SplitResult r{tag == "Diag" ? SplitResult::Tag::Diag : SplitResult::Tag::AntiDiag,
                  parse_element(R, scalar_text(field(cert, "u")))};
    Matrix back = r.realize();
    if (back != M) return {false, "realized matrix differs from the input"};
    if (matrix_from_json(R, field(inline_m, "realized")) != back) return {false, "inline realized matrix is stale"};
    return {true, "realized " + tag + " matches"};
  }

  if (kind == "dilate") {
    LocalizedWord w = localized_word_from_json(field(cert, "input"));
    AmbientForm form = context_from_json(field(cert, "context"));
    DilationResult r{field(cert, "N").get<unsigned>(), word_from_json(form.ring(), field(cert, "output_word")), form};
    if (!dilation_sound(w, r)) return {false, "dilated input and output word differ"};
    if (matrix_from_json(form.ring(), field(inline_m, "output")) != word_matrix(r.word, form))
      return {false, "inline output matrix is stale"};
    return {true, "localized output equals the dilated input"};
  }

  AmbientForm form = context_from_json(field(cert, "context"));
  Word lhs = word_from_json(form.ring(), field(cert, "lhs_word"));
  Word out = word_from_json(form.ring(), field(cert, "output_word"));
  if (kind != "dser-to-oe" && !out.is_dser()) return {false, "output word contains non-DSER letters"};
  Matrix a = word_matrix(lhs, form), b = word_matrix(out, form);
  if (a != b) return {false, "word matrices differ"};
  if (matrix_from_json(form.ring(), field(inline_m, "lhs")) != a ||
      matrix_from_json(form.ring(), field(inline_m, "output")) != b)
    return {false, "inline matrices are stale"};
  return {true, "word matrices agree"};
}

}  // namespace dser
