#include "dser/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "dser/sample.hpp"

namespace dser {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  // body returns {expected, actual}; thrown errors count as failures.
  void compare(const std::string& id, const std::string& identity, const Json& inputs,
               const std::function<std::pair<Matrix, Matrix>()>& body) {
    ++report_.cases;
    try {
      auto [expected, actual] = body();
      if (expected != actual)
        report_.failures.push_back({id, identity, inputs, matrix_to_json(expected), matrix_to_json(actual)});
    } catch (const Error& e) {
      report_.failures.push_back({id, identity, inputs, Json(), Json(std::string("error: ") + e.what())});
    }
  }

  void holds(const std::string& id, const std::string& identity, const Json& inputs,
             const std::function<bool()>& body) {
    ++report_.cases;
    try {
      if (!body()) report_.failures.push_back({id, identity, inputs, Json(true), Json(false)});
    } catch (const Error& e) {
      report_.failures.push_back({id, identity, inputs, Json(true), Json(std::string("error: ") + e.what())});
    }
  }

 private:
  SuiteReport& report_;
};

bool symbolic(const SuiteConfig& c) { return c.ring == "laurent"; }

std::vector<std::string> names(const std::string& prefix, std::size_t rows, std::size_t cols) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= rows; ++i)
    for (std::size_t j = 1; j <= cols; ++j) out.push_back(prefix + std::to_string(i) + std::to_string(j));
  return out;
}

Matrix named_matrix(const Ring& R, const std::string& prefix, std::size_t rows, std::size_t cols) {
  Matrix a(R, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = R->variable(prefix + std::to_string(i + 1) + std::to_string(j + 1));
  return a;
}

// Laurent ring over Q with phi entries f1..fn, a unit u and the given extra variables.
Ring symbolic_ring(std::size_t n, const std::vector<std::string>& extra) {
  std::vector<std::string> vars, inv{"u"};
  for (std::size_t j = 1; j <= n; ++j) {
    vars.push_back("f" + std::to_string(j));
    inv.push_back(vars.back());
  }
  vars.push_back("u");
  vars.insert(vars.end(), extra.begin(), extra.end());
  return RingDescriptor::laurent(RingDescriptor::rationals(), vars, inv);
}

QuadraticSpace symbolic_space(const Ring& R, std::size_t n) {
  std::vector<RingElement> d;
  for (std::size_t j = 1; j <= n; ++j) d.push_back(R->variable("f" + std::to_string(j)));
  return QuadraticSpace::diagonal(R, d);
}

Ring concrete_ring(const SuiteConfig& c) {
  Ring R = parse_ring(c.ring);
  if (!is_unit(R->from_integer(2)))
    throw Error(ErrorKind::Unsupported, "2 is not a unit in " + R->to_string());
  return R;
}

QuadraticSpace random_diagonal(const Ring& R, std::size_t n, Rng& rng) {
  std::vector<RingElement> d;
  for (std::size_t j = 0; j < n; ++j) d.push_back(random_unit(R, rng));
  return QuadraticSpace::diagonal(R, d);
}

std::vector<Letter> single_letters(std::size_t m, std::size_t n, const RingElement& x, const RingElement& y) {
  std::vector<Letter> out;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      out.push_back(Letter::alpha_single(i, j, x));
      out.push_back(Letter::beta_star_single(i, j, y));
    }
  return out;
}

Json inputs_of(const AmbientForm& f, std::initializer_list<std::pair<const char*, Json>> extra) {
  Json j;
  j["context"] = context_to_json(f);
  for (const auto& [k, v] : extra) j[k] = v;
  return j;
}

std::pair<Matrix, Matrix> conj_pair(const Word& w, const Letter& g, const Letter& e, const AmbientForm& f) {
  Matrix G = letter_matrix(g, f);
  if (!w.is_dser()) throw Error(ErrorKind::PreconditionViolated, "rewrite produced non-DSER letters");
  return {G * letter_matrix(e, f) * G.inverse(), word_matrix(w, f)};
}

std::size_t rounds(const SuiteConfig& c) { return symbolic(c) ? 1 : c.samples; }

void suite_roy(const SuiteConfig& c, SuiteReport& rep) {
  Rng rng(c.seed);
  Recorder rec(rep);
  const std::size_t n = c.n, m = c.m;
  for (std::size_t r = 0; r < rounds(c); ++r) {
    Ring R;
    QuadraticSpace q = QuadraticSpace::hyperbolic(RingDescriptor::rationals(), 2);
    Matrix alpha, beta;
    RingElement x, y;
    if (symbolic(c)) {
      std::vector<std::string> extra = names("a", m, n), b = names("b", m, n);
      extra.insert(extra.end(), b.begin(), b.end());
      extra.push_back("x");
      extra.push_back("y");
      R = symbolic_ring(n, extra);
      q = symbolic_space(R, n);
      alpha = named_matrix(R, "a", m, n);
      beta = named_matrix(R, "b", m, n);
      x = R->variable("x");
      y = R->variable("y");
    } else {
      R = concrete_ring(c);
      q = random_diagonal(R, n, rng);
      alpha = random_matrix(R, m, n, rng);
      beta = random_matrix(R, m, n, rng);
      x = random_element(R, rng);
      y = random_element(R, rng);
    }
    for (Ordering o : {Ordering::Grouped, Ordering::Interleaved}) {
      AmbientForm f(q, m, o);
      std::vector<Letter> letters = single_letters(m, n, x, y);
      letters.push_back(Letter::e_alpha(alpha));
      letters.push_back(Letter::e_beta_star(beta));
      for (const auto& l : letters) {
        std::string id = "roy/" + to_string(o) + "/" + std::to_string(r) + "/" + l.to_string();
        Json in = inputs_of(f, {{"letter", letter_to_json(l)}});
        rec.compare(id + "/orthogonal", "M^T Phi M = Phi", in, [&] {
          Matrix M = letter_matrix(l, f);
          return std::pair{f.gram(), M.transpose() * f.gram() * M};
        });
        rec.holds(id + "/det", "det M = 1", in, [&] { return letter_matrix(l, f).determinant().is_one(); });
        if (o == Ordering::Interleaved &&
            (l.kind == LetterKind::EAlphaSingle || l.kind == LetterKind::EBetaStarSingle))
          rec.compare(id + "/closed-form", "closed single-entry formula", in,
                      [&] { return std::pair{diagonal_single_matrix(l, f), letter_matrix(l, f)}; });
      }
    }
  }
}

void suite_n1(const SuiteConfig& c, SuiteReport& rep) {
  if (c.m < 2) throw Error(ErrorKind::PreconditionViolated, "n1-table needs m >= 2");
  Rng rng(c.seed);
  Recorder rec(rep);
  const std::size_t n = c.n, m = c.m;
  for (std::size_t r = 0; r < rounds(c); ++r) {
    Ring R;
    QuadraticSpace q = QuadraticSpace::hyperbolic(RingDescriptor::rationals(), 2);
    RingElement a, x, y;
    if (symbolic(c)) {
      R = symbolic_ring(n, {"a", "x", "y"});
      q = symbolic_space(R, n);
      a = R->variable("a");
      x = R->variable("x");
      y = R->variable("y");
    } else {
      R = concrete_ring(c);
      q = random_diagonal(R, n, rng);
      a = random_element(R, rng);
      x = random_element(R, rng);
      y = random_element(R, rng);
    }
    AmbientForm f(q, m, Ordering::Interleaved);
    for (std::size_t k = n + 1; k <= n + 2 * m; ++k)
      for (std::size_t l = k + 1; l <= n + 2 * m; ++l) {
        if (k == sigma_pair(l, n, m)) continue;
        Letter g = Letter::oe(k, l, a);
        for (const auto& e : single_letters(m, n, x, y)) {
          std::string id = "n1-table/" + std::to_string(r) + "/" + g.to_string() + "/" + e.to_string();
          Json in = inputs_of(f, {{"g", letter_to_json(g)}, {"e", letter_to_json(e)}});
          rec.compare(id, "oe E oe^-1 = rewritten word", in,
                      [&] { return conj_pair(conjugate_letter(g, e, f, c.rules), g, e, f); });
        }
      }
  }
}

void suite_tau_sigma(const SuiteConfig& c, SuiteReport& rep) {
  Rng rng(c.seed);
  Recorder rec(rep);
  const std::size_t n = c.n, m = c.m;
  for (std::size_t r = 0; r < rounds(c); ++r) {
    Ring R;
    QuadraticSpace q = QuadraticSpace::hyperbolic(RingDescriptor::rationals(), 2);
    RingElement u, x, y;
    Matrix alpha;
    if (symbolic(c)) {
      std::vector<std::string> extra = names("a", m, n);
      extra.push_back("x");
      extra.push_back("y");
      R = symbolic_ring(n, extra);
      q = symbolic_space(R, n);
      u = R->variable("u");
      x = R->variable("x");
      y = R->variable("y");
      alpha = named_matrix(R, "a", m, n);
    } else {
      R = concrete_ring(c);
      q = random_diagonal(R, n, rng);
      u = random_unit(R, rng);
      x = random_element(R, rng);
      y = random_element(R, rng);
      alpha = random_matrix(R, m, n, rng);
    }
    AmbientForm f(q, m, c.ordering);
    std::vector<Letter> letters = single_letters(m, n, x, y);
    letters.push_back(Letter::e_alpha(alpha));
    letters.push_back(Letter::e_beta_star(alpha));
    for (std::size_t p = 1; p <= m; ++p)
      for (const Letter& g : {Letter::tau(u, p), Letter::inverse(Letter::tau(u, p)), Letter::sigma_u(u, p),
                              Letter::sigma_u(R->one(), p)})
        for (const auto& e : letters) {
          std::string id = "tau-sigma/" + std::to_string(r) + "/" + g.to_string() + "/" + e.to_string();
          Json in = inputs_of(f, {{"g", letter_to_json(g)}, {"e", letter_to_json(e)}});
          rec.compare(id, "g E g^-1 = rewritten word", in,
                      [&] { return conj_pair(conjugate_letter(g, e, f, c.rules), g, e, f); });
        }
  }
}

void suite_block(const SuiteConfig& c, SuiteReport& rep) {
  Rng rng(c.seed);
  Recorder rec(rep);
  const std::size_t n = c.n, m = c.m;
  Ring R;
  QuadraticSpace q = QuadraticSpace::hyperbolic(RingDescriptor::rationals(), 2);
  if (symbolic(c)) {
    std::vector<std::string> extra = names("b", m, n);
    R = RingDescriptor::laurent(RingDescriptor::rationals(), extra, {});
    std::vector<RingElement> d;
    for (std::size_t j = 1; j <= n; ++j) d.push_back(R->from_integer(static_cast<long>(j)));
    q = QuadraticSpace::diagonal(R, d);
  } else {
    R = concrete_ring(c);
    q = random_diagonal(R, n, rng);
  }
  AmbientForm f(q, m, c.ordering);
  for (std::size_t r = 0; r < c.samples; ++r) {
    Matrix A = random_orthogonal(q, static_cast<std::size_t>(uniform(rng, 1, 3)), rng);
    Matrix beta = symbolic(c) ? named_matrix(R, "b", m, n) : random_matrix(R, m, n, rng);
    for (const Letter& e : {Letter::e_alpha(beta), Letter::e_beta_star(beta)}) {
      Letter g = Letter::block_oq(A);
      std::string id = "block-oq/" + std::to_string(r) + "/" + to_string(e.kind);
      Json in = inputs_of(f, {{"A", matrix_to_json(A)}, {"e", letter_to_json(e)}});
      rec.compare(id, "(A + I) E_beta (A + I)^-1 = E_{beta A^-1}", in, [&] {
        Word w = conjugate_word(Word{g}, Word{e}, f, c.rules);
        Matrix moved = beta * A.inverse();
        Letter target = e.kind == LetterKind::EAlpha ? Letter::e_alpha(moved) : Letter::e_beta_star(moved);
        return std::pair{letter_matrix(target, f), word_matrix(w, f)};
      });
    }
  }
}

void suite_eo(const SuiteConfig& c, SuiteReport& rep) {
  if (c.n == 0 || c.n % 2 != 0) throw Error(ErrorKind::PreconditionViolated, "eo-equality needs even n >= 2");
  Rng rng(c.seed);
  Recorder rec(rep);
  const std::size_t n = c.n, m = c.m;
  for (std::size_t r = 0; r < rounds(c); ++r) {
    Ring R = symbolic(c) ? RingDescriptor::laurent(RingDescriptor::rationals(), {"a"}, {}) : concrete_ring(c);
    RingElement a = symbolic(c) ? R->variable("a") : random_element(R, rng);
    AmbientForm f(QuadraticSpace::hyperbolic(R, n), m, Ordering::Interleaved);
    for (std::size_t k = 1; k <= n + 2 * m; ++k)
      for (std::size_t l = k + 1; l <= n + 2 * m; ++l) {
        if (k == sigma_pair(l, n, m)) continue;
        std::string id = "eo-equality/" + std::to_string(r) + "/oe" + std::to_string(k) + "," + std::to_string(l);
        Json in = inputs_of(f, {{"k", k}, {"l", l}, {"a", a.to_string()}});
        rec.compare(id, "word_matrix(oe_to_dser(k, l, a)) = oe_kl(a)", in, [&] {
          Word w = oe_to_dser(k, l, a, f);
          if (!w.is_dser()) throw Error(ErrorKind::PreconditionViolated, "non-DSER output");
          return std::pair{oe_matrix(k, l, a, f), word_matrix(w, f)};
        });
      }
    for (const auto& e : single_letters(m, n, a, a)) {
      std::string id = "eo-equality/" + std::to_string(r) + "/" + e.to_string();
      Json in = inputs_of(f, {{"e", letter_to_json(e)}});
      rec.compare(id + "/to-oe", "dser_to_oe preserves the matrix", in,
                  [&] { return std::pair{letter_matrix(e, f), letter_matrix(dser_to_oe(e, f), f)}; });
      rec.holds(id + "/back", "oe_to_dser(dser_to_oe(e)) = e", in, [&] {
        Letter o = dser_to_oe(e, f);
        Word back = oe_to_dser(o.k(), o.l(), o.x, f);
        return back.size() == 1 && back.letters[0].kind == e.kind && back.letters[0].i == e.i &&
               back.letters[0].j == e.j && back.letters[0].x == e.x;
      });
    }
  }
}

void split_ring(const Ring& R, Recorder& rec) {
  const long n = R->modulus().get_si();
  if (n > 40) throw Error(ErrorKind::Unsupported, "split suite enumerates Zmod:n for n <= 40");
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d) {
          Matrix M = Matrix::from_integers(R, {{a, b}, {c, d}});
          if (!is_orthogonal(M, hyperbolic_gram(R, 1, Ordering::Interleaved))) continue;
          RingElement delta = M.determinant();
          bool unit_det = delta.is_one() || delta == R->neg(R->one());
          std::string id = "split/" + R->to_string() + "/" + M.to_string();
          Json in{{"ring", R->to_string()}, {"matrix", matrix_to_json(M)}};
          if (unit_det) {
            rec.compare(id, "realize(split(M)) = M", in, [&] { return std::pair{M, split_orthogonal_h(M).realize()}; });
          } else {
            rec.holds(id, "split(M) reports NotLocalRing", in, [&] {
              try {
                split_orthogonal_h(M);
              } catch (const Error& e) {
                return e.kind() == ErrorKind::NotLocalRing && e.witness() == delta.to_string();
              }
              return false;
            });
          }
        }
}

void suite_split(const SuiteConfig& c, SuiteReport& rep) {
  Recorder rec(rep);
  std::vector<Ring> rings;
  if (!symbolic(c) && parse_ring(c.ring)->kind() == RingKind::Mod)
    rings.push_back(parse_ring(c.ring));
  else
    rings = {parse_ring("Zmod:7"), parse_ring("Zmod:9")};
  rings.push_back(parse_ring("Zmod:15"));
  for (const auto& R : rings) split_ring(R, rec);
}

unsigned minimal_dilation(const LocalizedWord& w) {
  const Ring& L = w.local_ring();
  RingElement s = localize(w.s(), L);
  for (unsigned N = 0;; ++N) {
    bool ok = true;
    for (const auto& ll : w.letters) {
      auto coeffs = poly_coefficients(lift(ll.core.x, w.poly_ring()));
      for (std::size_t d = 0; d < coeffs.size() && ok; ++d)
        ok = clear_denominator_power(L->mul(coeffs[d], L->pow(s, static_cast<long>(N * d)))).first == 0;
    }
    if (ok) return N;
  }
}

void suite_dilation(const SuiteConfig& c, SuiteReport& rep) {
  Rng rng(c.seed);
  Recorder rec(rep);
  Ring Z = RingDescriptor::integers();
  for (long s : {2L, 3L, 6L})
    for (std::size_t r = 0; r < c.samples; ++r) {
      LocalizedWord w = random_localized_word(Z->from_integer(s), c.m, rng);
      std::string id = "dilation/s=" + std::to_string(s) + "/" + std::to_string(r);
      Json in = localized_word_to_json(w);
      rec.holds(id + "/kernel", "word is I at X = 0", in, [&] { return kernel_shape_check(w); });
      rec.holds(id + "/sound", "localize(word) = input(s^N X)", in, [&] { return dilation_sound(w, dilate(w)); });
      rec.holds(id + "/N", "N is the least power clearing every coefficient", in,
                [&] { return dilate(w).N == minimal_dilation(w); });
    }
}

void suite_normality(const SuiteConfig& c, SuiteReport& rep) {
  Rng rng(c.seed);
  Recorder rec(rep);
  Ring R = symbolic(c) ? RingDescriptor::rationals() : concrete_ring(c);
  for (std::size_t r = 0; r < c.samples; ++r) {
    AmbientForm f(random_diagonal(R, c.n, rng), c.m, c.ordering);
    Word g, e;
    long glen = uniform(rng, 1, 4), elen = uniform(rng, 1, 2);
    for (long t = 0; t < glen; ++t) g.push(random_conjugator(f, rng));
    for (long t = 0; t < elen; ++t) e.push(random_dser_letter(f, rng));
    std::string id = "normality/" + std::to_string(r);
    Json in = inputs_of(f, {{"g", word_to_json(g)}, {"e", word_to_json(e)}});
    rec.compare(id, "g e g^-1 = rewritten DSER word", in, [&] {
      Word w = conjugate_word(g, e, f, c.rules);
      if (!w.is_dser()) throw Error(ErrorKind::PreconditionViolated, "non-DSER output");
      Matrix G = word_matrix(g, f);
      return std::pair{G * word_matrix(e, f) * G.inverse(), word_matrix(w, f)};
    });
  }
}

using SuiteFn = void (*)(const SuiteConfig&, SuiteReport&);

SuiteFn lookup(const std::string& name) {
  if (name == "roy") return suite_roy;
  if (name == "n1-table") return suite_n1;
  if (name == "tau-sigma") return suite_tau_sigma;
  if (name == "block-oq") return suite_block;
  if (name == "eo-equality") return suite_eo;
  if (name == "split") return suite_split;
  if (name == "dilation") return suite_dilation;
  if (name == "normality") return suite_normality;
  throw Error(ErrorKind::Parse, "unknown suite '" + name + "'");
}

std::string ring_label(const std::string& suite, const SuiteConfig& c) {
  if (suite == "dilation") return "Z";
  return c.ring;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"roy",   "n1-table", "tau-sigma", "block-oq",
                                              "eo-equality", "split", "dilation", "normality"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& config) {
  if (config.n < 1 || config.n > 6 || config.m < 1 || config.m > 4)
    throw Error(ErrorKind::OutOfRange, "supported sizes are 1 <= n <= 6, 1 <= m <= 4");
  std::vector<std::string> todo;
  if (name == "all") {
    for (const auto& s : suite_names()) {
      if (s == "n1-table" && config.m < 2) continue;
      if (s == "eo-equality" && config.n % 2 != 0) continue;
      todo.push_back(s);
    }
  } else {
    lookup(name);
    todo.push_back(name);
  }
  if (!symbolic(config)) parse_ring(config.ring);
  std::vector<SuiteReport> out;
  for (const auto& s : todo) {
    SuiteReport rep;
    rep.suite = s;
    rep.ring = ring_label(s, config);
    rep.seed = config.seed;
    auto start = Clock::now();
    lookup(s)(config, rep);
    rep.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::sort(rep.failures.begin(), rep.failures.end(),
              [](const SuiteFailure& a, const SuiteFailure& b) { return a.id < b.id; });
    out.push_back(std::move(rep));
  }
  return out;
}

Json report_to_json(const std::vector<SuiteReport>& reports, bool timing) {
  Json j;
  j["v"] = 1;
  Json suites = Json::array();
  std::size_t total = 0;
  for (const auto& r : reports) {
    Json s;
    s["suite"] = r.suite;
    s["ring"] = r.ring;
    s["seed"] = r.seed;
    s["cases"] = r.cases;
    s["passed"] = r.ok();
    Json fails = Json::array();
    for (const auto& f : r.failures)
      fails.push_back({{"id", f.id}, {"identity", f.identity}, {"inputs", f.inputs}, {"expected", f.expected},
                       {"actual", f.actual}});
    s["failures"] = fails;
    if (timing) s["wall_seconds"] = r.wall_seconds;
    suites.push_back(s);
    total += r.failures.size();
  }
  j["suites"] = suites;
  j["failures"] = total;
  j["passed"] = total == 0;
  return j;
}

std::string report_to_text(const std::vector<SuiteReport>& reports, bool timing) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.suite << " [" << r.ring << ", seed " << r.seed << "]: " << r.cases << " cases, " << r.failures.size()
       << " failures";
    if (timing) os << ", " << r.wall_seconds << " s";
    os << '\n';
    for (const auto& f : r.failures) os << "  FAIL " << f.id << ": " << f.identity << '\n';
  }
  return os.str();
}

}  // namespace dser
