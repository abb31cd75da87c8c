#include "dser/cli.hpp"

#include <fstream>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dser/io.hpp"
#include "dser/suites.hpp"

namespace dser {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Output {
  bool text = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t to_index(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "bad index '" + s + "' in letter spec '" + spec + "'");
}

// Letter specs: tau:u:plane, sigma:u:plane, oe:k:l:a, ealpha:i:j:x, ebeta:i:j:x.
struct LetterSpec {
  std::string kind;
  std::size_t p = 0, q = 0;
  std::string param;
  std::string text;
};

LetterSpec parse_spec(const std::string& text) {
  auto parts = split(text, ':');
  LetterSpec s;
  s.text = text;
  if (parts.empty()) throw Error(ErrorKind::Parse, "empty letter spec");
  s.kind = parts[0];
  if (s.kind == "tau" || s.kind == "sigma") {
    if (parts.size() != 3) throw Error(ErrorKind::Parse, "expected " + s.kind + ":u:plane, got '" + text + "'");
    s.param = parts[1];
    s.p = to_index(parts[2], text);
  } else if (s.kind == "oe" || s.kind == "ealpha" || s.kind == "ebeta") {
    if (parts.size() != 4) throw Error(ErrorKind::Parse, "expected " + s.kind + ":i:j:x, got '" + text + "'");
    s.p = to_index(parts[1], text);
    s.q = to_index(parts[2], text);
    s.param = parts[3];
  } else {
    throw Error(ErrorKind::Parse, "unknown letter kind in '" + text + "'");
  }
  return s;
}

Letter build(const LetterSpec& s, const Ring& R) {
  RingElement x = parse_element(R, s.param);
  if (s.kind == "tau") return Letter::tau(x, s.p);
  if (s.kind == "sigma") return Letter::sigma_u(x, s.p);
  if (s.kind == "oe") return Letter::oe(s.p, s.q, x);
  if (s.kind == "ealpha") return Letter::alpha_single(s.p, s.q, x);
  return Letter::beta_star_single(s.p, s.q, x);
}

// Laurent ring over Q in every identifier used by the parameters and a diag: phi;
// torus units and diagonal entries are invertible.
Ring auto_ring(const std::vector<LetterSpec>& specs, const std::string& phi = "") {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::set<std::string> vars, inv;
  for (const auto& s : specs)
    for (std::sregex_iterator it(s.param.begin(), s.param.end(), ident), end; it != end; ++it) {
      vars.insert(it->str());
      if (s.kind == "tau" || s.kind == "sigma") inv.insert(it->str());
    }
  if (phi.rfind("diag:", 0) == 0)
    for (std::sregex_iterator it(phi.begin() + 5, phi.end(), ident), end; it != end; ++it) {
      vars.insert(it->str());
      inv.insert(it->str());
    }
  if (vars.empty()) return RingDescriptor::rationals();
  return RingDescriptor::laurent(RingDescriptor::rationals(), {vars.begin(), vars.end()}, {inv.begin(), inv.end()});
}

Matrix parse_phi(const std::string& spec, const Ring& R, std::size_t n) {
  if (spec.empty() || spec == "ones") {
    std::vector<RingElement> d(n, R->one());
    return QuadraticSpace::diagonal(R, d).gram();
  }
  if (spec == "hyperbolic") return QuadraticSpace::hyperbolic(R, n).gram();
  if (spec.rfind("diag:", 0) == 0) {
    std::vector<RingElement> d;
    for (const auto& e : split(spec.substr(5), ',')) d.push_back(parse_element(R, e));
    if (d.size() != n) throw Error(ErrorKind::Parse, "diag phi needs n entries");
    return QuadraticSpace::diagonal(R, d).gram();
  }
  Matrix phi = matrix_from_json(R, Json::parse(spec));
  if (phi.rows() != n) throw Error(ErrorKind::Parse, "phi must be n x n");
  return phi;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int certificate_exit(const Json& cert) { return cert.at("matrices_equal").get<bool>() ? kOk : kFailed; }

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elementary orthogonal group identities, rewriting and certificates", "dser"};
  app.require_subcommand(1);
  bool text = false;
  app.add_flag("--text", text, "human-readable output instead of JSON");
  app.add_flag("--json", [&](std::int64_t) { text = false; }, "JSON output (default)");
  app.fallthrough();

  // verify-identities
  SuiteConfig cfg;
  std::string suite, ordering = "interleaved", fault;
  bool timing = false;
  auto* verify = app.add_subcommand("verify-identities", "run a property suite");
  verify->add_option("--suite", suite, "roy, n1-table, tau-sigma, block-oq, eo-equality, split, dilation, normality, all")
      ->required();
  verify->add_option("--ring", cfg.ring, "ring descriptor, or 'laurent' for symbolic parameters");
  verify->add_option("--n", cfg.n, "rank of q");
  verify->add_option("--m", cfg.m, "number of hyperbolic planes");
  verify->add_option("--ordering", ordering, "grouped or interleaved");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--samples", cfg.samples, "random samples per suite");
  verify->add_option("--fault", fault, "corrupt one conjugation rule (fault injection)");
  verify->add_flag("--timing", timing, "include wall time in the report");

  // rewrite
  auto* rewrite = app.add_subcommand("rewrite", "translate between DSER letters and oe generators");
  rewrite->require_subcommand(1);
  std::size_t rn = 2, rm = 1, rk = 0, rl = 0;
  std::string ra = "a", rring, rletter;
  auto* o2d = rewrite->add_subcommand("oe-to-dser", "oe_kl(a) as a DSER word");
  o2d->add_option("--n", rn, "rank of q (even)");
  o2d->add_option("--m", rm, "number of hyperbolic planes");
  o2d->add_option("--k", rk)->required();
  o2d->add_option("--l", rl)->required();
  o2d->add_option("--a", ra, "parameter");
  o2d->add_option("--ring", rring, "ring descriptor (default: Laurent ring in the parameter's variables)");
  auto* d2o = rewrite->add_subcommand("dser-to-oe", "a single DSER letter as an oe generator");
  d2o->add_option("--n", rn, "rank of q (even)");
  d2o->add_option("--m", rm, "number of hyperbolic planes");
  d2o->add_option("--letter", rletter, "ealpha:i:j:x or ebeta:i:j:x")->required();
  d2o->add_option("--ring", rring, "ring descriptor");

  // conjugate
  std::vector<std::string> gspecs, especs;
  std::size_t cn = 1, cm = 1;
  std::string cring, cphi, cordering = "interleaved", cfault;
  auto* conj = app.add_subcommand("conjugate", "rewrite g e g^-1 as a DSER word");
  conj->add_option("--g", gspecs, "conjugator letters, outermost first (tau:u:p, sigma:u:p, oe:k:l:a, ealpha:i:j:x, ebeta:i:j:x)")
      ->required();
  conj->add_option("--e", especs, "DSER letters (ealpha:i:j:x, ebeta:i:j:x)")->required();
  conj->add_option("--n", cn, "rank of q");
  conj->add_option("--m", cm, "number of hyperbolic planes");
  conj->add_option("--ring", cring, "ring descriptor");
  conj->add_option("--phi", cphi, "ones, hyperbolic, diag:d1,...,dn or a JSON matrix");
  conj->add_option("--ordering", cordering, "grouped or interleaved");
  conj->add_option("--fault", cfault, "corrupt one conjugation rule (fault injection)");

  // split-oh
  std::string sring, smatrix;
  auto* splitc = app.add_subcommand("split-oh", "decompose an element of O(h) over a local ring");
  splitc->add_option("--ring", sring)->required();
  splitc->add_option("--matrix", smatrix, "JSON 2 x 2 matrix")->required();

  // dilate
  std::string dring, ds, dword;
  auto* dil = app.add_subcommand("dilate", "clear denominators of a localized word by X -> s^N X");
  dil->add_option("--ring", dring, "base ring (overrides the file)");
  dil->add_option("--s", ds, "localized element (overrides the file)");
  dil->add_option("--word", dword, "JSON file with the localized word, '-' for stdin")->required();

  // check
  std::string cert_path;
  auto* check = app.add_subcommand("check", "re-verify a certificate");
  check->add_option("certificate", cert_path, "certificate file, '-' for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      cfg.ordering = parse_ordering(ordering);
      if (!fault.empty()) cfg.rules = RuleTable::corrupted(fault);
      auto reports = run_suite(suite, cfg);
      if (text)
        out << report_to_text(reports, timing);
      else
        emit(out, report_to_json(reports, timing));
      for (const auto& r : reports)
        if (!r.ok()) return kFailed;
      return kOk;
    }

    if (o2d->parsed()) {
      Ring R = rring.empty() ? auto_ring({LetterSpec{"oe", rk, rl, ra, ""}}) : parse_ring(rring);
      AmbientForm f(QuadraticSpace::hyperbolic(R, rn), rm, Ordering::Interleaved);
      RingElement a = parse_element(R, ra);
      Word w = oe_to_dser(rk, rl, a, f);
      Json input{{"k", rk}, {"l", rl}, {"a", a.to_string()}};
      Json cert = word_certificate("oe-to-dser", input, Word{Letter::oe(rk, rl, a)}, w, f);
      if (text)
        out << Letter::oe(rk, rl, a).to_string() << " = " << w.to_string() << '\n';
      else
        emit(out, cert);
      return certificate_exit(cert);
    }

    if (d2o->parsed()) {
      LetterSpec s = parse_spec(rletter);
      if (s.kind != "ealpha" && s.kind != "ebeta")
        throw Error(ErrorKind::Parse, "dser-to-oe takes ealpha:i:j:x or ebeta:i:j:x");
      Ring R = rring.empty() ? auto_ring({s}) : parse_ring(rring);
      AmbientForm f(QuadraticSpace::hyperbolic(R, rn), rm, Ordering::Interleaved);
      Letter e = build(s, R);
      Letter o = dser_to_oe(e, f);
      Json cert = word_certificate("dser-to-oe", Json{{"letter", letter_to_json(e)}}, Word{e}, Word{o}, f);
      if (text)
        out << e.to_string() << " = " << o.to_string() << '\n';
      else
        emit(out, cert);
      return certificate_exit(cert);
    }

    if (conj->parsed()) {
      std::vector<LetterSpec> gs, es, all;
      for (const auto& t : gspecs) gs.push_back(parse_spec(t));
      for (const auto& t : especs) es.push_back(parse_spec(t));
      all.insert(all.end(), gs.begin(), gs.end());
      all.insert(all.end(), es.begin(), es.end());
      Ring R = cring.empty() ? auto_ring(all, cphi) : parse_ring(cring);
      AmbientForm f(QuadraticSpace(parse_phi(cphi, R, cn)), cm, parse_ordering(cordering));
      Word g, e;
      for (const auto& s : gs) g.push(build(s, R));
      for (const auto& s : es) e.push(build(s, R));
      RuleTable rules = cfault.empty() ? RuleTable::standard() : RuleTable::corrupted(cfault);
      Word w = conjugate_word(g, e, f, rules);
      Word lhs = g;
      lhs.append(e);
      lhs.append(inverse_word(g, f));
      Json input{{"g", word_to_json(g)}, {"e", word_to_json(e)}};
      Json cert = word_certificate("conjugate", input, lhs, w, f);
      if (text)
        out << w.to_string() << '\n';
      else
        emit(out, cert);
      return certificate_exit(cert);
    }

    if (splitc->parsed()) {
      Ring R = parse_ring(sring);
      Matrix M = matrix_from_json(R, Json::parse(smatrix));
      SplitResult r = split_orthogonal_h(M);
      Json cert = split_certificate(M, r);
      if (text)
        out << r.tag_name() << ' ' << r.u.to_string() << '\n';
      else
        emit(out, cert);
      return certificate_exit(cert);
    }

    if (dil->parsed()) {
      Json j = Json::parse(read_all(dword));
      if (!dring.empty()) j["base_ring"] = dring;
      if (!ds.empty()) j["s"] = ds;
      LocalizedWord w = localized_word_from_json(j);
      DilationResult r = dilate(w);
      Json cert = dilation_certificate(w, r);
      if (text)
        out << "N = " << r.N << "\n" << r.word.to_string() << '\n';
      else
        emit(out, cert);
      return certificate_exit(cert);
    }

    if (check->parsed()) {
      CheckOutcome c = check_certificate(Json::parse(read_all(cert_path)));
      if (text)
        out << (c.matrices_equal ? "ok: " : "FAILED: ") << c.detail << '\n';
      else
        emit(out, Json{{"matrices_equal", c.matrices_equal}, {"detail", c.detail}});
      return c.matrices_equal ? kOk : kFailed;
    }
  } catch (const Error& e) {
    if (!text)
      emit(out, Json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", e.witness()}}}});
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    if (!text) emit(out, Json{{"error", {{"kind", "Parse"}, {"message", e.what()}, {"witness", ""}}}});
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dser
