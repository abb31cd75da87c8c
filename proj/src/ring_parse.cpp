#include <cctype>

#include "dser/rings.hpp"

namespace dser {

namespace {

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string bracket_body(const std::string& text, const std::string& whole) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorKind::Parse, "expected [..] list in ring descriptor '" + whole + "'", text);
  return text.substr(1, text.size() - 2);
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

class ElementParser {
 public:
  ElementParser(const Ring& ring, const std::string& text) : ring_(ring), text_(text) {}

  RingElement parse() {
    RingElement v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'", text_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  mpz_class integer(bool allow_sign) {
    skip_ws();
    std::string digits;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) digits += text_[pos_++];
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (digits.empty() || digits == "-" || digits == "+") fail("expected integer");
    if (digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits);
  }

  RingElement expr() {
    bool negate = accept('-');
    RingElement acc = term();
    if (negate) acc = ring_->neg(acc);
    for (;;) {
      if (accept('+'))
        acc = ring_->add(acc, term());
      else if (accept('-'))
        acc = ring_->sub(acc, term());
      else
        return acc;
    }
  }

  RingElement term() {
    RingElement acc = factor();
    while (accept('*')) acc = ring_->mul(acc, factor());
    return acc;
  }

  RingElement factor() {
    RingElement v = atom();
    if (accept('^')) {
      bool paren = accept('(');
      mpz_class e = integer(true);
      if (paren && !accept(')')) fail("expected ')'");
      if (!e.fits_slong_p()) fail("exponent too large");
      v = ring_->pow(v, e.get_si());
    }
    while (accept('/')) {
      mpz_class d = integer(false);
      v = ring_->divide_by_integer(v, d);
    }
    return v;
  }

  RingElement atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RingElement v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ring_->from_integer(integer(false));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      return ring_->variable(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const Ring& ring_;
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ring parse_ring(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  if (text == "Z") return RingDescriptor::integers();
  if (text == "Q") return RingDescriptor::rationals();
  if (starts_with(text, "Zmod:")) {
    std::string digits = text.substr(5);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Parse, "bad modulus in '" + raw + "'", digits);
    return RingDescriptor::mod(mpz_class(digits));
  }
  if (starts_with(text, "laurent:")) {
    std::string rest = text.substr(8);
    std::vector<std::string> inv;
    auto ip = rest.rfind(":inv=");
    if (ip != std::string::npos) {
      inv = split_list(bracket_body(rest.substr(ip + 5), raw));
      rest = rest.substr(0, ip);
    }
    auto vp = rest.rfind(":[");
    if (vp == std::string::npos) throw Error(ErrorKind::Parse, "missing variable list in '" + raw + "'", raw);
    auto vars = split_list(bracket_body(rest.substr(vp + 1), raw));
    return RingDescriptor::laurent(parse_ring(rest.substr(0, vp)), vars, inv);
  }
  if (starts_with(text, "loc:")) {
    std::string rest = text.substr(4);
    auto sp = rest.rfind(":s=");
    if (sp == std::string::npos) throw Error(ErrorKind::Parse, "missing s= in '" + raw + "'", raw);
    Ring base = parse_ring(rest.substr(0, sp));
    return RingDescriptor::localized(base, parse_element(base, rest.substr(sp + 3)));
  }
  if (starts_with(text, "poly:")) {
    std::string rest = text.substr(5);
    auto vp = rest.rfind(':');
    if (vp == std::string::npos || vp + 1 == rest.size())
      throw Error(ErrorKind::Parse, "missing variable in '" + raw + "'", raw);
    return RingDescriptor::poly(parse_ring(rest.substr(0, vp)), rest.substr(vp + 1));
  }
  throw Error(ErrorKind::Parse, "unknown ring descriptor '" + raw + "'", raw);
}

RingElement parse_element(const Ring& ring, const std::string& text) { return ElementParser(ring, text).parse(); }

}  // namespace dser
