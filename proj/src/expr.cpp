#include "demazure/expr.hpp"

#include <cctype>

namespace demazure {

namespace {

Weight parse_weight_text(const RootDatum& d, const std::string& s) {
  Weight out(d.rank(), 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw AlgebraError("cannot parse weight '" + s + "': " + what);
  };
  bool first = true;
  while (true) {
    skip();
    if (pos >= s.size()) break;
    int sign = 1;
    if (s[pos] == '-' || s[pos] == '+') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    long coeff = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      coeff = std::stol(s.substr(start, pos - start));
      skip();
      if (pos < s.size() && s[pos] == '*') ++pos;
      skip();
    }
    if (pos >= s.size() || (s[pos] != 'a' && s[pos] != 'w')) fail("expected aK or wK");
    const char kind = s[pos++];
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("missing index");
    const long idx = std::stol(s.substr(start, pos - start));
    if (idx < 1 || idx > d.rank()) fail("index out of range");
    Weight unit(d.rank(), 0);
    unit[idx - 1] = 1;
    if (kind == 'a') unit = d.simple_to_weight(unit);
    for (int i = 0; i < d.rank(); ++i) out[i] += sign * static_cast<int>(coeff) * unit[i];
    first = false;
  }
  if (first) fail("empty weight");
  return out;
}

class Parser {
 public:
  Parser(const Ring& ring, const std::string& text) : ring_(ring), s_(text) {}

  QElem parse() {
    QElem out = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("cannot parse '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool eat_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  QElem expr() {
    QElem acc = term();
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  QElem term() {
    QElem acc = unary();
    while (true) {
      if (eat('*'))
        acc = acc * unary();
      else if (eat('/'))
        acc = acc * ring_.inverse(unary());
      else
        return acc;
    }
  }
  QElem unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  QElem power() {
    QElem base = atom();
    if (!eat('^')) return base;
    bool negative = eat('-');
    long e = integer();
    QElem out = ring_.one();
    for (long k = 0; k < e; ++k) out = out * base;
    return negative ? ring_.inverse(out) : out;
  }
  QElem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return ring_.lift(Poly::constant(Int(s_.substr(start, pos_ - start))));
    }
    if (eat('(')) {
      QElem inner = expr();
      expect(')');
      return inner;
    }
    if (eat_word("kappa(")) {
      Weight w = weight();
      expect(')');
      return ring_.lift(ring_.kappa(w));
    }
    if (eat_word("xh(")) {
      Weight w = weight();
      expect(')');
      auto root = ring_.datum().root_index(w);
      if (!root) fail("xh() needs a root");
      const auto kind = ring_.backend().with_h ? FactorSymbol::Kind::hat_additive
                                               : FactorSymbol::Kind::hat_multiplicative;
      return ring_.lift(ring_.expand(FactorSymbol{kind, *root}));
    }
    if (eat_word("x(")) {
      Weight w = weight();
      expect(')');
      return ring_.lift(ring_.x_class(w));
    }
    if (eat_word("e(")) {
      Weight w = weight();
      expect(')');
      return ring_.lift(ring_.exp_weight(w));
    }
    if (c == 't') {
      ++pos_;
      long var = integer();
      if (var < 1 || var > ring_.datum().rank()) fail("variable index out of range");
      if (ring_.backend().law != Law::additive) fail("t variables need the additive backend");
      return ring_.lift(Poly::monomial(Mono::var(static_cast<int>(var - 1))));
    }
    if (c == 'h') {
      ++pos_;
      return ring_.lift(ring_.h());
    }
    if (c == 'v') {
      ++pos_;
      return ring_.lift(ring_.v());
    }
    if (c == 'q') {
      ++pos_;
      return ring_.lift(ring_.q());
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // Weight argument up to the closing parenthesis.
  Weight weight() {
    const std::size_t close = s_.find(')', pos_);
    if (close == std::string::npos) fail("unterminated weight");
    Weight w = parse_weight_text(ring_.datum(), s_.substr(pos_, close - pos_));
    pos_ = close;
    return w;
  }

  const Ring& ring_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

QElem parse_expression(const Ring& ring, const std::string& text) {
  Parser p(ring, text);
  return p.parse();
}

Weight parse_weight(const RootDatum& d, const std::string& text) { return parse_weight_text(d, text); }

}  // namespace demazure
