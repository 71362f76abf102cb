#include "berkred/expr.hpp"

#include <cctype>

namespace berk {

namespace {

using SP = Poly<Scalar>;

class Parser {
public:
  Parser(const std::string& text, const FieldConfig* cfg) : s_(text), cfg_(cfg) {}

  ScalarFraction run() {
    ScalarFraction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error("syntax error at position " + std::to_string(pos_) + ": " + why + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar zero() const { return Scalar(cfg_, 0L); }
  ScalarFraction constant(const Scalar& c) const { return {SP::constant(c), SP::constant(Scalar(cfg_, 1L))}; }

  // Keep constant denominators folded into the numerator.
  ScalarFraction tidy(ScalarFraction f) const {
    if (f.den.is_zero()) fail("division by zero");
    if (f.den.degree() == 0 && !(f.den[0] == Scalar(cfg_, 1L))) {
      Scalar inv = f.den[0].inverse();
      f.num = f.num.scaled(inv);
      f.den = SP::constant(Scalar(cfg_, 1L));
    }
    return f;
  }

  ScalarFraction add(const ScalarFraction& a, const ScalarFraction& b, bool minus) const {
    SP bn = minus ? -b.num : b.num;
    if (a.den == b.den) return tidy({a.num + bn, a.den});
    return tidy({a.num * b.den + bn * a.den, a.den * b.den});
  }

  ScalarFraction mul(const ScalarFraction& a, const ScalarFraction& b) const {
    return tidy({a.num * b.num, a.den * b.den});
  }

  ScalarFraction div(const ScalarFraction& a, const ScalarFraction& b) const {
    if (b.num.is_zero()) fail("division by zero");
    return tidy({a.num * b.den, a.den * b.num});
  }

  ScalarFraction expr() {
    ScalarFraction acc = term();
    for (;;) {
      if (eat('+'))
        acc = add(acc, term(), false);
      else if (eat('-'))
        acc = add(acc, term(), true);
      else
        return acc;
    }
  }

  ScalarFraction term() {
    bool neg = false;
    for (;;) {
      if (eat('-'))
        neg = !neg;
      else if (!eat('+'))
        break;
    }
    ScalarFraction acc = factor();
    for (;;) {
      if (eat('*'))
        acc = mul(acc, factor());
      else if (eat('/'))
        acc = div(acc, factor());
      else
        break;
    }
    if (neg) acc.num = -acc.num;
    return acc;
  }

  ScalarFraction factor() {
    ScalarFraction b = base();
    if (!eat('^')) return b;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long k = std::stol(s_.substr(start, pos_ - start));
    ScalarFraction r = constant(Scalar(cfg_, 1L));
    for (long i = 0; i < k; ++i) r = mul(r, b);
    if (neg) r = div(constant(Scalar(cfg_, 1L)), r);
    return r;
  }

  ScalarFraction base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarFraction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(Scalar(cfg_, Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string word = s_.substr(start, pos_ - start);
      if (word == "z") return {SP::variable(zero()), SP::constant(Scalar(cfg_, 1L))};
      if (word == "pi") return constant(Scalar::pi(cfg_));
      if (word == "t") return constant(Scalar::param_t(cfg_));
      if (word == "s") return constant(Scalar::param_s(cfg_));
      pos_ = start;
      fail("unknown identifier '" + word + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  const FieldConfig* cfg_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarFraction parse_expression(const std::string& text, const FieldConfig* cfg) { return Parser(text, cfg).run(); }

Scalar parse_scalar(const std::string& text, const FieldConfig* cfg) {
  ScalarFraction f = parse_expression(text, cfg);
  if (f.num.degree() > 0 || f.den.degree() > 0) throw Error("expected a scalar, got an expression in z: " + text);
  if (f.num.is_zero()) return Scalar(cfg, 0L);
  return f.num[0] / f.den[0];
}

}  // namespace berk
