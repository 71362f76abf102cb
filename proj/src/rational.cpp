#include "berkred/rational.hpp"

#include <cctype>

namespace berk {

int ord_p(const Integer& n, unsigned long p) {
  if (n == 0) throw Error("ord_p of zero");
  Integer m = abs(n);
  int k = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++k;
  }
  return k;
}

int ord_p(const Rational& q, unsigned long p) {
  return ord_p(q.get_num(), p) - ord_p(q.get_den(), p);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error("empty rational literal");
  auto valid = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den)) throw Error("malformed rational literal '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw Error("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

unsigned long mod_p(const Rational& q, unsigned long p) {
  Integer P(p);
  Integer num = q.get_num() % P;
  if (num < 0) num += P;
  Integer den = q.get_den() % P;
  if (den == 0) throw Error("mod_p: rational is not p-integral");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  Integer r = (num * inv) % P;
  return r.get_ui();
}

}  // namespace berk
