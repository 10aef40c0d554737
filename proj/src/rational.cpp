#include "pert/rational.hpp"

#include <algorithm>
#include <cctype>

namespace pert {

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw EngineError("BadNumber", "empty numeric string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw EngineError("BadNumber", "zero denominator in '" + raw + "'");
    return Rat(p, q);
  }
  // decimal / scientific form
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw EngineError("BadNumber", "bad numeric string '" + raw + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw EngineError("BadNumber", "bad numeric string '" + raw + "'");
    }
  }
  long exp10 = 0;
  if (i < s.size()) {  // exponent part
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) throw EngineError("BadNumber", "bad exponent in '" + raw + "'");
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw EngineError("BadNumber", "bad exponent in '" + raw + "'");
      exp10 = exp10 * 10 + (s[i] - '0');
    }
    if (eneg) exp10 = -exp10;
  }
  if (!seen_digit) throw EngineError("BadNumber", "bad numeric string '" + raw + "'");
  Int num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  Rat r(num);
  long shift = exp10 - frac_digits;
  Int ten(10);
  if (shift > 0)
    r *= Rat(boost::multiprecision::pow(ten, static_cast<unsigned>(shift)));
  else if (shift < 0)
    r /= Rat(boost::multiprecision::pow(ten, static_cast<unsigned>(-shift)));
  return r;
}

std::string rat_to_string(const Rat& r) {
  const Int& num = boost::multiprecision::numerator(r);
  const Int& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rat sqrt_lower(const Rat& x, unsigned prec_bits) {
  if (x < 0) throw EngineError("BadNumber", "sqrt of negative");
  if (x == 0) return Rat(0);
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^prec for the bit budget.
  Int p = boost::multiprecision::numerator(x);
  Int q = boost::multiprecision::denominator(x);
  Int scaled = (p * q) << (2 * prec_bits);
  Int root = boost::multiprecision::sqrt(scaled);  // floor sqrt
  return Rat(root, q << prec_bits);
}

Rat sqrt_upper(const Rat& x, unsigned prec_bits) {
  if (x < 0) throw EngineError("BadNumber", "sqrt of negative");
  if (x == 0) return Rat(0);
  Int p = boost::multiprecision::numerator(x);
  Int q = boost::multiprecision::denominator(x);
  Int scaled = (p * q) << (2 * prec_bits);
  Int root = boost::multiprecision::sqrt(scaled) + 1;
  return Rat(root, q << prec_bits);
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw EngineError("DimMismatch", "dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat norm_sq(const RatVec& a) { return dot(a, a); }

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw EngineError("DimMismatch", "sub: size mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw EngineError("DimMismatch", "add: size mismatch");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec scale(const Rat& c, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool unit_dist_sq_lt(const RatVec& a, const RatVec& b, const Rat& t) {
  // ||a^ - b^||^2 = 2 - 2 (a.b)/sqrt(|a|^2 |b|^2)  <  t
  //   <=>  (2 - t) * sqrt(A*B) < 2 (a.b),  A = |a|^2, B = |b|^2.
  Rat A = norm_sq(a), B = norm_sq(b);
  if (A == 0 || B == 0) throw EngineError("BadNumber", "unit_dist: zero vector");
  Rat d = dot(a, b);
  // Inequality: lhs * sqrt(AB) < rhs2 with lhs = 2 - t, rhs2 = 2 (a.b).
  Rat lhs = 2 - t;
  Rat rhs2 = 2 * d;
  if (lhs == 0) return rhs2 > 0;
  if (lhs > 0) {
    if (rhs2 <= 0) return false;
    return lhs * lhs * A * B < rhs2 * rhs2;
  }
  // lhs < 0: holds unless rhs2 is at least as negative.
  if (rhs2 >= 0) return true;
  return lhs * lhs * A * B > rhs2 * rhs2;
}

std::uint64_t substream_seed(std::uint64_t seed, const std::string& label) {
  // FNV-1a over the label folded into a splitmix64 round.
  std::uint64_t h = 14695981039346656037ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace pert
