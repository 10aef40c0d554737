#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy shared by all modules. The code string is stable and
// machine-readable; it surfaces in reports and exit diagnostics.
class EngineError : public std::runtime_error {
public:
  EngineError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline Rat rat_from_double(double x) {
  if (!(x == x) || x - x != 0.0) throw EngineError("NonFinite", "non-finite number");
  return Rat(x);  // exact binary expansion
}

double rat_to_double(const Rat& r);

// Accepts "p/q", plain integers, and decimal strings ("-0.25", "1e-3").
Rat rat_parse(const std::string& s);

std::string rat_to_string(const Rat& r);

// Rational sqrt bounds: lo*lo <= x and x <= hi*hi, with hi - lo <= x-scaled
// 2^-prec_bits relative slack. Input must be >= 0.
Rat sqrt_lower(const Rat& x, unsigned prec_bits = 100);
Rat sqrt_upper(const Rat& x, unsigned prec_bits = 100);

using RatVec = std::vector<Rat>;

Rat dot(const RatVec& a, const RatVec& b);
Rat norm_sq(const RatVec& a);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& c, const RatVec& a);

// Decides ||a/|a| - b/|b||^2 < t exactly for nonzero a, b.
bool unit_dist_sq_lt(const RatVec& a, const RatVec& b, const Rat& t);

// Deterministic substream derivation: all randomness in the engine flows
// from one 64-bit seed; each consumer derives its stream with a label.
std::uint64_t substream_seed(std::uint64_t seed, const std::string& label);

}  // namespace pert
