#ifndef QF_BIGINT_HPP
#define QF_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  return Int(s);
}

// Parses "n" or "n/d" with d > 0 after reduction.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rat(num, den);
}

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Int pow_int(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Largest m with m*m <= n, for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

inline int64_t to_i64(const Int& n) {
  return n.convert_to<int64_t>();
}

}  // namespace qf

#endif
