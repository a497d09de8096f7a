#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pierce/error.hpp"

namespace pierce {

// Exact rational scalar. mpq_class keeps values canonical after every
// arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q", "-p/q" and decimal strings like "0.125".
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational");
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      bool neg = s[0] == '-';
      std::string digits = s.substr(neg ? 1 : 0);
      dot = digits.find('.');
      std::string whole = digits.substr(0, dot);
      std::string frac = digits.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::Parse, "bad decimal '" + s + "'");
      Integer num(whole + frac);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Scalar q(num, den);
      q.canonicalize();
      return neg ? Scalar(-q) : q;
    }
    Scalar q(s);
    if (q.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
  }
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

inline double to_double(const Scalar& q) { return q.get_d(); }

inline Integer floor_int(const Scalar& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_int(const Scalar& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline long floor_long(const Scalar& q) { return floor_int(q).get_si(); }
inline long ceil_long(const Scalar& q) { return ceil_int(q).get_si(); }

inline int sign(const Scalar& q) { return sgn(q); }

// Nearest rational with denominator 2^bits.
inline Scalar dyadic(double v, int bits = 40) {
  Integer num(std::nearbyint(std::ldexp(v, bits)));
  Integer den = 1;
  den <<= bits;
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

// Rational with the given decimal denominator, nearest to v.
inline Scalar rational_near(double v, long den) {
  Scalar q(Integer(std::nearbyint(v * static_cast<double>(den))), Integer(den));
  q.canonicalize();
  return q;
}

inline Scalar min(const Scalar& a, const Scalar& b) { return a < b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace pierce
