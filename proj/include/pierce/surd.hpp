#pragma once

// Exact sign decisions for expressions built from rationals, +, -, * and
// square roots of nonnegative rationals.
//
// A SurdSum is kept in the normal form  sum_i c_i * sqrt(r_i)  with rational
// c_i and distinct square-free positive integer radicands r_i.  Square roots
// of distinct square-free integers are linearly independent over Q, so the
// expression is zero iff every coefficient is zero.  Nonzero signs are found
// by interval refinement with exact integer square roots.

#include <map>
#include <utility>

#include "pierce/rational.hpp"

namespace pierce {

namespace detail {

// Splits n > 0 into (outer, inner) with n = outer^2 * inner. inner is
// square-free when n has no repeated prime factor above the trial bound.
inline std::pair<Integer, Integer> split_square(Integer n) {
  Integer outer = 1;
  Integer inner = 1;
  for (unsigned long p = 2; p < 100000; p += (p == 2 ? 1 : 2)) {
    Integer pp = p;
    if (pp * pp > n) break;
    while (n % (pp * pp) == 0) {
      n /= pp * pp;
      outer *= pp;
    }
    if (n % pp == 0) {
      n /= pp;
      inner *= pp;
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    outer *= r;
  } else {
    inner *= n;
  }
  return {outer, inner};
}

// floor(sqrt(r) * 2^bits) for integer r >= 0.
inline Integer scaled_isqrt(const Integer& r, unsigned bits) {
  Integer s = r;
  s <<= 2 * bits;
  Integer out;
  mpz_sqrt(out.get_mpz_t(), s.get_mpz_t());
  return out;
}

}  // namespace detail

class SurdSum {
 public:
  SurdSum() = default;
  SurdSum(const Scalar& q) {  // NOLINT(google-explicit-constructor)
    if (q != 0) terms_[Integer(1)] = q;
  }
  SurdSum(long v) : SurdSum(Scalar(v)) {}  // NOLINT

  // sqrt(q) for rational q >= 0.
  static SurdSum sqrt(const Scalar& q) {
    if (q < 0) throw Error(ErrorCode::DegenerateInput, "sqrt of negative rational");
    SurdSum out;
    if (q == 0) return out;
    // sqrt(p/d) = sqrt(p*d) / d
    Integer pd = q.get_num() * q.get_den();
    auto [outer, inner] = detail::split_square(pd);
    Scalar coeff(outer, q.get_den());
    coeff.canonicalize();
    out.terms_[inner] = coeff;
    return out;
  }

  SurdSum& operator+=(const SurdSum& o) {
    for (const auto& [r, c] : o.terms_) add_term(r, c);
    return *this;
  }
  SurdSum& operator-=(const SurdSum& o) {
    for (const auto& [r, c] : o.terms_) add_term(r, -c);
    return *this;
  }
  friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
  friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }
  friend SurdSum operator-(const SurdSum& a) { return SurdSum() - a; }

  friend SurdSum operator*(const SurdSum& a, const SurdSum& b) {
    SurdSum out;
    for (const auto& [ra, ca] : a.terms_) {
      for (const auto& [rb, cb] : b.terms_) {
        // sqrt(ra) * sqrt(rb) = g * sqrt(ra*rb/g^2), g = gcd(ra, rb)
        Integer g;
        mpz_gcd(g.get_mpz_t(), ra.get_mpz_t(), rb.get_mpz_t());
        Integer rad = (ra / g) * (rb / g);
        out.add_term(rad, Scalar(ca * cb * g));
      }
    }
    return out;
  }
  SurdSum& operator*=(const SurdSum& o) { return *this = *this * o; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }
  Scalar rational_part() const {
    auto it = terms_.find(Integer(1));
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  const std::map<Integer, Scalar>& terms() const { return terms_; }

  double approx() const {
    double v = 0;
    for (const auto& [r, c] : terms_) v += c.get_d() * std::sqrt(r.get_d());
    return v;
  }

  // Sign by interval refinement. Throws PrecisionExhausted past max_bits.
  int sign(unsigned max_bits = 4096) const {
    if (terms_.empty()) return 0;
    if (is_rational()) return pierce::sign(terms_.begin()->second);
    for (unsigned bits = 32; bits <= max_bits; bits *= 2) {
      Integer unit = 1;
      unit <<= bits;
      Scalar lo = 0;
      Scalar hi = 0;
      for (const auto& [r, c] : terms_) {
        Integer f = detail::scaled_isqrt(r, bits);
        Scalar s_lo(f, unit);
        Scalar s_hi(f + 1, unit);
        s_lo.canonicalize();
        s_hi.canonicalize();
        if (r == 1) s_hi = s_lo;
        if (c >= 0) {
          lo += c * s_lo;
          hi += c * s_hi;
        } else {
          lo += c * s_hi;
          hi += c * s_lo;
        }
      }
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
    throw Error(ErrorCode::PrecisionExhausted, "sign undecided after refinement");
  }

 private:
  void add_term(const Integer& rad, const Scalar& c) {
    if (c == 0) return;
    auto [outer, inner] = detail::split_square(rad);
    Scalar coeff = c * outer;
    auto& slot = terms_[inner];
    slot += coeff;
    if (slot == 0) terms_.erase(inner);
  }

  std::map<Integer, Scalar> terms_;
};

inline int refine_sign(const SurdSum& expr, unsigned max_bits = 4096) {
  return expr.sign(max_bits);
}

// a + b*sqrt(D) with a fixed rational D >= 0. Cheaper than SurdSum for the
// circle-intersection points where every coordinate shares one radicand.
struct QuadNumber {
  Scalar a;
  Scalar b;

  int sign(const Scalar& D) const {
    int sa = pierce::sign(a);
    int sb = (D == 0) ? 0 : pierce::sign(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 D
    Scalar lhs = a * a;
    Scalar rhs = b * b * D;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  double approx(const Scalar& D) const { return a.get_d() + b.get_d() * std::sqrt(D.get_d()); }
};

inline QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) { return {x.a + y.a, x.b + y.b}; }
inline QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) { return {x.a - y.a, x.b - y.b}; }

inline QuadNumber mul(const QuadNumber& x, const QuadNumber& y, const Scalar& D) {
  return {x.a * y.a + x.b * y.b * D, x.a * y.b + x.b * y.a};
}

}  // namespace pierce
