#pragma once

// Exact scalars: roots of unity of a global order N and rational linear
// combinations of them.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shifttower {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string to_string(const Rational& q);

/// ζ_N^exponent with ζ_N = exp(2πi/N); exponent kept in [0, N).
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(int order, long long exponent);

  static RootOfUnity one(int order) { return RootOfUnity(order, 0); }

  int order() const { return order_; }
  int exponent() const { return exponent_; }
  bool is_one() const { return exponent_ == 0; }

  RootOfUnity inverse() const { return RootOfUnity(order_, -static_cast<long long>(exponent_)); }
  RootOfUnity pow(long long k) const;
  std::complex<double> value() const;

  friend RootOfUnity operator*(RootOfUnity a, RootOfUnity b);
  friend bool operator==(RootOfUnity a, RootOfUnity b) = default;

 private:
  int order_ = 1;
  int exponent_ = 0;
};

/// Formal sum Σ_k c_k ζ_N^k with rational c_k. Stored terms are never zero.
/// Equality is field equality in Q(ζ_N) (decided by reduction modulo the
/// N-th cyclotomic polynomial), not formal equality of the term maps.
class CycNumber {
 public:
  explicit CycNumber(int order = 1) : order_(order) {}

  static CycNumber zero(int order) { return CycNumber(order); }
  static CycNumber from_rational(int order, const Rational& q);
  static CycNumber from_root(RootOfUnity z, const Rational& coeff = Rational(1));

  int order() const { return order_; }
  const std::map<int, Rational>& terms() const { return terms_; }

  /// No stored terms. Implies is_zero(); the converse fails for
  /// e.g. 1 + ζ_2.
  bool formally_zero() const { return terms_.empty(); }
  bool is_zero() const;

  /// Single term c·ζ^k, if the formal sum has exactly one.
  std::optional<std::pair<RootOfUnity, Rational>> single_term() const;
  /// The value as a rational, when it lies in Q.
  std::optional<Rational> as_rational() const;

  CycNumber conj() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  CycNumber& operator+=(const CycNumber& o);
  CycNumber& operator-=(const CycNumber& o);
  CycNumber& operator*=(const CycNumber& o);

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator*(const CycNumber& a, const Rational& q);
  friend CycNumber operator*(const CycNumber& a, RootOfUnity z);
  friend CycNumber operator-(const CycNumber& a);
  friend bool operator==(const CycNumber& a, const CycNumber& b);

 private:
  void add_term(int exponent, const Rational& c);
  void check_order(const CycNumber& o) const;

  int order_;
  std::map<int, Rational> terms_;
};

inline CycNumber cyc_add(const CycNumber& x, const CycNumber& y) { return x + y; }
inline CycNumber cyc_mul(const CycNumber& x, const CycNumber& y) { return x * y; }
inline CycNumber cyc_neg(const CycNumber& x) { return -x; }

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
const std::vector<BigInt>& cyclotomic_polynomial(int order);

/// Remainder of Σ c_k x^k modulo Φ_N; length φ(N).
std::vector<Rational> reduce_cyclotomic(int order, const std::map<int, Rational>& terms);

long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

}  // namespace shifttower
