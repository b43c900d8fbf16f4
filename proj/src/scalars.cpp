#include "shifttower/scalars.hpp"

#include "shifttower/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace shifttower {

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

long long gcd_ll(long long a, long long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

namespace {

int mod_pos(long long x, int n) {
  long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

RootOfUnity::RootOfUnity(int order, long long exponent) : order_(order) {
  if (order < 1) throw ShapeError("root of unity order must be positive");
  exponent_ = mod_pos(exponent, order);
}

RootOfUnity RootOfUnity::pow(long long k) const {
  return RootOfUnity(order_, static_cast<long long>(exponent_) * (k % order_));
}

std::complex<double> RootOfUnity::value() const {
  // Exact values on the axes keep dense oracles free of 1e-17 noise.
  if (exponent_ == 0) return {1.0, 0.0};
  if (2 * exponent_ == order_) return {-1.0, 0.0};
  if (4 * exponent_ == order_) return {0.0, 1.0};
  if (4 * exponent_ == 3 * order_) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * exponent_ / order_;
  return {std::cos(angle), std::sin(angle)};
}

RootOfUnity operator*(RootOfUnity a, RootOfUnity b) {
  if (a.order_ != b.order_) throw ShapeError("root of unity order mismatch");
  return RootOfUnity(a.order_, static_cast<long long>(a.exponent_) + b.exponent_);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<BigInt> divide_monic(std::vector<BigInt> p, const std::vector<BigInt>& q) {
  const int dq = static_cast<int>(q.size()) - 1;
  std::vector<BigInt> quot(p.size() - dq, 0);
  for (int k = static_cast<int>(p.size()) - 1; k >= dq; --k) {
    BigInt c = p[k];
    quot[k - dq] = c;
    for (int t = 0; t <= dq; ++t) p[k - dq + t] -= c * q[t];
  }
  return quot;
}

const std::vector<BigInt>& cyclotomic_memo(int order, std::map<int, std::vector<BigInt>>& memo) {
  if (auto it = memo.find(order); it != memo.end()) return it->second;
  std::vector<BigInt> poly(order + 1, 0);
  poly[0] = -1;
  poly[order] = 1;
  for (int d = 1; d < order; ++d)
    if (order % d == 0) poly = divide_monic(std::move(poly), cyclotomic_memo(d, memo));
  return memo.emplace(order, std::move(poly)).first->second;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<BigInt>> cache;
  if (order < 1) throw ShapeError("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  return cyclotomic_memo(order, cache);
}

std::vector<Rational> reduce_cyclotomic(int order, const std::map<int, Rational>& terms) {
  const auto& phi = cyclotomic_polynomial(order);
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<Rational> poly(std::max(order, deg), Rational(0));
  for (const auto& [k, c] : terms) poly[k] += c;
  for (int k = static_cast<int>(poly.size()) - 1; k >= deg; --k) {
    if (poly[k] == 0) continue;
    Rational c = poly[k];
    int shift = k - deg;
    for (int t = 0; t <= deg; ++t) poly[shift + t] -= c * Rational(phi[t]);
  }
  poly.resize(deg);
  return poly;
}

// ---------------------------------------------------------------------------

CycNumber CycNumber::from_rational(int order, const Rational& q) {
  CycNumber x(order);
  x.add_term(0, q);
  return x;
}

CycNumber CycNumber::from_root(RootOfUnity z, const Rational& coeff) {
  CycNumber x(z.order());
  x.add_term(z.exponent(), coeff);
  return x;
}

void CycNumber::add_term(int exponent, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void CycNumber::check_order(const CycNumber& o) const {
  if (order_ != o.order_) throw ShapeError("cyclotomic order mismatch");
}

bool CycNumber::is_zero() const {
  if (terms_.empty()) return true;
  for (const auto& c : reduce_cyclotomic(order_, terms_))
    if (c != 0) return false;
  return true;
}

std::optional<std::pair<RootOfUnity, Rational>> CycNumber::single_term() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [k, c] = *terms_.begin();
  return std::make_pair(RootOfUnity(order_, k), c);
}

std::optional<Rational> CycNumber::as_rational() const {
  if (terms_.empty()) return Rational(0);
  auto red = reduce_cyclotomic(order_, terms_);
  for (size_t k = 1; k < red.size(); ++k)
    if (red[k] != 0) return std::nullopt;
  return red.empty() ? Rational(0) : red[0];
}

CycNumber CycNumber::conj() const {
  CycNumber x(order_);
  for (const auto& [k, c] : terms_) x.add_term(mod_pos(-k, order_), c);
  return x;
}

std::complex<double> CycNumber::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [k, c] : terms_)
    acc += static_cast<double>(c) * RootOfUnity(order_, k).value();
  return acc;
}

std::string CycNumber::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << shifttower::to_string(c);
    } else {
      if (c != 1) os << '(' << shifttower::to_string(c) << ")*";
      os << "z" << order_ << '^' << k;
    }
  }
  return os.str();
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
  check_order(o);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) {
  check_order(o);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& o) {
  *this = *this * o;
  return *this;
}

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
  a.check_order(b);
  CycNumber x(a.order_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) x.add_term((ka + kb) % a.order_, ca * cb);
  return x;
}

CycNumber operator*(const CycNumber& a, const Rational& q) {
  CycNumber x(a.order_);
  if (q == 0) return x;
  for (const auto& [k, c] : a.terms_) x.terms_.emplace(k, c * q);
  return x;
}

CycNumber operator*(const CycNumber& a, RootOfUnity z) {
  if (z.order() != a.order_) throw ShapeError("cyclotomic order mismatch");
  CycNumber x(a.order_);
  for (const auto& [k, c] : a.terms_) x.terms_.emplace((k + z.exponent()) % a.order_, c);
  return x;
}

CycNumber operator-(const CycNumber& a) {
  CycNumber x(a.order_);
  for (const auto& [k, c] : a.terms_) x.terms_.emplace(k, -c);
  return x;
}

bool operator==(const CycNumber& a, const CycNumber& b) {
  a.check_order(b);
  if (a.terms_ == b.terms_) return true;
  return (a - b).is_zero();
}

}  // namespace shifttower
