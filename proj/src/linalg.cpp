#include "shifttower/linalg.hpp"

#include "shifttower/errors.hpp"

#include <algorithm>

namespace shifttower {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d) continue;
    fs.push_back(d);
    while (x % d == 0) x /= d;
  }
  if (x > 1) fs.push_back(x);
  return fs;
}

}  // namespace

ModularField::ModularField(int order) : order_(order) {
  if (order < 1) throw ShapeError("modular field: order must be positive");
  // Largest prime below 2^31 with p ≡ 1 mod N; products fit in 64 bits.
  std::uint64_t p = ((std::uint64_t{1} << 31) - 1) / order * order + 1;
  while (p > (std::uint64_t{1} << 31) || !is_prime(p)) p -= order;
  p_ = p;
  const auto fs = prime_factors(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool primitive = true;
    for (auto f : fs)
      if (pow_mod(g, (p - 1) / f, p) == 1) {
        primitive = false;
        break;
      }
    if (primitive) break;
  }
  const std::uint64_t zeta = pow_mod(g, (p - 1) / order, p);
  zeta_pows_.resize(order);
  zeta_pows_[0] = 1;
  for (int k = 1; k < order; ++k) zeta_pows_[k] = zeta_pows_[k - 1] * zeta % p;
}

std::uint64_t ModularField::zeta_power(long long exponent) const {
  long long e = exponent % order_;
  if (e < 0) e += order_;
  return zeta_pows_[e];
}

std::uint64_t ModularField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw ShapeError("modular field: inverse of zero");
  return pow_mod(a, p_ - 2, p_);
}

std::uint64_t ModularField::from_rational_parts(long long num, long long den) const {
  auto lift = [&](long long x) {
    long long r = x % static_cast<long long>(p_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p_) : r);
  };
  return mul(lift(num), inv(lift(den)));
}

ModularEliminator::ModularEliminator(const ModularField& field, std::size_t width)
    : field_(field), width_(width), pivot_row_(width, -1) {}

bool ModularEliminator::insert(std::vector<std::uint64_t> row) {
  if (row.size() != width_) throw ShapeError("eliminator: row width mismatch");
  for (std::size_t c = 0; c < width_; ++c) {
    if (row[c] == 0) continue;
    const long pr = pivot_row_[c];
    if (pr < 0) {
      const std::uint64_t s = field_.inv(row[c]);
      for (std::size_t t = c; t < width_; ++t) row[t] = field_.mul(row[t], s);
      pivot_row_[c] = static_cast<long>(rows_.size());
      pivots_.push_back(c);
      rows_.push_back(std::move(row));
      return true;
    }
    const std::uint64_t f = row[c];
    const auto& basis = rows_[pr];
    for (std::size_t t = c; t < width_; ++t)
      if (basis[t]) row[t] = field_.sub(row[t], field_.mul(f, basis[t]));
  }
  return false;
}

int float_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) r += sv(k) > cut;
  return r;
}

Eigen::MatrixXcd gram_nullspace(const Eigen::MatrixXcd& gram, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  const auto& ev = es.eigenvalues();
  const double top = ev.size() ? std::max(1.0, ev(ev.size() - 1)) : 1.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) < tol * tol * top) keep.push_back(k);
  Eigen::MatrixXcd ns(gram.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) ns.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  return ns;
}

}  // namespace shifttower
