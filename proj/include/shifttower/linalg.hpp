#pragma once

// Rank helpers: exact rank certificates over F_p and float fallbacks.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace shifttower {

/// F_p with p prime, p ≡ 1 mod N, and ζ_N mapped to a primitive N-th root.
/// Cyclotomic vectors reduce to F_p vectors; rank over F_p never exceeds
/// the rank over C, so a full F_p rank certifies full complex rank.
class ModularField {
 public:
  explicit ModularField(int order);

  std::uint64_t prime() const { return p_; }
  std::uint64_t zeta_power(long long exponent) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t from_rational_parts(long long num, long long den) const;

 private:
  int order_;
  std::uint64_t p_;
  std::vector<std::uint64_t> zeta_pows_;
};

/// Incremental row echelon form over F_p; rows are dense vectors.
class ModularEliminator {
 public:
  ModularEliminator(const ModularField& field, std::size_t width);

  /// Reduces the row against the basis; keeps it if independent.
  bool insert(std::vector<std::uint64_t> row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t width() const { return width_; }

 private:
  const ModularField& field_;
  std::size_t width_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<long> pivot_row_;  // column -> row index or -1
};

/// Numerical rank by singular values above tol·max(1, σ_max).
int float_rank(const Eigen::MatrixXcd& m, double tol);

/// Orthonormal nullspace basis of the Hermitian PSD Gram matrix
/// (eigenvalues below tol²·max(1, λ_max)).
Eigen::MatrixXcd gram_nullspace(const Eigen::MatrixXcd& gram, double tol);

}  // namespace shifttower
