#pragma once

// Generalized-permutation (monomial) matrices on one tensor site, scalar
// multiples of their tensor products, and sparse window elements.

#include "shifttower/scalars.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace shifttower {

/// n×n matrix with at most one nonzero per row and column. Row `r` is
/// either undefined (zero row) or maps to column col(r) with phase
/// ζ_N^{phase(r)}. Undefined rows store phase 0.
class SiteMonomial {
 public:
  SiteMonomial() = default;
  SiteMonomial(int order, std::vector<int> cols, std::vector<int> phases);

  static SiteMonomial identity(int size, int order);
  static SiteMonomial zero(int size, int order);
  static SiteMonomial diagonal(int order, const std::vector<int>& phases);
  /// Permutation sending basis vector e_k to e_{perm[k]}; negative entries
  /// leave column k undefined.
  static SiteMonomial from_permutation(int order, const std::vector<int>& perm);

  int size() const { return static_cast<int>(cols_.size()); }
  int order() const { return order_; }
  bool defined(int row) const { return cols_[row] >= 0; }
  int col(int row) const { return cols_[row]; }
  int phase(int row) const { return phases_[row]; }

  bool is_identity() const;
  bool is_zero() const;
  int defined_rows() const;

  SiteMonomial adjoint() const;
  SiteMonomial pow(int k) const;
  /// Σ of diagonal entries.
  CycNumber trace() const;
  Eigen::MatrixXcd to_dense() const;
  std::string to_string() const;

  friend SiteMonomial operator*(const SiteMonomial& a, const SiteMonomial& b);
  friend bool operator==(const SiteMonomial& a, const SiteMonomial& b) = default;
  friend auto operator<=>(const SiteMonomial& a, const SiteMonomial& b) = default;

 private:
  int order_ = 1;
  std::vector<int> cols_;
  std::vector<int> phases_;
};

inline SiteMonomial site_mul(const SiteMonomial& a, const SiteMonomial& b) { return a * b; }

/// coefficient · (site_1 ⊗ site_2 ⊗ … ⊗ site_K).
///
/// Canonical form: identity sites are implicit, each explicit site's first
/// defined row carries phase 0 (the factor is moved into the coefficient),
/// and the zero word has scale 0, no sites. Two words are equal iff their
/// canonical data are equal.
class FactoredWord {
 public:
  FactoredWord() = default;

  static FactoredWord identity(int site_dim, int num_sites, int order);
  static FactoredWord zero(int site_dim, int num_sites, int order);
  /// Sites are 1-based.
  static FactoredWord from_sites(int site_dim, int num_sites, int order,
                                 std::map<int, SiteMonomial> sites);
  static FactoredWord single_site(int num_sites, int site, const SiteMonomial& m);

  int site_dim() const { return site_dim_; }
  int num_sites() const { return num_sites_; }
  int order() const { return order_; }
  bool is_zero() const { return scale_ == 0; }

  const Rational& scale() const { return scale_; }
  RootOfUnity phase() const { return phase_; }
  CycNumber coefficient() const;
  const std::map<int, SiteMonomial>& explicit_sites() const { return sites_; }
  SiteMonomial site(int index) const;
  /// Highest explicit site, 0 for scalar words.
  int support_end() const;

  FactoredWord adjoint() const;
  FactoredWord pow(int k) const;
  FactoredWord scaled(RootOfUnity z) const;
  FactoredWord scaled(const Rational& q) const;
  /// Same operator viewed on `num_sites` sites (must cover the support).
  FactoredWord with_num_sites(int num_sites) const;
  /// Factor on sites first..last, renumbered from 1, coefficient 1.
  FactoredWord restrict_sites(int first, int last) const;

  /// Same as the dense matrix, up to an overall scalar.
  bool same_shape(const FactoredWord& o) const { return sites_ == o.sites_; }

  CycNumber normalized_trace() const;
  Eigen::MatrixXcd to_dense(long long max_total_dim) const;
  std::string to_string() const;

  friend FactoredWord operator*(const FactoredWord& a, const FactoredWord& b);
  friend bool operator==(const FactoredWord& a, const FactoredWord& b);

 private:
  void canonicalize();
  void check_shape(const FactoredWord& o) const;

  int site_dim_ = 1;
  int num_sites_ = 0;
  int order_ = 1;
  Rational scale_{1};
  RootOfUnity phase_;
  std::map<int, SiteMonomial> sites_;
};

inline FactoredWord word_mul(const FactoredWord& a, const FactoredWord& b) { return a * b; }
inline FactoredWord word_adjoint(const FactoredWord& a) { return a.adjoint(); }

enum class CommuteKind { Proportional, NotProportional, BothZero };

struct CommuteResult {
  CommuteKind kind = CommuteKind::NotProportional;
  RootOfUnity lambda;  // meaningful for Proportional only

  bool commutes() const {
    return kind == CommuteKind::BothZero || (kind == CommuteKind::Proportional && lambda.is_one());
  }
  std::string to_string() const;
};

/// a·b = λ·(b·a) with a·b ≠ 0, exactly.
CommuteResult commute_phase(const FactoredWord& a, const FactoredWord& b);

/// A window element Σ c_E E over matrix units of M_{n^m}; row/column are
/// flat multi-indices with site 1 most significant.
class SparseElement {
 public:
  using Index = std::pair<std::uint64_t, std::uint64_t>;

  SparseElement() = default;
  SparseElement(int site_dim, int window, int order);

  static SparseElement identity(int site_dim, int window, int order);
  /// Dense image of a word on `window` sites.
  static SparseElement from_word(const FactoredWord& w);

  int site_dim() const { return site_dim_; }
  int window() const { return window_; }
  int order() const { return order_; }
  std::uint64_t dim() const { return dim_; }
  const std::map<Index, CycNumber>& terms() const { return terms_; }
  bool formally_zero() const { return terms_.empty(); }
  bool is_zero() const;

  void add_term(std::uint64_t row, std::uint64_t col, const CycNumber& c);
  CycNumber coefficient(std::uint64_t row, std::uint64_t col) const;

  SparseElement adjoint() const;
  CycNumber normalized_trace() const;
  Eigen::MatrixXcd to_dense() const;

  friend SparseElement operator+(const SparseElement& a, const SparseElement& b);
  friend SparseElement operator-(const SparseElement& a, const SparseElement& b);
  friend SparseElement operator*(const SparseElement& a, const SparseElement& b);
  friend SparseElement operator*(const SparseElement& a, const CycNumber& c);
  friend bool operator==(const SparseElement& a, const SparseElement& b);

 private:
  void check_shape(const SparseElement& o) const;

  int site_dim_ = 1;
  int window_ = 0;
  int order_ = 1;
  std::uint64_t dim_ = 1;
  std::map<Index, CycNumber> terms_;
};

/// n^m with overflow and cap checks.
std::uint64_t checked_power(int base, int exponent, std::uint64_t cap);

}  // namespace shifttower
