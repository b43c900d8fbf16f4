#pragma once

// Independent brute-force oracle: dense complex matrices built directly from
// the generator formulas, for small truncations.

#include "shifttower/commutant.hpp"
#include "shifttower/construction.hpp"
#include "shifttower/relations.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace shifttower {

class DenseTower {
 public:
  DenseTower(const AlgebraSpec& spec, int truncation, long long cap = 256);

  int truncation() const { return K_; }
  long long dim() const { return dim_; }
  const Eigen::MatrixXcd& get(const GeneratorId& id) const;
  Eigen::MatrixXcd evaluate(const GeneratorWord& w) const;
  std::vector<GeneratorId> level_generators(int level) const;

  /// Single-site matrices, for tests.
  const std::map<std::string, Eigen::MatrixXcd>& site() const { return site_; }

 private:
  AlgebraSpec spec_;
  int K_;
  long long dim_;
  std::map<std::string, Eigen::MatrixXcd> site_;
  std::map<GeneratorId, Eigen::MatrixXcd> table_;
};

struct DenseRelationReport {
  std::vector<FamilySummary> families;
  std::vector<std::string> failures;
  long checked = 0;
  bool pass = false;
};

/// The same relation cases as verify_relations, evaluated densely (tol 1e-9).
DenseRelationReport dense_verify_relations(const TowerContext& ctx, long long cap = 256);

struct OracleCommutant {
  long dimension = 0;
  Eigen::MatrixXcd basis;  // columns: vec(x), row-major flat units a·D + b
  double residual = -1;    // max distance of a float basis vector from the exact span
};

/// Nullspace of x ↦ [x ⊗ 1, G] over the levels depth+1..K generators and
/// their adjoints, rank tolerance 1e-6.
OracleCommutant oracle_dense_commutant(const AlgebraSpec& spec, int truncation, int depth, int window,
                                       long long cap = 256);

/// Largest distance of a float basis column from the exact basis span.
double projection_residual(const Eigen::MatrixXcd& float_basis, const CommutantBasis& exact);

struct AveragingReport {
  bool applicable = false;
  int group_order = 0;
  double true_order_error = -1;  // ||E_avg − E_A||, mean over the group generated by U, P'
  double literal_error = -1;     // same with the n×n-term mean of Ad(U^a P'^b)
  bool true_order_pass = false;
  bool literal_pass = false;
};

/// Full variant: averaging Ad over the group generated by U = Σ q'_i and
/// P' = Σ p'_i (which contains the block-phase unitary D), versus the
/// orthogonal projection of M_n onto A = ⊕ M_{a_i} ⊗ 1.
AveragingReport dense_averaging_check(const AlgebraSpec& spec);

}  // namespace shifttower
