#pragma once

// Truncated relative commutants: constraint generation, an exact two-term
// solver, containment of the predicted algebra, and structure analysis.

#include "shifttower/construction.hpp"
#include "shifttower/monomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shifttower {

struct WindowRestriction {
  std::string source;  // generator label, e.g. "q[1,5]*"
  FactoredWord factor;  // sites 1..m, coefficient 1
  bool tail_nonzero = true;
};

/// Window factors of Φ^k(g) = generators at levels k+1..K, plus adjoints,
/// deduplicated; identity windows are dropped.
std::vector<WindowRestriction> restrict_generators(const TowerContext& ctx, int window, int depth);

struct CommutantBasis {
  int site_dim = 0;
  int window = 0;
  int order = 1;
  std::vector<SparseElement> elements;
  long components = 0;
  long inconsistent_components = 0;
  long zero_components = 0;
  bool identity_in_span = false;
};

/// Exact solution of [x, g] = 0 for all restrictions, x ∈ M_{n^m}.
CommutantBasis commutant_basis(const std::vector<WindowRestriction>& restrictions, int site_dim, int window,
                               int order, long long cap = 128);

struct ContainmentVerdict {
  std::string generator;
  long checked = 0;
  std::vector<std::string> violations;
  bool pass = false;
};

/// The predicted algebra's generators at levels ≤ k (simplified: w_l and
/// the block identities; full: p_{i,l}, q_{i,l}) commute with every
/// generator at levels k+1..K and its adjoint.
std::vector<ContainmentVerdict> commutant_containment(const TowerContext& ctx, int depth);

struct StructureBlock {
  int block_dim = 0;         // m_z
  Rational min_trace;        // normalized trace of a minimal projection
  long projection_rank = 0;  // rank of the central projection
  std::string verification;  // "exact" or "float"
  bool projection_ok = false;
};

struct Structure {
  bool closed_product = false;
  bool closed_adjoint = false;
  int center_dim = 0;
  std::vector<StructureBlock> blocks;  // sorted by (block_dim, min_trace)
  bool ok = false;
  std::string note;

  std::vector<int> dimension_vector() const;
  std::vector<Rational> trace_vector() const;
};

Structure analyze_structure(const CommutantBasis& basis, unsigned seed);

/// Every basis element has the form X ⊗ 1 on sites depth+1..window.
bool supported_in_first_sites(const CommutantBasis& basis, int depth);

struct Prediction {
  long dimension = 0;
  std::vector<int> dimension_vector;
  std::vector<Rational> trace_vector;
};

/// ⊗^k Z(A) (simplified) or ⊗^k A with product trace s̄ (full).
Prediction predicted_commutant(const AlgebraSpec& spec, int depth);

struct CommutantReport {
  int window = 0;
  int depth = 0;
  int truncation = 0;
  int default_truncation = 0;
  long restrictions = 0;
  CommutantBasis basis;
  std::vector<ContainmentVerdict> containment;
  bool containment_pass = false;
  bool locality = false;
  Structure structure;
  Prediction prediction;
  bool matches_prediction = false;
};

CommutantReport compute_commutant(const TowerContext& ctx, int depth, int window, unsigned seed,
                                  long long cap = 128);

/// Matrix-unit basis of ⊗^k A (simplified: ⊗^k Z(A)) inside M_{n^k},
/// built directly; used to test analyze_structure.
CommutantBasis direct_predicted_basis(const AlgebraSpec& spec, int depth);

}  // namespace shifttower
