#pragma once

// Exhaustive exact relation checks on a truncated tower, spanning and
// tower-fullness ranks, and bounded-window unitary-shift checks.

#include "shifttower/construction.hpp"

#include <string>
#include <vector>

namespace shifttower {

enum class Expectation {
  Phase,     // a·b = λ·(b·a), a·b ≠ 0
  BothZero,  // a·b = b·a = 0
  Equal      // a = b
};

/// One asserted identity between two symbolic generator words.
struct RelationCase {
  std::string family;
  std::vector<int> indices;  // level/block tuple, 1-based
  GeneratorWord a, b;
  Expectation expect = Expectation::Phase;
  RootOfUnity lambda;
};

struct RelationEntry {
  RelationCase rel;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct FamilySummary {
  std::string family;
  long checked = 0;
  long failed = 0;
};

struct SiteCheck {
  std::string name;
  bool pass = false;
};

struct RelationReport {
  std::vector<RelationEntry> entries;
  std::vector<SiteCheck> site_checks;
  bool pass = false;

  std::vector<FamilySummary> summaries() const;
  std::vector<const RelationEntry*> failures() const;
};

/// Every asserted relation for levels 1..K (higher level on the left in
/// cross-level families).
std::vector<RelationCase> relation_cases(const TowerContext& ctx);
std::string describe_expectation(const RelationCase& c);

RelationReport verify_relations(const TowerContext& ctx);

struct RankResult {
  long dimension = 0;
  long target = 0;
  bool pass = false;
  std::string arithmetic;  // "exact-mod-p" or "float-svd"
  long products = 0;
};

/// dim Σ_t A r^t A (simplified) or Σ_t B r^t B (full) inside M_n.
RankResult verify_spanning(const AlgebraSpec& spec);

/// Rank of the words x_1⋯x_d with x_t from a spanning set of ⟨B_t, r_t⟩.
RankResult verify_tower_full(const TowerContext& ctx, int depth, long long cap = 64);

struct ShiftWindowReport {
  int window = 0;
  int search_depth = 0;
  long words = 0;
  long words_with_witness = 0;
  std::vector<std::string> missing;  // words without a witness
  std::vector<std::string> witnesses;  // first few witnesses, for the report
  bool condition1 = false;  // r_l^j = s_l for all l
  bool condition3 = false;  // r_{1+k} r_1 = λ r_1 r_{1+k}, λ ∈ {1, γ}
  std::string stream;       // S1 membership over distances 1..K-1
  bool pass = false;
};

struct ShiftCheckReport {
  long generator_checks = 0;     // Φ(g_l) = twist · tensor_shift(g_l) = g_{l+1}
  std::vector<std::string> generator_mismatches;
  long trace_checks = 0;         // τ(Φ(x)) = τ(x)
  std::vector<std::string> trace_mismatches;
  long random_products = 0;
  bool pass = false;
};

/// Φ on every table entry of levels 1..K−1 against the independently built
/// level-(l+1) entry, and trace invariance on generators and on seeded
/// random products of degree ≤ 3.
ShiftCheckReport verify_shift_endomorphism(const TowerContext& ctx, unsigned seed, int random_products = 100);

/// Definition-1 style checks for u = r_1, Ψ^i(u) = r_{1+i}.
ShiftWindowReport verify_unitary_shift_window(const TowerContext& ctx, int window, int search_depth);

}  // namespace shifttower
