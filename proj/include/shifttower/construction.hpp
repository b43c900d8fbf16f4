#pragma once

// Algebra specs, the S1/S2/S3 distance sets, single-site generators and the
// truncated tower of level generators.

#include "shifttower/monomial.hpp"
#include "shifttower/scalars.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shifttower {

enum class Variant { Simplified, Full };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Unvalidated user input.
struct RawSpec {
  Variant variant = Variant::Simplified;
  std::vector<long long> dims;
  /// (e_i, f_i) pairs; required iff variant == Full.
  std::vector<std::pair<long long, long long>> traces;
};

struct AlgebraSpec {
  Variant variant = Variant::Simplified;
  int j = 0;
  int n = 0;
  std::vector<int> a;
  std::vector<Rational> s;      // full only
  std::vector<int> a_prime;     // full only
  std::vector<int> block_size;  // a_i (simplified) or a_i·a_i' (full)
  std::vector<int> offset;      // 0-based first index of block i
  int N = 1;                    // global phase order

  bool full() const { return variant == Variant::Full; }
  int block_end(int i) const { return offset[i] + block_size[i] - 1; }
  /// γ = ζ_j, γ_i = ζ_{a_i}, γ'_i = ζ_{a_i'} as powers of ζ_N.
  RootOfUnity gamma() const { return RootOfUnity(N, N / j); }
  RootOfUnity gamma_i(int i) const { return RootOfUnity(N, N / a[i]); }
  RootOfUnity gamma_prime(int i) const { return RootOfUnity(N, N / a_prime[i]); }
};

AlgebraSpec validate_spec(const RawSpec& raw);
int phase_global_order(const AlgebraSpec& spec);

/// Membership of distances 1..bound in S1 (triangular numbers T_l), S2
/// (l ≡ 1 mod 3) and S3 (l ≡ 2 mod 3).
class ShiftSets {
 public:
  explicit ShiftSets(int bound = 1);

  int bound() const { return bound_; }
  bool s1(int d) const { return in(s1_, d); }
  bool s2(int d) const { return in(s2_, d); }
  bool s3(int d) const { return in(s3_, d); }
  /// S1 membership over distances 1..len as a 0/1 string.
  std::string stream(int len) const;

 private:
  bool in(const std::vector<char>& v, int d) const;

  int bound_;
  std::vector<char> s1_, s2_, s3_;
};

inline ShiftSets shift_sets(int bound) { return ShiftSets(bound); }

/// Single-site generator values.
struct SiteGenerators {
  std::vector<SiteMonomial> p, q;              // clock / cycle on the a_i leg
  std::vector<SiteMonomial> p_twist, q_twist;  // p_i + 1 − 1_block, q_i + 1 − 1_block
  std::vector<SiteMonomial> pp, qp;            // primed, full only
  std::vector<SiteMonomial> pp_twist, qp_twist;
  std::vector<SiteMonomial> block;             // block identities 1_block_i
  SiteMonomial v, s, r, w, identity;
};

SiteGenerators build_site_generators(const AlgebraSpec& spec);

enum class GenKind { P, Q, PPrime, QPrime, R, S, W, E };

std::string to_string(GenKind k);

struct GeneratorId {
  GenKind kind = GenKind::P;
  int block = 0;  // 0-based; ignored for R, S, W
  int level = 1;

  std::string to_string() const;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

/// Symbolic product of generator powers (negative power = adjoint power).
struct GeneratorWord {
  std::vector<std::pair<GeneratorId, int>> letters;

  std::string to_string() const;
  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

class TowerContext {
 public:
  TowerContext(AlgebraSpec spec, int truncation);

  const AlgebraSpec& spec() const { return spec_; }
  const ShiftSets& sets() const { return sets_; }
  const SiteGenerators& site() const { return site_; }
  int truncation() const { return K_; }

  /// Level-l generator as a K-site word.
  const FactoredWord& get(const GeneratorId& id) const;
  FactoredWord evaluate(const GeneratorWord& w) const;
  FactoredWord identity() const;

  /// The tower generators at one level: p_i, q_i (+ p'_i, q'_i), r.
  std::vector<GeneratorId> level_generators(int level) const;
  /// Every table entry at one level, including s, w, block identities.
  std::vector<GeneratorId> level_entries(int level) const;

 private:
  AlgebraSpec spec_;
  ShiftSets sets_;
  SiteGenerators site_;
  int K_;
  std::map<GeneratorId, FactoredWord> table_;
};

/// Level-l entries built directly from the twist rules.
std::map<GeneratorId, FactoredWord> build_level_generators(const AlgebraSpec& spec, const ShiftSets& sets,
                                                           const SiteGenerators& site, int level, int truncation);

/// Φ: relabels every letter from level l to level l+1.
GeneratorWord shift_endomorphism(const GeneratorWord& w, int truncation);
/// Tensor right-shift by one site; site 1 becomes the identity.
FactoredWord tensor_shift(const FactoredWord& w);
/// Site-1 factor that distinguishes Φ(g) from tensor_shift(g) when g sits at
/// level `level` (a w, q~ or p~ twist at distance `level`, else identity).
SiteMonomial shift_twist(const TowerContext& ctx, const GeneratorId& id);

/// K* = l₂(l₂+1)/2 + 1, l₂ the smallest integer > k+1 with l₂ ≡ 2 mod 3.
int default_truncation(int depth);

}  // namespace shifttower
