#pragma once

// Closed-form entropy and index quantities.

#include "shifttower/construction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shifttower {

/// −Σ d_i t_i ln t_i for the tracial state on ⊕ M_{d_i} with
/// minimal-projection traces t_i; requires Σ d_i t_i = 1.
double vn_entropy(const std::vector<int>& dims, const std::vector<Rational>& traces);

/// vn_entropy with d = (1,…,1), t = (a_i/n); simplified variant only.
double restricted_shift_entropy(const AlgebraSpec& spec);

struct BlockContribution {
  int dim = 0;
  Rational trace;
  double contribution = 0;
};

struct EntropyReport {
  std::optional<double> restricted;  // simplified only
  double lower = 0;                  // H(A)
  double upper = 0;                  // ln n
  long long index = 0;               // n²
  std::vector<BlockContribution> blocks;
  bool bounds_ordered = false;
  std::string note;
};

EntropyReport entropy_bounds(const AlgebraSpec& spec);

/// Rounds to `digits` significant digits.
double round_significant(double x, int digits = 12);

}  // namespace shifttower
