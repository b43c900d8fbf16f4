#include "shifttower/entropy.hpp"

#include "shifttower/errors.hpp"

#include <cmath>

namespace shifttower {

double vn_entropy(const std::vector<int>& dims, const std::vector<Rational>& traces) {
  if (dims.size() != traces.size() || dims.empty()) throw SpecError("vn_entropy: need one trace per block");
  Rational norm = 0;
  double h = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || traces[i] <= 0) throw SpecError("vn_entropy: block dims and traces must be positive");
    norm += traces[i] * dims[i];
    const double t = static_cast<double>(traces[i]);
    h -= dims[i] * t * std::log(t);
  }
  if (norm != 1) throw SpecError("vn_entropy: sum_i d_i t_i = " + to_string(norm) + " != 1");
  return h == 0 ? 0.0 : h;
}

double restricted_shift_entropy(const AlgebraSpec& spec) {
  if (spec.full()) throw SpecError("restricted shift entropy is defined for the simplified variant");
  std::vector<int> ones(spec.j, 1);
  std::vector<Rational> t;
  for (int a : spec.a) t.emplace_back(a, spec.n);
  return vn_entropy(ones, t);
}

EntropyReport entropy_bounds(const AlgebraSpec& spec) {
  EntropyReport rep;
  std::vector<Rational> t;
  for (int i = 0; i < spec.j; ++i) t.push_back(spec.full() ? spec.s[i] : Rational(1, spec.n));
  rep.lower = vn_entropy(spec.a, t);
  rep.upper = std::log(static_cast<double>(spec.n));
  rep.index = static_cast<long long>(spec.n) * spec.n;
  if (!spec.full()) rep.restricted = restricted_shift_entropy(spec);
  for (int i = 0; i < spec.j; ++i) {
    const double ti = static_cast<double>(t[i]);
    rep.blocks.push_back({spec.a[i], t[i], ti == 1.0 ? 0.0 : -spec.a[i] * ti * std::log(ti)});
  }
  // Tolerance only absorbs rounding in the equality case H(A) = ln n.
  rep.bounds_ordered = rep.lower <= rep.upper + 1e-12;
  rep.note =
      "H(A) is the proven lower bound for the shift entropy and ln n the upper bound; "
      "the entropy itself is not computed. The lower bound equals ln n only when A contains "
      "an equal-weight maximal abelian subalgebra of dimension n.";
  return rep;
}

double round_significant(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x;
  const double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  return std::round(x * mag) / mag;
}

}  // namespace shifttower
