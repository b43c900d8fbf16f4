// Acceptance criteria 1–9. `acceptance N` runs one criterion, no argument
// runs all; one PASS/FAIL line per criterion, exit 0 iff all selected pass.

#include "shifttower/commutant.hpp"
#include "shifttower/dense_oracle.hpp"
#include "shifttower/entropy.hpp"
#include "shifttower/errors.hpp"
#include "shifttower/relations.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace shifttower;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
  }
};

AlgebraSpec simplified(std::vector<long long> dims) {
  RawSpec raw;
  raw.dims = std::move(dims);
  return validate_spec(raw);
}

AlgebraSpec theorem2() {
  RawSpec raw;
  raw.variant = Variant::Full;
  raw.dims = {1, 1};
  raw.traces = {{1, 3}, {2, 3}};
  return validate_spec(raw);
}

std::vector<std::pair<std::string, AlgebraSpec>> three_specs() {
  return {{"(1,1)", simplified({1, 1})}, {"(2,2)", simplified({2, 2})}, {"full (1,1),(1/3,2/3)", theorem2()}};
}

std::string vec_string(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

std::string vec_string(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + to_string(v[k]);
  return s + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

void criterion1(Outcome& o) {
  for (const auto& [name, spec] : three_specs()) {
    RelationReport rep;
    const double t = timed([&] { rep = verify_relations(TowerContext(spec, 12)); });
    long checked = 0;
    for (const auto& s : rep.summaries()) checked += s.checked;
    std::ostringstream os;
    os << name << ": " << checked << " checks, " << rep.failures().size() << " failed";
    for (const auto& s : rep.summaries())
      if (s.failed) os << " (" << s.family << " " << s.failed << "/" << s.checked << ")";
    os << ", " << t << " s";
    o.require(rep.pass && t < 60, os.str());
  }
}

void criterion2(Outcome& o) {
  const long expect[] = {4, 16, 81};
  int k = 0;
  for (const auto& [name, spec] : three_specs()) {
    RankResult r;
    const double t = timed([&] { r = verify_spanning(spec); });
    std::ostringstream os;
    os << name << ": dim " << r.dimension << " (" << r.arithmetic << "), " << t << " s";
    o.require(r.dimension == expect[k++] && r.pass && t < 5, os.str());
  }
}

void criterion3(Outcome& o) {
  for (const auto& [name, spec, expect] :
       {std::tuple{"(1,1)", simplified({1, 1}), 16L}, std::tuple{"(2,2)", simplified({2, 2}), 256L}}) {
    RankResult r;
    const double t = timed([&] { r = verify_tower_full(TowerContext(spec, 2), 2); });
    std::ostringstream os;
    os << name << ": rank " << r.dimension << ", " << t << " s";
    o.require(r.dimension == expect && t < 60, os.str());
  }
}

void criterion4(Outcome& o) {
  const auto spec = simplified({1, 1});
  CommutantReport rep;
  OracleCommutant dense;
  CommutantBasis exact8;
  const double t = timed([&] {
    rep = compute_commutant(TowerContext(spec, 16), 1, 2, 1);
    dense = oracle_dense_commutant(spec, 8, 1, 2);
    exact8 = commutant_basis(restrict_generators(TowerContext(spec, 8), 2, 1), 2, 2, spec.N);
  });
  o.require(rep.containment_pass, "(a) containment of Z(A_1)");
  o.require(rep.basis.elements.size() == 2, "(b) dim " + std::to_string(rep.basis.elements.size()));
  o.require(rep.locality, "(c) identity at site 2");
  o.require(rep.structure.ok && rep.structure.dimension_vector() == std::vector<int>{1, 1} &&
                rep.structure.trace_vector() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)},
            "(d) blocks " + vec_string(rep.structure.dimension_vector()) + " traces " +
                vec_string(rep.structure.trace_vector()));
  const double residual = projection_residual(dense.basis, exact8);
  std::ostringstream os;
  os << "oracle K=8: dense dim " << dense.dimension << ", exact dim " << exact8.elements.size() << ", residual "
     << residual;
  o.require(dense.dimension == static_cast<long>(exact8.elements.size()) && residual < 1e-6, os.str());
  o.require(t < 120, std::to_string(t) + " s");
}

void criterion5(Outcome& o) {
  const auto spec = theorem2();
  CommutantReport rep;
  const double t = timed([&] { rep = compute_commutant(TowerContext(spec, 16), 1, 2, 1); });
  o.require(rep.containment_pass, "containment of A_1");
  o.require(rep.structure.ok && rep.structure.dimension_vector() == std::vector<int>{1, 1},
            "structure " + vec_string(rep.structure.dimension_vector()));
  o.require(rep.structure.trace_vector() == std::vector<Rational>{Rational(1, 3), Rational(2, 3)},
            "traces " + vec_string(rep.structure.trace_vector()));
  const auto ent = entropy_bounds(spec);
  o.require(ent.index == 81, "index " + std::to_string(ent.index));
  o.require(t < 600, std::to_string(t) + " s at window dim 81");
}

void criterion6(Outcome& o) {
  const auto spec = simplified({1, 1});
  struct Case {
    int K, depth, window;
  };
  const Case cases[] = {{5, 1, 2}, {6, 1, 2}, {7, 1, 2}, {8, 1, 2}, {5, 0, 1}, {6, 0, 1}, {7, 0, 2}, {8, 0, 1}};
  int agreeing = 0;
  const double t = timed([&] {
    for (const auto& c : cases) {
      const auto exact =
          commutant_basis(restrict_generators(TowerContext(spec, c.K), c.window, c.depth), spec.n, c.window, spec.N);
      const auto dense = oracle_dense_commutant(spec, c.K, c.depth, c.window);
      const double residual = projection_residual(dense.basis, exact);
      const bool ok = dense.dimension == static_cast<long>(exact.elements.size()) && residual < 1e-6;
      agreeing += ok;
      std::ostringstream os;
      os << "K=" << c.K << " k=" << c.depth << " m=" << c.window << ": " << exact.elements.size() << "/"
         << dense.dimension << " res " << residual;
      o.require(ok, os.str());
    }
  });
  o.require(agreeing >= 5 && t < 60, std::to_string(agreeing) + " configurations agree, " + std::to_string(t) + " s");
}

void criterion7(Outcome& o) {
  double total = 0;
  for (const auto& [name, spec] : three_specs()) {
    ShiftCheckReport rep;
    total += timed([&] { rep = verify_shift_endomorphism(TowerContext(spec, 16), 1, 100); });
    std::ostringstream os;
    os << name << ": " << rep.generator_checks << " generator identities, " << rep.trace_checks
       << " trace checks incl. " << rep.random_products << " random products, "
       << rep.generator_mismatches.size() + rep.trace_mismatches.size() << " mismatches";
    o.require(rep.pass && rep.random_products == 100, os.str());
  }
  o.require(total < 30, std::to_string(total) + " s");
}

void criterion8(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = restricted_shift_entropy(simplified({2, 2}));
  char printed[64];
  std::snprintf(printed, sizeof printed, "%.12g", round_significant(h));
  o.require(h == std::log(2.0) && std::string(printed) == "0.69314718056",
            std::string("restricted entropy (2,2) = ") + printed + " = ln 2");
  const auto idx = entropy_bounds(simplified({2, 2})).index;
  o.require(idx == 16, "index (2,2) = " + std::to_string(idx));

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> blocks(1, 4), dim(1, 4), aprime(1, 6), coin(0, 1);
  int tested = 0, ordered = 0;
  while (tested < 100) {
    RawSpec raw;
    const int j = blocks(rng);
    for (int i = 0; i < j; ++i) raw.dims.push_back(dim(rng));
    if (coin(rng)) {
      raw.variant = Variant::Full;
      std::vector<long long> ap(j);
      long long total = 0;
      for (int i = 0; i < j; ++i) total += raw.dims[i] * (ap[i] = aprime(rng));
      for (int i = 0; i < j; ++i) {
        const long long g = gcd_ll(ap[i], total);
        raw.traces.push_back({ap[i] / g, total / g});
      }
    }
    AlgebraSpec spec;
    try {
      spec = validate_spec(raw);
    } catch (const CapExceeded&) {
      continue;
    }
    const auto rep = entropy_bounds(spec);
    ++tested;
    ordered += rep.bounds_ordered && rep.lower <= rep.upper + 1e-12;
  }
  o.require(ordered == 100, std::to_string(ordered) + "/100 random specs with H(A) <= ln n");
  const double t = seconds_since(t0);
  o.require(t < 1, std::to_string(t) + " s");
}

void criterion9(Outcome& o) {
  const auto spec = simplified({1, 1});
  std::vector<int> dims;
  const double t = timed([&] {
    for (int K : {4, 8, 12, 16})
      dims.push_back(static_cast<int>(
          commutant_basis(restrict_generators(TowerContext(spec, K), 2, 1), 2, 2, spec.N).elements.size()));
  });
  bool monotone = true;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    monotone = monotone && dims[k] >= 2;
    if (k) monotone = monotone && dims[k] <= dims[k - 1];
  }
  o.require(monotone, "dims at K=4,8,12,16: " + vec_string(dims));
  o.require(t < 300, std::to_string(t) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<void(Outcome&)> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                    criterion6, criterion7, criterion8, criterion9};
  int first = 1, last = 9;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 9) {
      std::cerr << "usage: acceptance [1-9]\n";
      return 2;
    }
  }
  bool all = true;
  for (int c = first; c <= last; ++c) {
    Outcome o;
    try {
      criteria[c - 1](o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "CRITERION " << c << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
