#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shifttower/construction.hpp"
#include "shifttower/errors.hpp"
#include "shifttower/monomial.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <random>

using namespace shifttower;

namespace {

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

}  // namespace

TEST_CASE("site monomial clock and cycle, n = 2") {
  const SiteMonomial p = SiteMonomial::diagonal(2, {0, 1});
  const SiteMonomial q(2, {1, 0}, {0, 0});
  const SiteMonomial pq = site_mul(p, q);
  CHECK(pq.col(0) == 1);
  CHECK(pq.phase(0) == 0);
  CHECK(pq.col(1) == 0);
  CHECK(pq.phase(1) == 1);
  const SiteMonomial qp = q * p;
  for (int r = 0; r < 2; ++r) {
    CHECK(qp.col(r) == pq.col(r));
    CHECK((qp.phase(r) + 1) % 2 == pq.phase(r));
  }
  CHECK(SiteMonomial::identity(2, 2) * q == q);
  CHECK(p.pow(2).is_identity());
  CHECK((p.adjoint() * p).is_identity());
  CHECK(p.trace().is_zero());
}

TEST_CASE("site monomial validation and zero rows") {
  CHECK_THROWS(SiteMonomial(2, {0, 0}, {0, 0}));
  const SiteMonomial e0(2, {0, -1}, {0, 0});
  CHECK(e0.defined_rows() == 1);
  CHECK((e0 * e0) == e0);
  const SiteMonomial e1(2, {-1, 1}, {0, 0});
  CHECK((e0 * e1).is_zero());
  const SiteMonomial perm = SiteMonomial::from_permutation(1, {1, 0});
  CHECK(perm.col(0) == 1);
  CHECK((perm.to_dense() - perm.to_dense().transpose()).norm() == 0);
}

TEST_CASE("s v s for (1,1) equals v") {
  const auto spec = simplified({1, 1});
  const auto g = build_site_generators(spec);
  CHECK(g.s.is_identity());
  CHECK(g.r == g.v);
  CHECK(g.r * g.r.adjoint() == g.s);
}

TEST_CASE("factored words: identity, r_2 dense, phases") {
  const auto spec = simplified({1, 1});
  const TowerContext ctx(spec, 2);
  const FactoredWord id = ctx.identity();
  CHECK((id.to_dense(16) - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0);

  const FactoredWord r1 = ctx.get({GenKind::R, 0, 1}), r2 = ctx.get({GenKind::R, 0, 2});
  Eigen::MatrixXcd w(2, 2), v(2, 2);
  w << 1, 0, 0, -1;
  v << 0, 1, 1, 0;
  const Eigen::MatrixXcd expect = Eigen::kroneckerProduct(w, v).eval();
  CHECK((r2.to_dense(16) - expect).norm() < 1e-15);

  CHECK(word_mul(id, r2) == r2);
  CHECK(word_mul(r1, r2) == word_mul(r2, r1).scaled(spec.gamma()));
  const auto c = commute_phase(r1, r2);
  CHECK(c.kind == CommuteKind::Proportional);
  CHECK(c.lambda == spec.gamma());
  CHECK(c.to_string() == "phase z2^1");

  CHECK(word_adjoint(id) == id);
  CHECK(word_mul(word_adjoint(r1), r1) == ctx.get({GenKind::S, 0, 1}));
  CHECK(word_mul(r1, word_adjoint(r1)) == ctx.get({GenKind::S, 0, 1}));
}

TEST_CASE("w scales r by gamma") {
  for (const auto& spec : {simplified({1, 1}), simplified({2, 2}), simplified({1, 2, 3}), theorem2()}) {
    const TowerContext ctx(spec, 1);
    const auto c = commute_phase(ctx.get({GenKind::W, 0, 1}), ctx.get({GenKind::R, 0, 1}));
    CHECK(c.kind == CommuteKind::Proportional);
    CHECK(c.lambda == spec.gamma());
  }
}

TEST_CASE("normalized traces") {
  const auto s11 = simplified({1, 1});
  const TowerContext c11(s11, 3);
  CHECK(c11.identity().normalized_trace() == CycNumber::from_rational(s11.N, 1));
  CHECK(c11.get({GenKind::S, 0, 1}).normalized_trace() == CycNumber::from_rational(s11.N, 1));

  const auto s22 = simplified({2, 2});
  const TowerContext c22(s22, 5);
  for (int l = 1; l <= 5; ++l)
    CHECK(c22.get({GenKind::S, 0, l}).normalized_trace() == CycNumber::from_rational(s22.N, Rational(2, 4)));
  CHECK(c22.get({GenKind::R, 0, 3}).normalized_trace().is_zero());
}

TEST_CASE("dense representation is multiplicative on generator words") {
  std::mt19937 rng(7);
  for (const auto& spec : {simplified({1, 1}), simplified({2, 2}), simplified({1, 2})}) {
    const int K = spec.n == 2 ? 4 : (spec.n == 3 ? 3 : 2);
    const TowerContext ctx(spec, K);
    std::vector<FactoredWord> gens;
    for (int l = 1; l <= K; ++l)
      for (const auto& id : ctx.level_entries(l)) gens.push_back(ctx.get(id));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      const FactoredWord a = gens[pick(rng)] * gens[pick(rng)], b = gens[pick(rng)].adjoint();
      const Eigen::MatrixXcd lhs = word_mul(a, b).to_dense(256);
      const Eigen::MatrixXcd rhs = a.to_dense(256) * b.to_dense(256);
      CHECK((lhs - rhs).norm() < 1e-12);
      CHECK(word_adjoint(word_adjoint(a)) == a);
      CHECK((a.adjoint().to_dense(256) - a.to_dense(256).adjoint()).norm() < 1e-12);
    }
  }
}

TEST_CASE("canonical form and scaling") {
  const auto spec = simplified({1, 1});
  const TowerContext ctx(spec, 3);
  const FactoredWord r3 = ctx.get({GenKind::R, 0, 3});
  const FactoredWord x = r3.scaled(RootOfUnity(2, 1)).scaled(RootOfUnity(2, 1));
  CHECK(x == r3);
  CHECK(r3.scaled(Rational(0)).is_zero());
  CHECK(r3.support_end() == 3);
  CHECK(r3.restrict_sites(3, 3).explicit_sites().size() == 1);
  CHECK_THROWS_AS(r3.to_dense(4), CapExceeded);
}

TEST_CASE("sparse elements") {
  const auto spec = simplified({1, 1});
  const TowerContext ctx(spec, 2);
  const SparseElement r2 = SparseElement::from_word(ctx.get({GenKind::R, 0, 2}));
  CHECK(r2.dim() == 4);
  CHECK((r2.to_dense() - ctx.get({GenKind::R, 0, 2}).to_dense(16)).norm() < 1e-15);
  const SparseElement id = SparseElement::identity(2, 2, spec.N);
  CHECK(r2 * id == r2);
  CHECK(r2 * r2.adjoint() == id);
  CHECK((r2 - r2).is_zero());
  CHECK(id.normalized_trace() == CycNumber::from_rational(spec.N, 1));
  CHECK(r2.normalized_trace().is_zero());
}

TEST_CASE("checked power") {
  CHECK(checked_power(2, 8, 256) == 256);
  CHECK_THROWS_AS(checked_power(2, 9, 256), CapExceeded);
  CHECK_THROWS_AS(checked_power(9, 40, 1000), CapExceeded);
}
