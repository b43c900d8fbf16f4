#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shifttower/construction.hpp"
#include "shifttower/errors.hpp"

#include <string>

using namespace shifttower;

namespace {

RawSpec raw_simplified(std::vector<long long> dims) {
  RawSpec raw;
  raw.dims = std::move(dims);
  return raw;
}

RawSpec raw_full(std::vector<long long> dims, std::vector<std::pair<long long, long long>> traces) {
  RawSpec raw;
  raw.variant = Variant::Full;
  raw.dims = std::move(dims);
  raw.traces = std::move(traces);
  return raw;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("validate_spec examples") {
  const auto t2 = validate_spec(raw_full({1, 1}, {{1, 3}, {2, 3}}));
  CHECK(t2.n == 9);
  CHECK(t2.a_prime == std::vector<int>{3, 6});
  CHECK(t2.N == 6);
  CHECK(t2.offset == std::vector<int>{0, 3});

  const auto a22 = validate_spec(raw_simplified({2, 2}));
  CHECK(a22.n == 4);
  CHECK(a22.j == 2);
  CHECK(a22.N == 2);
  CHECK(validate_spec(raw_simplified({1, 1})).N == 2);

  try {
    validate_spec(raw_full({1, 1}, {{1, 2}, {1, 3}}));
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(contains(e.what(), "5/6"));
  }
  CHECK_THROWS_AS(validate_spec(raw_simplified({})), SpecError);
  CHECK_THROWS_AS(validate_spec(raw_simplified({0, 1})), SpecError);
  CHECK_THROWS_AS(validate_spec(raw_full({1, 1}, {})), SpecError);
  CHECK_THROWS_AS(validate_spec(raw_full({1}, {{1, 3}, {2, 3}})), SpecError);
  RawSpec mismatch = raw_simplified({1, 1});
  mismatch.traces = {{1, 2}, {1, 2}};
  CHECK_THROWS_AS(validate_spec(mismatch), SpecError);
  CHECK_THROWS_AS(validate_spec(raw_simplified({1000, 1000})), CapExceeded);
}

TEST_CASE("non-integer a' is rejected") {
  // s = (1/2, 1/4) with a = (1, 2): n = 2·4 = 8, a' = (4, 2).
  CHECK(validate_spec(raw_full({1, 2}, {{1, 2}, {1, 4}})).a_prime == std::vector<int>{4, 2});
  // s = (1/4, 3/8), a = (1, 2): n = 32 -> a' = (8, 12), sum = 8 + 24 = 32 -> valid.
  CHECK(validate_spec(raw_full({1, 2}, {{1, 4}, {3, 8}})).n == 32);
}

TEST_CASE("trivial spec") {
  const auto t = validate_spec(raw_simplified({1}));
  CHECK(t.n == 1);
  CHECK(t.j == 1);
  const TowerContext ctx(t, 3);
  CHECK(ctx.get({GenKind::R, 0, 2}).explicit_sites().empty());
}

TEST_CASE("shift sets") {
  const ShiftSets s(30);
  CHECK(s.s1(1));
  CHECK(s.s2(1));
  CHECK(s.s1(3));
  CHECK(s.s3(3));
  CHECK(s.s1(6));
  CHECK_FALSE(s.s2(6));
  CHECK_FALSE(s.s3(6));
  for (int d : {2, 4, 5, 7, 8, 9}) CHECK_FALSE(s.s1(d));
  for (int d = 1; d <= 30; ++d) {
    CHECK_FALSE((s.s2(d) && s.s3(d)));
    if (s.s2(d) || s.s3(d)) CHECK(s.s1(d));
  }
  CHECK(s.stream(16) == "1010010001000010");
}

TEST_CASE("site generators for (1,1)") {
  const auto spec = validate_spec(raw_simplified({1, 1}));
  const auto g = build_site_generators(spec);
  CHECK(g.p[0].col(0) == 0);
  CHECK_FALSE(g.p[0].defined(1));
  CHECK(g.w == SiteMonomial::diagonal(2, {0, 1}));
  CHECK(g.v == SiteMonomial(2, {1, 0}, {0, 0}));
  CHECK(g.s.is_identity());
  CHECK(g.r == g.v);
}

TEST_CASE("site generator relations, several specs") {
  for (const auto& raw : {raw_simplified({1, 1}), raw_simplified({2, 2}), raw_simplified({1, 2, 3}),
                          raw_full({1, 1}, {{1, 3}, {2, 3}}), raw_full({1, 2}, {{1, 2}, {1, 4}})}) {
    const auto spec = validate_spec(raw);
    const auto g = build_site_generators(spec);
    const SiteMonomial gamma_one = SiteMonomial::diagonal(spec.N, std::vector<int>(spec.n, spec.gamma().exponent()));
    CHECK(g.w * g.r == g.r * g.w * gamma_one);
    for (int i = 0; i < spec.j; ++i) {
      CHECK(g.w * g.p[i] == g.p[i] * g.w);
      CHECK(g.w * g.q[i] == g.q[i] * g.w);
      CHECK(g.p[i].pow(spec.a[i]) == g.block[i]);
      CHECK(g.q[i].pow(spec.a[i]) == g.block[i]);
      if (spec.full()) {
        CHECK(g.w * g.pp[i] == g.pp[i] * g.w);
        CHECK(g.w * g.qp[i] == g.qp[i] * g.w);
        CHECK(g.pp[i].pow(spec.a_prime[i]) == g.block[i]);
        CHECK(g.pp[i] * g.p[i] == g.p[i] * g.pp[i]);
      }
    }
    CHECK(g.r.pow(spec.j) == g.s);
    CHECK(g.r * g.r.adjoint() == g.s);
  }
}

TEST_CASE("level generators follow the twist rules") {
  const auto spec = validate_spec(raw_simplified({2, 2}));
  const TowerContext ctx(spec, 8);
  const auto& g = ctx.site();
  for (int i = 0; i < spec.j; ++i) {
    const FactoredWord q2 = ctx.get({GenKind::Q, i, 2});
    CHECK(q2.site(1) == g.q_twist[i]);
    CHECK(q2.site(2) == g.q[i]);
    const FactoredWord q4 = ctx.get({GenKind::Q, i, 4});
    CHECK(q4.site(1) == g.p_twist[i]);
    CHECK(q4.site(3) == g.q_twist[i]);
    CHECK(q4.site(2).is_identity());
    CHECK(q4.site(4) == g.q[i]);
    const FactoredWord p4 = ctx.get({GenKind::P, i, 4});
    CHECK(p4.explicit_sites().size() == 1);
  }
  const FactoredWord r2 = ctx.get({GenKind::R, 0, 2});
  CHECK(r2.site(1) == g.w);
  CHECK(r2.site(2) == g.r);
  const FactoredWord r7 = ctx.get({GenKind::R, 0, 7});
  // distances 6, 3, 1 are triangular: sites 1, 4, 6 carry w
  for (int t = 1; t < 7; ++t) CHECK((r7.site(t) == g.w) == (t == 1 || t == 4 || t == 6));
  for (int l = 1; l <= 8; ++l)
    for (const auto& id : ctx.level_entries(l)) {
      const FactoredWord& w = ctx.get(id);
      CHECK(w.support_end() <= l);
      CHECK(w.scale() == 1);
      CHECK(w.phase().is_one());
    }
}

TEST_CASE("full variant: primed twists only") {
  const auto spec = validate_spec(raw_full({1, 1}, {{1, 3}, {2, 3}}));
  const TowerContext ctx(spec, 5);
  const auto& g = ctx.site();
  for (int i = 0; i < spec.j; ++i) {
    CHECK(ctx.get({GenKind::Q, i, 4}).explicit_sites().size() == 1);
    const FactoredWord qp4 = ctx.get({GenKind::QPrime, i, 4});
    CHECK(qp4.site(1) == g.pp_twist[i]);
    CHECK(qp4.site(3) == g.qp_twist[i]);
    CHECK(qp4.site(4) == g.qp[i]);
  }
}

TEST_CASE("shift endomorphism relabels levels") {
  const auto spec = validate_spec(raw_simplified({2, 2}));
  const TowerContext ctx(spec, 9);
  for (int l = 1; l < 9; ++l)
    for (const auto& id : ctx.level_entries(l)) {
      GeneratorWord w{{{id, 1}}};
      const GeneratorWord s = shift_endomorphism(w, 9);
      CHECK(s.letters[0].first.level == l + 1);
      const FactoredWord shifted = ctx.evaluate(s);
      const GeneratorId next{id.kind, id.block, l + 1};
      CHECK(shifted == ctx.get(next));
      const FactoredWord via_tensor =
          FactoredWord::single_site(9, 1, shift_twist(ctx, id)) * tensor_shift(ctx.get(id));
      CHECK(via_tensor == ctx.get(next));
    }
  CHECK(shift_endomorphism(GeneratorWord{}, 9) == GeneratorWord{});
  CHECK_THROWS(shift_endomorphism(GeneratorWord{{{GeneratorId{GenKind::R, 0, 9}, 1}}}, 9));
}

TEST_CASE("default truncation") {
  CHECK(default_truncation(1) == 16);
  CHECK(default_truncation(0) == 4);
  CHECK(default_truncation(2) == 16);
  CHECK(default_truncation(3) == 16);
  CHECK(default_truncation(4) == 37);
}

TEST_CASE("variant parsing") {
  CHECK(parse_variant("simplified") == Variant::Simplified);
  CHECK(parse_variant("full") == Variant::Full);
  CHECK_THROWS_AS(parse_variant("other"), SpecError);
  CHECK(GeneratorId{GenKind::Q, 0, 5}.to_string() == "q[1,5]");
  CHECK(GeneratorId{GenKind::R, 0, 3}.to_string() == "r[3]");
}
