#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shifttower/errors.hpp"
#include "shifttower/relations.hpp"

#include <set>

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

std::set<std::string> failing_families(const RelationReport& rep) {
  std::set<std::string> out;
  for (const auto& s : rep.summaries())
    if (s.failed) out.insert(s.family);
  return out;
}

}  // namespace

TEST_CASE("(1,1) passes every family at K = 12") {
  const TowerContext ctx(simplified({1, 1}), 12);
  const auto rep = verify_relations(ctx);
  CHECK(rep.pass);
  CHECK(rep.failures().empty());
  long checked = 0;
  for (const auto& s : rep.summaries()) checked += s.checked;
  CHECK(checked == static_cast<long>(rep.entries.size() + rep.site_checks.size()));
  for (const auto& c : rep.site_checks) CHECK(c.pass);
}

TEST_CASE("(2,2) passes at K = 3") {
  const TowerContext ctx(simplified({2, 2}), 3);
  CHECK(verify_relations(ctx).pass);
}

TEST_CASE("q-q cross family fails where q~ and p~ twists collide") {
  const TowerContext ctx(simplified({2, 2}), 12);
  const auto rep = verify_relations(ctx);
  CHECK_FALSE(rep.pass);
  CHECK(failing_families(rep) == std::set<std::string>{"q-q"});
  for (const auto* e : rep.failures()) {
    const int d = e->rel.indices[0] - e->rel.indices[1];
    CHECK((d == 2 || d == 7));
    CHECK(e->observed == "not-proportional");
  }
  const TowerContext full(theorem2(), 12);
  const auto frep = verify_relations(full);
  CHECK(failing_families(frep) == std::set<std::string>{"q'-q'"});
}

TEST_CASE("relation case details") {
  const auto spec = simplified({2, 2});
  const TowerContext ctx(spec, 8);
  // distance 6: anticommuting r's, no q twist.
  const auto c = commute_phase(ctx.get({GenKind::R, 0, 7}), ctx.get({GenKind::R, 0, 1}));
  CHECK(c.kind == CommuteKind::Proportional);
  CHECK(c.lambda == spec.gamma());
  for (int i = 0; i < spec.j; ++i) {
    CHECK(commute_phase(ctx.get({GenKind::Q, i, 7}), ctx.get({GenKind::Q, i, 1})).commutes());
    const auto pq = commute_phase(ctx.get({GenKind::P, i, 3}), ctx.get({GenKind::Q, i, 3}));
    CHECK(pq.kind == CommuteKind::Proportional);
    CHECK(pq.lambda == spec.gamma_i(i));
  }
  // different blocks at the same level multiply to zero.
  CHECK(commute_phase(ctx.get({GenKind::P, 0, 2}), ctx.get({GenKind::Q, 1, 2})).kind == CommuteKind::BothZero);

  bool saw_r_r = false;
  for (const auto& rc : relation_cases(ctx)) {
    if (rc.family == "r-r" && rc.indices == std::vector<int>{7, 1}) {
      saw_r_r = true;
      CHECK(rc.lambda == spec.gamma());
      CHECK(describe_expectation(rc) == "phase z2^1");
    }
  }
  CHECK(saw_r_r);
}

TEST_CASE("full variant: unprimed generators commute across levels") {
  const auto spec = theorem2();
  const TowerContext ctx(spec, 6);
  for (int l = 2; l <= 6; ++l)
    for (int i = 0; i < spec.j; ++i)
      for (int i2 = 0; i2 < spec.j; ++i2) {
        CHECK(commute_phase(ctx.get({GenKind::P, i, l}), ctx.get({GenKind::Q, i2, 1})).commutes());
        CHECK(commute_phase(ctx.get({GenKind::Q, i, l}), ctx.get({GenKind::Q, i2, 1})).commutes());
      }
}

TEST_CASE("spanning") {
  const auto a = verify_spanning(simplified({1, 1}));
  CHECK(a.dimension == 4);
  CHECK(a.pass);
  CHECK(a.arithmetic == "exact-mod-p");
  CHECK(verify_spanning(simplified({2, 2})).dimension == 16);
  CHECK(verify_spanning(theorem2()).dimension == 81);
  CHECK(verify_spanning(simplified({1, 2, 3})).pass);
  CHECK(verify_spanning(simplified({1})).dimension == 1);
}

TEST_CASE("tower fullness") {
  const TowerContext c11(simplified({1, 1}), 4);
  CHECK(verify_tower_full(c11, 1).dimension == 4);
  CHECK(verify_tower_full(c11, 2).dimension == 16);
  CHECK(verify_tower_full(c11, 3).dimension == 64);
  const TowerContext c22(simplified({2, 2}), 3);
  const auto r = verify_tower_full(c22, 2);
  CHECK(r.dimension == 256);
  CHECK(r.pass);
  CHECK_THROWS_AS(verify_tower_full(c22, 3, 16), CapExceeded);
  const TowerContext full(theorem2(), 2);
  CHECK(verify_tower_full(full, 1, 81).dimension == 81);
}

TEST_CASE("shift endomorphism is exact and trace preserving") {
  for (const auto& spec : {simplified({1, 1}), simplified({2, 2}), theorem2()}) {
    const TowerContext ctx(spec, 12);
    const auto rep = verify_shift_endomorphism(ctx, 1, 100);
    CHECK(rep.pass);
    CHECK(rep.generator_mismatches.empty());
    CHECK(rep.trace_mismatches.empty());
    CHECK(rep.random_products == 100);
    CHECK(rep.generator_checks > 0);
  }
}

TEST_CASE("unitary shift window") {
  const auto spec = simplified({1, 1});
  const TowerContext ctx(spec, 16);
  const auto r1 = ctx.get({GenKind::R, 0, 1}), r2 = ctx.get({GenKind::R, 0, 2});
  const auto c = commute_phase(r2, r1);
  CHECK(c.lambda == spec.gamma());
  const auto c12 = commute_phase(r2, r1 * r2);
  CHECK(c12.kind == CommuteKind::Proportional);
  CHECK(c12.lambda == spec.gamma());

  const auto rep = verify_unitary_shift_window(ctx, 6, 15);
  CHECK(rep.pass);
  CHECK(rep.condition1);
  CHECK(rep.condition3);
  CHECK(rep.words == 63);
  CHECK(rep.words_with_witness == 63);
  CHECK(rep.stream == "101001000100001");
  CHECK_THROWS_AS(verify_unitary_shift_window(ctx, 17, 15), SpecError);

  const TowerContext c22(simplified({2, 2}), 16);
  CHECK(verify_unitary_shift_window(c22, 6, 15).pass);
  const TowerContext full(theorem2(), 16);
  CHECK(verify_unitary_shift_window(full, 6, 15).pass);
}
