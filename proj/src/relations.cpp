#include "shifttower/relations.hpp"

#include "shifttower/errors.hpp"
#include "shifttower/linalg.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace shifttower {

namespace {

GeneratorWord letter(GenKind k, int block, int level, int power = 1) {
  return GeneratorWord{{{GeneratorId{k, block, level}, power}}};
}

std::string phase_string(RootOfUnity z) {
  std::ostringstream os;
  os << "phase z" << z.order() << '^' << z.exponent();
  return os.str();
}

}  // namespace

std::string describe_expectation(const RelationCase& c) {
  switch (c.expect) {
    case Expectation::Phase: return phase_string(c.lambda);
    case Expectation::BothZero: return "both-zero";
    case Expectation::Equal: return "equal";
  }
  return "?";
}

std::vector<RelationCase> relation_cases(const TowerContext& ctx) {
  const AlgebraSpec& spec = ctx.spec();
  const ShiftSets& sets = ctx.sets();
  const int K = ctx.truncation(), j = spec.j, N = spec.N;
  const RootOfUnity one = RootOfUnity::one(N);
  std::vector<RelationCase> out;

  auto phase = [&](std::string fam, std::vector<int> idx, GeneratorWord a, GeneratorWord b, RootOfUnity lam) {
    out.push_back({std::move(fam), std::move(idx), std::move(a), std::move(b), Expectation::Phase, lam});
  };
  auto zero = [&](std::string fam, std::vector<int> idx, GeneratorWord a, GeneratorWord b) {
    out.push_back({std::move(fam), std::move(idx), std::move(a), std::move(b), Expectation::BothZero, one});
  };
  auto equal = [&](std::string fam, std::vector<int> idx, GeneratorWord a, GeneratorWord b) {
    out.push_back({std::move(fam), std::move(idx), std::move(a), std::move(b), Expectation::Equal, one});
  };

  // Algebra generators of one level: (kind, block) pairs.
  std::vector<std::pair<GenKind, int>> alg;
  for (int i = 0; i < j; ++i) {
    alg.emplace_back(GenKind::P, i);
    alg.emplace_back(GenKind::Q, i);
    if (spec.full()) {
      alg.emplace_back(GenKind::PPrime, i);
      alg.emplace_back(GenKind::QPrime, i);
    }
  }

  // Cross-level families, l > m.
  for (int l = 2; l <= K; ++l)
    for (int m = 1; m < l; ++m) {
      const int d = l - m;
      phase("r-r", {l, m}, letter(GenKind::R, 0, l), letter(GenKind::R, 0, m), sets.s1(d) ? spec.gamma() : one);
      for (auto [k, i] : alg)
        phase("r-A", {l, m, i + 1}, letter(GenKind::R, 0, l), letter(k, i, m), one);
      for (int i = 0; i < j; ++i)
        for (int i2 = 0; i2 < j; ++i2) {
          const std::vector<int> idx{l, m, i + 1, i2 + 1};
          if (!spec.full()) {
            phase("q-p", idx, letter(GenKind::Q, i, l), letter(GenKind::P, i2, m),
                  sets.s2(d) && i == i2 ? spec.gamma_i(i).inverse() : one);
            phase("q-q", idx, letter(GenKind::Q, i, l), letter(GenKind::Q, i2, m),
                  sets.s3(d) && i == i2 ? spec.gamma_i(i) : one);
            phase("p-p", idx, letter(GenKind::P, i, l), letter(GenKind::P, i2, m), one);
            phase("p-q", idx, letter(GenKind::P, i, l), letter(GenKind::Q, i2, m), one);
          } else {
            for (GenKind x : {GenKind::P, GenKind::Q})
              for (GenKind y : {GenKind::P, GenKind::Q})
                phase("unprimed-cross", idx, letter(x, i, l), letter(y, i2, m), one);
            phase("q'-p'", idx, letter(GenKind::QPrime, i, l), letter(GenKind::PPrime, i2, m),
                  sets.s2(d) && i == i2 ? spec.gamma_prime(i).inverse() : one);
            phase("q'-q'", idx, letter(GenKind::QPrime, i, l), letter(GenKind::QPrime, i2, m),
                  sets.s3(d) && i == i2 ? spec.gamma_prime(i) : one);
            phase("p'-p'", idx, letter(GenKind::PPrime, i, l), letter(GenKind::PPrime, i2, m), one);
            phase("p'-q'", idx, letter(GenKind::PPrime, i, l), letter(GenKind::QPrime, i2, m), one);
            for (GenKind x : {GenKind::P, GenKind::Q})
              for (GenKind y : {GenKind::PPrime, GenKind::QPrime}) {
                phase("mixed-cross", idx, letter(x, i, l), letter(y, i2, m), one);
                phase("mixed-cross", idx, letter(y, i, l), letter(x, i2, m), one);
              }
          }
        }
    }

  // Same-level families.
  for (int l = 1; l <= K; ++l) {
    for (int i = 0; i < j; ++i)
      for (int i2 = 0; i2 < j; ++i2) {
        const std::vector<int> idx{l, i + 1, i2 + 1};
        if (i == i2) {
          phase("same-level", idx, letter(GenKind::P, i, l), letter(GenKind::Q, i, l), spec.gamma_i(i));
          if (spec.full()) {
            phase("same-level", idx, letter(GenKind::PPrime, i, l), letter(GenKind::QPrime, i, l), spec.gamma_prime(i));
            for (GenKind x : {GenKind::P, GenKind::Q})
              for (GenKind y : {GenKind::PPrime, GenKind::QPrime})
                phase("same-level", idx, letter(x, i, l), letter(y, i, l), one);
          }
        } else {
          std::vector<std::pair<GenKind, GenKind>> pairs{{GenKind::P, GenKind::Q}, {GenKind::P, GenKind::P},
                                                         {GenKind::Q, GenKind::Q}};
          if (spec.full())
            pairs.insert(pairs.end(), {{GenKind::PPrime, GenKind::QPrime},
                                       {GenKind::PPrime, GenKind::PPrime},
                                       {GenKind::QPrime, GenKind::QPrime}});
          for (auto [x, y] : pairs) zero("same-level", idx, letter(x, i, l), letter(y, i2, l));
        }
      }
    for (int i = 0; i < j; ++i) {
      const GeneratorWord e = letter(GenKind::E, i, l);
      equal("order", {l, i + 1}, letter(GenKind::P, i, l, spec.a[i]), e);
      equal("order", {l, i + 1}, letter(GenKind::Q, i, l, spec.a[i]), e);
      if (spec.full()) {
        equal("order", {l, i + 1}, letter(GenKind::PPrime, i, l, spec.a_prime[i]), e);
        equal("order", {l, i + 1}, letter(GenKind::QPrime, i, l, spec.a_prime[i]), e);
      }
    }
    for (auto [k, i] : alg) phase("w-central", {l, i + 1}, letter(GenKind::W, 0, l), letter(k, i, l), one);
    phase("w-r", {l}, letter(GenKind::W, 0, l), letter(GenKind::R, 0, l), spec.gamma());

    const GeneratorWord s = letter(GenKind::S, 0, l);
    GeneratorWord rr{{{GeneratorId{GenKind::R, 0, l}, 1}, {GeneratorId{GenKind::R, 0, l}, -1}}};
    GeneratorWord rr2{{{GeneratorId{GenKind::R, 0, l}, -1}, {GeneratorId{GenKind::R, 0, l}, 1}}};
    equal("internal", {l}, rr, s);
    equal("internal", {l}, rr2, s);
    equal("internal", {l}, letter(GenKind::R, 0, l, j), s);
    if (j >= 2) equal("internal", {l}, letter(GenKind::R, 0, l, -1), letter(GenKind::R, 0, l, j - 1));
    else equal("internal", {l}, letter(GenKind::R, 0, l), s);
  }
  return out;
}

std::vector<FamilySummary> RelationReport::summaries() const {
  std::vector<FamilySummary> out;
  std::map<std::string, std::size_t> pos;
  for (const auto& e : entries) {
    auto [it, inserted] = pos.try_emplace(e.rel.family, out.size());
    if (inserted) out.push_back({e.rel.family, 0, 0});
    auto& s = out[it->second];
    ++s.checked;
    if (!e.pass) ++s.failed;
  }
  FamilySummary site{"site", 0, 0};
  for (const auto& c : site_checks) {
    ++site.checked;
    if (!c.pass) ++site.failed;
  }
  if (site.checked) out.push_back(site);
  return out;
}

std::vector<const RelationEntry*> RelationReport::failures() const {
  std::vector<const RelationEntry*> out;
  for (const auto& e : entries)
    if (!e.pass) out.push_back(&e);
  return out;
}

RelationReport verify_relations(const TowerContext& ctx) {
  RelationReport rep;
  for (auto& c : relation_cases(ctx)) {
    RelationEntry e;
    e.expected = describe_expectation(c);
    const FactoredWord a = ctx.evaluate(c.a), b = ctx.evaluate(c.b);
    if (c.expect == Expectation::Equal) {
      e.pass = a == b;
      e.observed = e.pass ? "equal" : "differs";
    } else {
      const CommuteResult res = commute_phase(a, b);
      e.observed = res.to_string();
      if (c.expect == Expectation::BothZero) e.pass = res.kind == CommuteKind::BothZero;
      else e.pass = res.kind == CommuteKind::Proportional && res.lambda == c.lambda;
    }
    e.rel = std::move(c);
    rep.entries.push_back(std::move(e));
  }

  const SiteGenerators& g = ctx.site();
  const AlgebraSpec& spec = ctx.spec();
  auto site_check = [&](std::string name, bool ok) { rep.site_checks.push_back({std::move(name), ok}); };
  site_check("r = s v s = v s", g.r == g.s * g.v * g.s && g.r == g.v * g.s);
  site_check("s v = v s", g.s * g.v == g.v * g.s);
  site_check("v^j = 1", g.v.pow(spec.j).is_identity());
  bool wt = true;
  for (int i = 0; i < spec.j; ++i) {
    wt = wt && g.w * g.q_twist[i] == g.q_twist[i] * g.w && g.w * g.p_twist[i] == g.p_twist[i] * g.w;
    if (spec.full())
      wt = wt && g.w * g.qp_twist[i] == g.qp_twist[i] * g.w && g.w * g.pp_twist[i] == g.pp_twist[i] * g.w;
  }
  site_check("w commutes with the twists", wt);

  rep.pass = true;
  for (const auto& e : rep.entries) rep.pass = rep.pass && e.pass;
  for (const auto& c : rep.site_checks) rep.pass = rep.pass && c.pass;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> site_vector(const ModularField& f, const SiteMonomial& m) {
  const int n = m.size();
  std::vector<std::uint64_t> v(static_cast<std::size_t>(n) * n, 0);
  for (int r = 0; r < n; ++r)
    if (m.defined(r)) v[static_cast<std::size_t>(r) * n + m.col(r)] = f.zeta_power(m.phase(r));
  return v;
}

Eigen::VectorXcd site_vector_float(const SiteMonomial& m) {
  const int n = m.size();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) * n);
  for (int r = 0; r < n; ++r)
    if (m.defined(r)) v(static_cast<Eigen::Index>(r) * n + m.col(r)) = RootOfUnity(m.order(), m.phase(r)).value();
  return v;
}

std::vector<SiteMonomial> algebra_basis(const AlgebraSpec& spec, const SiteGenerators& g) {
  std::vector<SiteMonomial> basis;
  for (int i = 0; i < spec.j; ++i) {
    const int ap = spec.full() ? spec.a_prime[i] : 1;
    for (int x = 0; x < spec.a[i]; ++x)
      for (int y = 0; y < spec.a[i]; ++y) {
        SiteMonomial base = g.block[i] * g.p[i].pow(x) * g.q[i].pow(y);
        for (int u = 0; u < ap; ++u)
          for (int v = 0; v < ap; ++v)
            basis.push_back(spec.full() ? base * g.pp[i].pow(u) * g.qp[i].pow(v) : base);
      }
  }
  return basis;
}

/// Entries (row, col, phase exponent) of a word on its first `sites` sites;
/// the word must have scale 1 and support within those sites.
std::vector<std::uint64_t> word_vector(const ModularField& f, const FactoredWord& w, int sites) {
  const SparseElement e = SparseElement::from_word(w.with_num_sites(sites));
  const std::uint64_t dim = e.dim();
  std::vector<std::uint64_t> v(dim * dim, 0);
  for (const auto& [idx, c] : e.terms()) {
    std::uint64_t acc = 0;
    for (const auto& [k, q] : c.terms()) {
      const auto num = static_cast<long long>(numerator(q));
      const auto den = static_cast<long long>(denominator(q));
      acc = f.add(acc, f.mul(f.from_rational_parts(num, den), f.zeta_power(k)));
    }
    v[idx.first * dim + idx.second] = acc;
  }
  return v;
}

}  // namespace

RankResult verify_spanning(const AlgebraSpec& spec) {
  if (spec.n > 64) throw CapExceeded("spanning check: n exceeds single-site cap 64");
  const SiteGenerators g = build_site_generators(spec);
  const auto basis = algebra_basis(spec, g);
  std::vector<SiteMonomial> rpow{g.identity};
  for (int t = 1; t < spec.j; ++t) rpow.push_back(rpow.back() * g.r);

  const long target = static_cast<long>(spec.n) * spec.n;
  RankResult res;
  res.target = target;
  ModularField field(spec.N);
  ModularEliminator elim(field, static_cast<std::size_t>(target));
  for (const auto& rt : rpow)
    for (const auto& b1 : basis) {
      const SiteMonomial left = b1 * rt;
      for (const auto& b2 : basis) {
        ++res.products;
        elim.insert(site_vector(field, left * b2));
        if (static_cast<long>(elim.rank()) == target) break;
      }
      if (static_cast<long>(elim.rank()) == target) break;
    }
  res.dimension = static_cast<long>(elim.rank());
  res.arithmetic = "exact-mod-p";
  if (res.dimension < target && target <= 1024) {
    // A deficient F_p rank may be an unlucky prime: confirm in floating point.
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(target, target);
    for (const auto& rt : rpow)
      for (const auto& b1 : basis)
        for (const auto& b2 : basis) {
          const Eigen::VectorXcd v = site_vector_float(b1 * rt * b2);
          gram.noalias() += v * v.adjoint();
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    const double top = std::max(1.0, es.eigenvalues().maxCoeff());
    long r = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) r += es.eigenvalues()(k) > 1e-18 * top;
    res.dimension = std::max(res.dimension, r);
    res.arithmetic = "float-svd";
  }
  res.pass = res.dimension == target;
  return res;
}

RankResult verify_tower_full(const TowerContext& ctx, int depth, long long cap) {
  const AlgebraSpec& spec = ctx.spec();
  if (depth < 1) throw SpecError("tower depth must be >= 1");
  if (depth > ctx.truncation()) throw SpecError("tower depth exceeds truncation");
  const std::uint64_t dim = checked_power(spec.n, depth, static_cast<std::uint64_t>(cap));
  const std::size_t width = dim * dim;
  ModularField field(spec.N);

  RankResult res;
  res.target = static_cast<long>(width);
  res.arithmetic = "exact-mod-p";

  // Per level: an independent spanning set of <B_t, r_t> as level-t words.
  std::vector<std::vector<FactoredWord>> spanning(depth);
  const long per_level = static_cast<long>(spec.n) * spec.n;
  for (int t = 1; t <= depth; ++t) {
    std::vector<FactoredWord> basis;
    for (int i = 0; i < spec.j; ++i) {
      const int ap = spec.full() ? spec.a_prime[i] : 1;
      const FactoredWord p = ctx.get({GenKind::P, i, t}), q = ctx.get({GenKind::Q, i, t});
      for (int x = 0; x < spec.a[i]; ++x)
        for (int y = 0; y < spec.a[i]; ++y) {
          FactoredWord base = ctx.get({GenKind::E, i, t}) * p.pow(x) * q.pow(y);
          if (!spec.full()) {
            basis.push_back(base);
            continue;
          }
          const FactoredWord pp = ctx.get({GenKind::PPrime, i, t}), qp = ctx.get({GenKind::QPrime, i, t});
          for (int u = 0; u < ap; ++u)
            for (int v = 0; v < ap; ++v) basis.push_back(base * pp.pow(u) * qp.pow(v));
        }
    }
    const FactoredWord r = ctx.get({GenKind::R, 0, t});
    ModularEliminator elim(field, width);
    for (int e = 0; e < spec.j && static_cast<long>(elim.rank()) < per_level; ++e) {
      const FactoredWord rt = r.pow(e);
      for (const auto& b1 : basis) {
        const FactoredWord left = b1 * rt;
        for (const auto& b2 : basis) {
          FactoredWord x = left * b2;
          if (x.is_zero()) continue;
          if (elim.insert(word_vector(field, x, depth))) spanning[t - 1].push_back(std::move(x));
          if (static_cast<long>(elim.rank()) == per_level) break;
        }
        if (static_cast<long>(elim.rank()) == per_level) break;
      }
    }
  }

  ModularEliminator elim(field, width);
  std::function<void(int, const FactoredWord&)> rec = [&](int t, const FactoredWord& acc) {
    if (static_cast<long>(elim.rank()) == res.target) return;
    if (t == depth) {
      ++res.products;
      if (!acc.is_zero()) elim.insert(word_vector(field, acc, depth));
      return;
    }
    for (const auto& x : spanning[t]) rec(t + 1, acc * x);
  };
  rec(0, ctx.identity());
  res.dimension = static_cast<long>(elim.rank());
  res.pass = res.dimension == res.target;
  return res;
}

// ---------------------------------------------------------------------------

ShiftCheckReport verify_shift_endomorphism(const TowerContext& ctx, unsigned seed, int random_products) {
  const int K = ctx.truncation();
  ShiftCheckReport rep;
  // Independent rebuild of every level, compared with the shifted table.
  for (int l = 1; l < K; ++l) {
    const auto next = build_level_generators(ctx.spec(), ctx.sets(), ctx.site(), l + 1, K);
    for (const GeneratorId& id : ctx.level_entries(l)) {
      ++rep.generator_checks;
      const GeneratorWord shifted = shift_endomorphism(GeneratorWord{{{id, 1}}}, K);
      const GeneratorId target = shifted.letters.front().first;
      const FactoredWord via_tensor =
          FactoredWord::single_site(K, 1, shift_twist(ctx, id)) * tensor_shift(ctx.get(id));
      bool ok = via_tensor == next.at(target) && ctx.evaluate(shifted) == next.at(target);
      if (!ok) rep.generator_mismatches.push_back(id.to_string() + " -> " + target.to_string());
    }
  }

  auto trace_check = [&](const GeneratorWord& w) {
    ++rep.trace_checks;
    const CycNumber a = ctx.evaluate(w).normalized_trace();
    const CycNumber b = ctx.evaluate(shift_endomorphism(w, K)).normalized_trace();
    if (!(a == b)) rep.trace_mismatches.push_back(w.to_string() + ": " + a.to_string() + " vs " + b.to_string());
  };
  std::vector<GeneratorId> pool;
  for (int l = 1; l < K; ++l)
    for (const GeneratorId& id : ctx.level_entries(l)) {
      pool.push_back(id);
      trace_check(GeneratorWord{{{id, 1}}});
    }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> degree(1, 3), power(-2, 2);
  for (int t = 0; t < random_products; ++t) {
    GeneratorWord w;
    const int deg = degree(rng);
    for (int k = 0; k < deg; ++k) {
      int p = power(rng);
      if (p == 0) p = 1;
      w.letters.emplace_back(pool[pick(rng)], p);
    }
    ++rep.random_products;
    trace_check(w);
  }
  rep.pass = rep.generator_mismatches.empty() && rep.trace_mismatches.empty();
  return rep;
}

// ---------------------------------------------------------------------------

ShiftWindowReport verify_unitary_shift_window(const TowerContext& ctx, int window, int search_depth) {
  const AlgebraSpec& spec = ctx.spec();
  const int K = ctx.truncation(), j = spec.j;
  ShiftWindowReport rep;
  rep.window = window;
  rep.search_depth = search_depth;
  rep.stream = ctx.sets().stream(std::max(K - 1, 1));
  if (window < 1 || window > K) throw SpecError("shift window must lie in 1..K");
  if (window > 16) throw CapExceeded("shift window exceeds 16");
  auto r = [&](int level) { return ctx.get({GenKind::R, 0, level}); };

  rep.condition1 = true;
  for (int l = 1; l <= K; ++l) rep.condition1 = rep.condition1 && r(l).pow(j) == ctx.get({GenKind::S, 0, l});
  rep.condition3 = true;
  for (int k = 1; k < K; ++k) {
    const CommuteResult c = commute_phase(r(1 + k), r(1));
    rep.condition3 = rep.condition3 && c.kind == CommuteKind::Proportional &&
                     (c.lambda.is_one() || c.lambda == spec.gamma());
  }

  // u(Q, S) = Π r_{1+i}^{e_i} over Q ⊆ {0..window−1}, exponents 1..j−1.
  const int max_k = std::min(search_depth, K - 1);
  std::vector<int> exps(window, 0);
  while (true) {
    int pos = 0;
    while (pos < window && exps[pos] == j - 1) exps[pos++] = 0;
    if (pos == window || j < 2) break;
    ++exps[pos];
    FactoredWord u = ctx.identity();
    std::ostringstream name;
    for (int i = 0; i < window; ++i) {
      if (!exps[i]) continue;
      u = u * r(1 + i).pow(exps[i]);
      name << "r" << 1 + i;
      if (exps[i] != 1) name << '^' << exps[i];
      name << ' ';
    }
    ++rep.words;
    bool found = false;
    for (int k = 0; k <= max_k && !found; ++k) {
      const CommuteResult c = commute_phase(r(1 + k), u);
      if (c.kind == CommuteKind::Proportional && !c.lambda.is_one()) {
        found = true;
        if (rep.witnesses.size() < 8)
          rep.witnesses.push_back(name.str() + "k=" + std::to_string(k) + " " + c.to_string());
      }
    }
    if (found) ++rep.words_with_witness;
    else rep.missing.push_back(name.str());
  }
  rep.pass = rep.condition1 && rep.condition3 && rep.missing.empty();
  return rep;
}

}  // namespace shifttower
