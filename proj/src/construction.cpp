#include "shifttower/construction.hpp"

#include "shifttower/errors.hpp"

#include <sstream>

namespace shifttower {

namespace {

constexpr int kMaxSiteDim = 1024;

}  // namespace

std::string to_string(Variant v) { return v == Variant::Full ? "full" : "simplified"; }

Variant parse_variant(const std::string& s) {
  if (s == "simplified") return Variant::Simplified;
  if (s == "full") return Variant::Full;
  throw SpecError("variant must be \"simplified\" or \"full\", got \"" + s + "\"");
}

AlgebraSpec validate_spec(const RawSpec& raw) {
  if (raw.dims.empty()) throw SpecError("dimension vector is empty");
  AlgebraSpec spec;
  spec.variant = raw.variant;
  spec.j = static_cast<int>(raw.dims.size());
  long long total = 0;
  for (long long d : raw.dims) {
    if (d < 1) throw SpecError("dimension vector entries must be positive integers");
    if (d > kMaxSiteDim) throw CapExceeded("block dimension exceeds site cap");
    spec.a.push_back(static_cast<int>(d));
    total += d;
  }

  if (!spec.full()) {
    if (!raw.traces.empty()) throw SpecError("trace vector given for the simplified variant (n = sum a_i is implied)");
    if (total > kMaxSiteDim) throw CapExceeded("n = sum a_i exceeds site cap");
    spec.n = static_cast<int>(total);
    spec.block_size = spec.a;
  } else {
    if (raw.traces.size() != raw.dims.size())
      throw SpecError("full variant needs one trace e_i/f_i per block (got " + std::to_string(raw.traces.size()) +
                      " for " + std::to_string(raw.dims.size()) + " blocks)");
    BigInt n = 1;
    Rational norm = 0;
    for (size_t i = 0; i < raw.traces.size(); ++i) {
      const auto [e, f] = raw.traces[i];
      if (e < 1 || f < 1) throw SpecError("trace entries e_i/f_i must be positive");
      Rational si(e, f);
      spec.s.push_back(si);
      n *= denominator(si);
      norm += si * spec.a[i];
    }
    if (norm != 1) throw SpecError("sum_i s_i * a_i = " + to_string(norm) + " != 1");
    if (n > kMaxSiteDim) throw CapExceeded("n = prod f_i exceeds site cap");
    spec.n = static_cast<int>(n);
    long long check = 0;
    for (int i = 0; i < spec.j; ++i) {
      Rational ap = spec.s[i] * spec.n;
      if (denominator(ap) != 1) throw SpecError("a_" + std::to_string(i + 1) + "' = n e_i/f_i = " + to_string(ap) + " is not an integer");
      spec.a_prime.push_back(static_cast<int>(numerator(ap)));
      spec.block_size.push_back(spec.a[i] * spec.a_prime.back());
      check += spec.block_size.back();
    }
    if (check != spec.n) throw SpecError("sum_i a_i * a_i' = " + std::to_string(check) + " != n = " + std::to_string(spec.n));
  }
  int off = 0;
  for (int b : spec.block_size) {
    spec.offset.push_back(off);
    off += b;
  }
  spec.N = phase_global_order(spec);
  return spec;
}

int phase_global_order(const AlgebraSpec& spec) {
  long long N = spec.j;
  for (int a : spec.a) N = lcm_ll(N, a);
  for (int a : spec.a_prime) N = lcm_ll(N, a);
  return static_cast<int>(N);
}

// ---------------------------------------------------------------------------

ShiftSets::ShiftSets(int bound) : bound_(bound), s1_(bound + 1, 0), s2_(bound + 1, 0), s3_(bound + 1, 0) {
  if (bound < 1) throw SpecError("shift set bound must be >= 1");
  for (int l = 1;; ++l) {
    const int t = l * (l + 1) / 2;
    if (t > bound) break;
    s1_[t] = 1;
    if (l % 3 == 1) s2_[t] = 1;
    if (l % 3 == 2) s3_[t] = 1;
  }
}

bool ShiftSets::in(const std::vector<char>& v, int d) const {
  if (d < 1) return false;
  if (d > bound_) throw ShapeError("distance " + std::to_string(d) + " beyond shift set bound");
  return v[d] != 0;
}

std::string ShiftSets::stream(int len) const {
  std::string out;
  for (int d = 1; d <= len; ++d) out += s1(d) ? '1' : '0';
  return out;
}

// ---------------------------------------------------------------------------

SiteGenerators build_site_generators(const AlgebraSpec& spec) {
  const int n = spec.n, N = spec.N;
  SiteGenerators g;
  g.identity = SiteMonomial::identity(n, N);
  for (int i = 0; i < spec.j; ++i) {
    const int ai = spec.a[i];
    const int ap = spec.full() ? spec.a_prime[i] : 1;
    const int off = spec.offset[i];
    std::vector<int> p_cols(n, -1), p_ph(n, 0), q_cols(n, -1), q_ph(n, 0);
    std::vector<int> pp_cols(n, -1), pp_ph(n, 0), qp_cols(n, -1), qp_ph(n, 0);
    std::vector<int> e_cols(n, -1);
    for (int x = 0; x < ai; ++x)
      for (int y = 0; y < ap; ++y) {
        const int idx = off + x * ap + y;
        e_cols[idx] = idx;
        p_cols[idx] = idx;
        p_ph[idx] = x * (N / ai);
        // q e_x = e_{x+1}: row x+1 carries column x.
        q_cols[off + ((x + 1) % ai) * ap + y] = idx;
        pp_cols[idx] = idx;
        pp_ph[idx] = y * (N / ap);
        qp_cols[off + x * ap + (y + 1) % ap] = idx;
      }
    auto twist = [&](std::vector<int> cols, const std::vector<int>& ph) {
      for (int k = 0; k < n; ++k)
        if (k < off || k >= off + spec.block_size[i]) cols[k] = k;
      return SiteMonomial(N, std::move(cols), ph);
    };
    g.p.emplace_back(N, p_cols, p_ph);
    g.q.emplace_back(N, q_cols, q_ph);
    g.p_twist.push_back(twist(p_cols, p_ph));
    g.q_twist.push_back(twist(q_cols, q_ph));
    if (spec.full()) {
      g.pp.emplace_back(N, pp_cols, pp_ph);
      g.qp.emplace_back(N, qp_cols, qp_ph);
      g.pp_twist.push_back(twist(pp_cols, pp_ph));
      g.qp_twist.push_back(twist(qp_cols, qp_ph));
    }
    g.block.emplace_back(N, e_cols, std::vector<int>(n, 0));
  }

  // v cycles the block ends e_{end_b} -> e_{end_{b+1 mod j}}, identity elsewhere.
  std::vector<int> v_cols(n), s_cols(n, -1), w_ph(n, 0);
  for (int k = 0; k < n; ++k) v_cols[k] = k;
  for (int b = 0; b < spec.j; ++b) {
    v_cols[spec.block_end((b + 1) % spec.j)] = spec.block_end(b);
    s_cols[spec.block_end(b)] = spec.block_end(b);
    for (int k = 0; k < spec.block_size[b]; ++k) w_ph[spec.offset[b] + k] = b * (N / spec.j);
  }
  g.v = SiteMonomial(N, v_cols, std::vector<int>(n, 0));
  g.s = SiteMonomial(N, s_cols, std::vector<int>(n, 0));
  g.r = g.s * g.v * g.s;
  g.w = SiteMonomial::diagonal(N, w_ph);
  return g;
}

// ---------------------------------------------------------------------------

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::P: return "p";
    case GenKind::Q: return "q";
    case GenKind::PPrime: return "p'";
    case GenKind::QPrime: return "q'";
    case GenKind::R: return "r";
    case GenKind::S: return "s";
    case GenKind::W: return "w";
    case GenKind::E: return "e";
  }
  return "?";
}

namespace {

bool has_block(GenKind k) { return k != GenKind::R && k != GenKind::S && k != GenKind::W; }

}  // namespace

std::string GeneratorId::to_string() const {
  std::ostringstream os;
  os << shifttower::to_string(kind) << '[';
  if (has_block(kind)) os << block + 1 << ',';
  os << level << ']';
  return os.str();
}

std::string GeneratorWord::to_string() const {
  if (letters.empty()) return "1";
  std::ostringstream os;
  for (size_t k = 0; k < letters.size(); ++k) {
    if (k) os << ' ';
    os << letters[k].first.to_string();
    if (letters[k].second != 1) os << '^' << letters[k].second;
  }
  return os.str();
}

std::map<GeneratorId, FactoredWord> build_level_generators(const AlgebraSpec& spec, const ShiftSets& sets,
                                                           const SiteGenerators& site, int level, int truncation) {
  if (level < 1 || level > truncation) throw ShapeError("level outside truncation");
  const int n = spec.n, N = spec.N, K = truncation;
  std::map<GeneratorId, FactoredWord> out;
  auto single = [&](const SiteMonomial& m) { return FactoredWord::single_site(K, level, m); };
  auto twisted = [&](const SiteMonomial& last, const SiteMonomial& on_s2, const SiteMonomial& on_s3) {
    std::map<int, SiteMonomial> sites;
    for (int t = 1; t < level; ++t) {
      if (sets.s2(level - t)) sites.emplace(t, on_s2);
      else if (sets.s3(level - t)) sites.emplace(t, on_s3);
    }
    sites.emplace(level, last);
    return FactoredWord::from_sites(n, K, N, std::move(sites));
  };
  for (int i = 0; i < spec.j; ++i) {
    out.emplace(GeneratorId{GenKind::P, i, level}, single(site.p[i]));
    out.emplace(GeneratorId{GenKind::E, i, level}, single(site.block[i]));
    if (spec.full()) {
      out.emplace(GeneratorId{GenKind::Q, i, level}, single(site.q[i]));
      out.emplace(GeneratorId{GenKind::PPrime, i, level}, single(site.pp[i]));
      out.emplace(GeneratorId{GenKind::QPrime, i, level}, twisted(site.qp[i], site.qp_twist[i], site.pp_twist[i]));
    } else {
      out.emplace(GeneratorId{GenKind::Q, i, level}, twisted(site.q[i], site.q_twist[i], site.p_twist[i]));
    }
  }
  std::map<int, SiteMonomial> r_sites;
  for (int t = 1; t < level; ++t)
    if (sets.s1(level - t)) r_sites.emplace(t, site.w);
  r_sites.emplace(level, site.r);
  FactoredWord r = FactoredWord::from_sites(n, K, N, std::move(r_sites));
  out.emplace(GeneratorId{GenKind::S, 0, level}, r * r.adjoint());
  out.emplace(GeneratorId{GenKind::R, 0, level}, std::move(r));
  out.emplace(GeneratorId{GenKind::W, 0, level}, single(site.w));
  return out;
}

TowerContext::TowerContext(AlgebraSpec spec, int truncation)
    : spec_(std::move(spec)), sets_(std::max(truncation, 1)), site_(build_site_generators(spec_)), K_(truncation) {
  if (truncation < 1) throw SpecError("truncation must be >= 1");
  for (int l = 1; l <= K_; ++l) table_.merge(build_level_generators(spec_, sets_, site_, l, K_));
}

const FactoredWord& TowerContext::get(const GeneratorId& id) const {
  GeneratorId key = id;
  if (!has_block(key.kind)) key.block = 0;
  auto it = table_.find(key);
  if (it == table_.end()) throw ShapeError("no generator " + id.to_string() + " in this tower");
  return it->second;
}

FactoredWord TowerContext::identity() const { return FactoredWord::identity(spec_.n, K_, spec_.N); }

FactoredWord TowerContext::evaluate(const GeneratorWord& w) const {
  FactoredWord acc = identity();
  for (const auto& [id, power] : w.letters) acc = acc * get(id).pow(power);
  return acc;
}

std::vector<GeneratorId> TowerContext::level_generators(int level) const {
  std::vector<GeneratorId> ids;
  for (int i = 0; i < spec_.j; ++i) {
    ids.push_back({GenKind::P, i, level});
    ids.push_back({GenKind::Q, i, level});
    if (spec_.full()) {
      ids.push_back({GenKind::PPrime, i, level});
      ids.push_back({GenKind::QPrime, i, level});
    }
  }
  ids.push_back({GenKind::R, 0, level});
  return ids;
}

std::vector<GeneratorId> TowerContext::level_entries(int level) const {
  std::vector<GeneratorId> ids = level_generators(level);
  for (int i = 0; i < spec_.j; ++i) ids.push_back({GenKind::E, i, level});
  ids.push_back({GenKind::S, 0, level});
  ids.push_back({GenKind::W, 0, level});
  return ids;
}

// ---------------------------------------------------------------------------

GeneratorWord shift_endomorphism(const GeneratorWord& w, int truncation) {
  GeneratorWord out = w;
  for (auto& [id, power] : out.letters) {
    if (id.level >= truncation) throw ShapeError("shift of " + id.to_string() + " leaves the truncation");
    ++id.level;
  }
  return out;
}

FactoredWord tensor_shift(const FactoredWord& w) {
  if (w.support_end() >= w.num_sites()) throw ShapeError("tensor shift: support touches the last site");
  std::map<int, SiteMonomial> sites;
  for (const auto& [k, m] : w.explicit_sites()) sites.emplace(k + 1, m);
  FactoredWord out = FactoredWord::from_sites(w.site_dim(), w.num_sites(), w.order(), std::move(sites));
  if (w.is_zero()) return FactoredWord::zero(w.site_dim(), w.num_sites(), w.order());
  return out.scaled(w.phase()).scaled(w.scale());
}

SiteMonomial shift_twist(const TowerContext& ctx, const GeneratorId& id) {
  const auto& sets = ctx.sets();
  const auto& g = ctx.site();
  const int d = id.level;
  const bool full = ctx.spec().full();
  switch (id.kind) {
    case GenKind::R:
      if (sets.s1(d)) return g.w;
      break;
    case GenKind::Q:
      if (full) break;
      if (sets.s2(d)) return g.q_twist[id.block];
      if (sets.s3(d)) return g.p_twist[id.block];
      break;
    case GenKind::QPrime:
      if (sets.s2(d)) return g.qp_twist[id.block];
      if (sets.s3(d)) return g.pp_twist[id.block];
      break;
    default:
      break;
  }
  return g.identity;
}

int default_truncation(int depth) {
  if (depth < 0) throw SpecError("depth must be >= 0");
  int l2 = depth + 2;
  while (l2 % 3 != 2) ++l2;
  return l2 * (l2 + 1) / 2 + 1;
}

}  // namespace shifttower
