#include "shifttower/commutant.hpp"

#include "shifttower/errors.hpp"
#include "shifttower/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace shifttower {

namespace {

/// Row map of a window word: row a -> column sigma[a] (or -1), phase phi[a]
/// including the word's coefficient phase.
struct MonomialMap {
  std::vector<long> sigma;
  std::vector<int> phi;
};

MonomialMap monomial_map(const FactoredWord& w) {
  const int n = w.site_dim(), m = w.num_sites();
  std::uint64_t dim = 1;
  for (int k = 0; k < m; ++k) dim *= static_cast<std::uint64_t>(n);
  MonomialMap mm{std::vector<long>(dim, -1), std::vector<int>(dim, 0)};
  std::vector<SiteMonomial> f;
  for (int k = 1; k <= m; ++k) f.push_back(w.site(k));
  for (std::uint64_t row = 0; row < dim; ++row) {
    std::uint64_t rem = row, col = 0, stride = dim;
    long long ph = w.phase().exponent();
    bool alive = true;
    for (int k = 0; k < m; ++k) {
      stride /= static_cast<std::uint64_t>(n);
      const int digit = static_cast<int>(rem / stride);
      rem %= stride;
      if (!f[k].defined(digit)) {
        alive = false;
        break;
      }
      col += static_cast<std::uint64_t>(f[k].col(digit)) * stride;
      ph += f[k].phase(digit);
    }
    if (!alive) continue;
    mm.sigma[row] = static_cast<long>(col);
    mm.phi[row] = static_cast<int>(ph % w.order());
  }
  return mm;
}

/// Union-find over matrix units with x_u = ζ^{rel[u]} x_{parent[u]}.
class PhaseUnionFind {
 public:
  PhaseUnionFind(std::size_t size, int order) : parent_(size), rel_(size, 0), bad_(size, 0), order_(order) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t u) {
    std::size_t root = u;
    long long acc = 0;
    while (parent_[root] != root) {
      acc += rel_[root];
      root = parent_[root];
    }
    // Path compression with accumulated phases.
    long long remaining = acc;
    std::size_t cur = u;
    while (parent_[cur] != cur) {
      const std::size_t next = parent_[cur];
      const int r = rel_[cur];
      rel_[cur] = static_cast<int>(mod(remaining));
      parent_[cur] = root;
      remaining -= r;
      cur = next;
    }
    return {root, static_cast<int>(mod(acc))};
  }

  /// x_u = ζ^e x_v.
  void unite(std::size_t u, std::size_t v, long long e) {
    auto [ru, eu] = find(u);
    auto [rv, ev] = find(v);
    const long long t = mod(e + ev - eu);
    if (ru == rv) {
      if (t != 0) bad_[ru] |= kInconsistent;
      return;
    }
    parent_[ru] = rv;
    rel_[ru] = static_cast<int>(t);
    bad_[rv] |= bad_[ru];
  }

  static constexpr char kInconsistent = 1;
  static constexpr char kZero = 2;

  void force_zero(std::size_t u) { bad_[find(u).first] |= kZero; }
  char bad(std::size_t root) const { return bad_[root]; }

 private:
  long long mod(long long x) const {
    x %= order_;
    return x < 0 ? x + order_ : x;
  }

  std::vector<std::size_t> parent_;
  std::vector<int> rel_;
  std::vector<char> bad_;
  int order_;
};

}  // namespace

std::vector<WindowRestriction> restrict_generators(const TowerContext& ctx, int window, int depth) {
  const int K = ctx.truncation();
  if (depth < 0) throw SpecError("depth must be >= 0");
  if (window < depth) throw SpecError("window must be >= depth");
  if (window < 1 || window > K) throw SpecError("window must lie in 1..K");
  std::vector<WindowRestriction> out;
  std::set<std::map<int, SiteMonomial>> seen;
  for (int l = depth + 1; l <= K; ++l)
    for (const GeneratorId& id : ctx.level_generators(l)) {
      const FactoredWord& g = ctx.get(id);
      for (int adj = 0; adj < 2; ++adj) {
        const FactoredWord h = adj ? g.adjoint() : g;
        if (h.is_zero()) throw ConstructionBug("generator " + id.to_string() + " is the zero word");
        FactoredWord factor = h.restrict_sites(1, window);
        if (factor.explicit_sites().empty()) continue;
        if (!seen.insert(factor.explicit_sites()).second) continue;
        out.push_back({id.to_string() + (adj ? "*" : ""), std::move(factor), true});
      }
    }
  return out;
}

CommutantBasis commutant_basis(const std::vector<WindowRestriction>& restrictions, int site_dim, int window,
                               int order, long long cap) {
  const std::uint64_t D = checked_power(site_dim, window, static_cast<std::uint64_t>(cap));
  const std::size_t nodes = D * D;
  PhaseUnionFind uf(nodes, order);
  auto node = [D](std::uint64_t a, std::uint64_t b) { return static_cast<std::size_t>(a * D + b); };

  for (const auto& res : restrictions) {
    const FactoredWord& g = res.factor;
    if (g.site_dim() != site_dim || g.num_sites() != window || g.order() != order)
      throw ShapeError("restriction shape does not match the window");
    const MonomialMap mm = monomial_map(g);
    std::vector<char> in_image(D, 0);
    for (std::uint64_t a = 0; a < D; ++a)
      if (mm.sigma[a] >= 0) in_image[mm.sigma[a]] = 1;
    for (std::uint64_t a = 0; a < D; ++a) {
      const bool a_def = mm.sigma[a] >= 0;
      for (std::uint64_t b = 0; b < D; ++b) {
        if (mm.sigma[b] >= 0) {
          if (a_def)
            uf.unite(node(a, b), node(mm.sigma[a], mm.sigma[b]), static_cast<long long>(mm.phi[a]) - mm.phi[b]);
          else
            uf.force_zero(node(a, b));
        }
        if (a_def && !in_image[b]) uf.force_zero(node(mm.sigma[a], b));
      }
    }
  }

  CommutantBasis out;
  out.site_dim = site_dim;
  out.window = window;
  out.order = order;
  // Components keyed by root, in order of their least node.
  std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> comps;
  std::vector<std::size_t> root_order;
  for (std::size_t u = 0; u < nodes; ++u) {
    auto [root, e] = uf.find(u);
    auto [it, inserted] = comps.try_emplace(root);
    if (inserted) root_order.push_back(root);
    it->second.emplace_back(u, e);
  }
  out.components = static_cast<long>(comps.size());
  out.identity_in_span = true;
  std::vector<char> diag_covered(D, 0);
  for (std::size_t root : root_order) {
    const auto& members = comps[root];
    if (const char why = uf.bad(root)) {
      if (why & PhaseUnionFind::kInconsistent) ++out.inconsistent_components;
      else ++out.zero_components;
      continue;
    }
    const int e0 = members.front().second;
    SparseElement el(site_dim, window, order);
    bool has_diag = false, all_diag = true;
    int diag_phase = -1;
    bool diag_phase_uniform = true;
    for (const auto& [u, e] : members) {
      const std::uint64_t a = u / D, b = u % D;
      const RootOfUnity z(order, static_cast<long long>(e) - e0);
      el.add_term(a, b, CycNumber::from_root(z));
      if (a == b) {
        has_diag = true;
        diag_covered[a] = 1;
        if (diag_phase < 0) diag_phase = z.exponent();
        else diag_phase_uniform = diag_phase_uniform && diag_phase == z.exponent();
      } else {
        all_diag = false;
      }
    }
    if (has_diag && !(all_diag && diag_phase_uniform)) out.identity_in_span = false;
    out.elements.push_back(std::move(el));
  }
  for (std::uint64_t a = 0; a < D; ++a)
    if (!diag_covered[a]) out.identity_in_span = false;
  return out;
}

std::vector<ContainmentVerdict> commutant_containment(const TowerContext& ctx, int depth) {
  const AlgebraSpec& spec = ctx.spec();
  const int K = ctx.truncation();
  std::vector<GeneratorId> predicted;
  for (int l = 1; l <= depth; ++l) {
    if (spec.full()) {
      for (int i = 0; i < spec.j; ++i) {
        predicted.push_back({GenKind::P, i, l});
        predicted.push_back({GenKind::Q, i, l});
      }
    } else {
      predicted.push_back({GenKind::W, 0, l});
      for (int i = 0; i < spec.j; ++i) predicted.push_back({GenKind::E, i, l});
    }
  }
  std::vector<ContainmentVerdict> out;
  for (const auto& pid : predicted) {
    ContainmentVerdict v;
    v.generator = pid.to_string();
    const FactoredWord& x = ctx.get(pid);
    for (int l = depth + 1; l <= K; ++l)
      for (const auto& gid : ctx.level_generators(l)) {
        const FactoredWord& g = ctx.get(gid);
        for (int adj = 0; adj < 2; ++adj) {
          ++v.checked;
          const CommuteResult c = commute_phase(x, adj ? g.adjoint() : g);
          if (!c.commutes()) v.violations.push_back(gid.to_string() + (adj ? "*" : "") + ": " + c.to_string());
        }
      }
    v.pass = v.violations.empty();
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> Structure::dimension_vector() const {
  std::vector<int> v;
  for (const auto& b : blocks) v.push_back(b.block_dim);
  return v;
}

std::vector<Rational> Structure::trace_vector() const {
  std::vector<Rational> v;
  for (const auto& b : blocks) v.push_back(b.min_trace);
  return v;
}

namespace {

/// Continued-fraction rational approximation with bounded denominator.
std::optional<Rational> lift_rational(double x, long long max_den, double tol) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::abs(fl) > 1e15) break;
    const auto a = static_cast<long long>(fl);
    const long long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) < tol) return Rational(h1, k1);
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) < tol) return Rational(h1, k1);
  return std::nullopt;
}

struct UnitIndex {
  std::map<SparseElement::Index, std::pair<std::size_t, RootOfUnity>> where;
  std::vector<std::size_t> sizes;
};

UnitIndex index_units(const CommutantBasis& basis) {
  UnitIndex idx;
  for (std::size_t c = 0; c < basis.elements.size(); ++c) {
    const auto& terms = basis.elements[c].terms();
    idx.sizes.push_back(terms.size());
    for (const auto& [u, coeff] : terms) {
      auto single = coeff.single_term();
      if (!single || single->second != 1)
        throw ConstructionBug("structure analysis expects unit-modulus monomial coefficients");
      if (!idx.where.emplace(u, std::make_pair(c, single->first)).second)
        throw ConstructionBug("structure analysis expects disjointly supported basis elements");
    }
  }
  return idx;
}

/// Whether x lies in the span, decided exactly on the disjoint supports.
bool in_span(const SparseElement& x, const UnitIndex& idx, int order) {
  std::map<std::size_t, std::vector<CycNumber>> ratios;
  for (const auto& [u, coeff] : x.terms()) {
    auto it = idx.where.find(u);
    if (it == idx.where.end()) {
      if (!coeff.is_zero()) return false;
      continue;
    }
    ratios[it->second.first].push_back(coeff * it->second.second.inverse());
  }
  for (const auto& [c, rs] : ratios) {
    bool all_zero = true;
    for (const auto& r : rs) all_zero = all_zero && r.is_zero();
    if (all_zero) continue;
    if (rs.size() != idx.sizes[c]) return false;
    for (const auto& r : rs)
      if (!(r == rs.front())) return false;
  }
  (void)order;
  return true;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

}  // namespace

Structure analyze_structure(const CommutantBasis& basis, unsigned seed) {
  Structure st;
  const std::size_t dim = basis.elements.size();
  if (dim == 0) {
    st.note = "empty basis";
    return st;
  }
  const UnitIndex idx = index_units(basis);
  const int order = basis.order;

  st.closed_product = true;
  for (std::size_t a = 0; a < dim && st.closed_product; ++a)
    for (std::size_t b = 0; b < dim && st.closed_product; ++b)
      st.closed_product = in_span(basis.elements[a] * basis.elements[b], idx, order);
  st.closed_adjoint = true;
  for (std::size_t a = 0; a < dim && st.closed_adjoint; ++a)
    st.closed_adjoint = in_span(basis.elements[a].adjoint(), idx, order);

  const auto D = static_cast<Eigen::Index>(basis.elements.front().dim());
  std::vector<Eigen::MatrixXcd> dense;
  dense.reserve(dim);
  for (const auto& e : basis.elements) dense.push_back(e.to_dense());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto generic = [&] {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(D, D);
    for (const auto& b : dense) x += std::complex<double>(gauss(rng), gauss(rng)) * b;
    return x;
  };
  const Eigen::MatrixXcd X = generic(), Y = generic();
  const std::vector<Eigen::MatrixXcd> probes{X, X.adjoint(), Y, Y.adjoint()};

  // Center: coefficient vectors c with [Σ c_C B_C, probe] = 0 for all probes.
  Eigen::MatrixXcd M(4 * D * D, static_cast<Eigen::Index>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    Eigen::VectorXcd col(4 * D * D);
    for (int k = 0; k < 4; ++k)
      col.segment(k * D * D, D * D) = vec(dense[c] * probes[k] - probes[k] * dense[c]);
    M.col(static_cast<Eigen::Index>(c)) = col;
  }
  // Columns are scaled by the element norms so the tolerance is uniform.
  Eigen::VectorXd norms(dim);
  for (std::size_t c = 0; c < dim; ++c) norms(c) = std::sqrt(static_cast<double>(idx.sizes[c]));
  const Eigen::MatrixXcd Mn = M * norms.cwiseInverse().asDiagonal();
  const Eigen::MatrixXcd ns = gram_nullspace(Mn.adjoint() * Mn, 1e-7);
  st.center_dim = static_cast<int>(ns.cols());
  if (st.center_dim == 0) {
    st.note = "no central elements found";
    return st;
  }

  // Generic Hermitian central element and its eigenprojections.
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index z = 0; z < ns.cols(); ++z) {
    Eigen::MatrixXcd Zm = Eigen::MatrixXcd::Zero(D, D);
    for (std::size_t c = 0; c < dim; ++c) Zm += ns(static_cast<Eigen::Index>(c), z) / norms(c) * dense[c];
    H += gauss(rng) * (Zm + Zm.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::vector<Eigen::Index>> groups;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (groups.empty() || ev(k) - ev(groups.back().back()) > 1e-6 * scale) groups.emplace_back();
    groups.back().push_back(k);
  }

  st.ok = st.closed_product && st.closed_adjoint;
  long total_rank = 0, total_dim = 0;
  for (const auto& g : groups) {
    Eigen::MatrixXcd V(D, static_cast<Eigen::Index>(g.size()));
    for (std::size_t c = 0; c < g.size(); ++c) V.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(g[c]);
    const Eigen::MatrixXcd P = V * V.adjoint();

    StructureBlock blk;
    blk.projection_rank = static_cast<long>(g.size());
    Eigen::MatrixXcd PB(D * D, static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) PB.col(static_cast<Eigen::Index>(c)) = vec(P * dense[c]);
    const int rank = float_rank(PB, 1e-9);
    const int mz = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rank))));
    if (mz * mz != rank) {
      st.ok = false;
      st.note = "non-square block dimension " + std::to_string(rank);
    }
    blk.block_dim = mz;
    blk.min_trace = mz > 0 ? Rational(blk.projection_rank, static_cast<long long>(D) * mz) : Rational(0);

    // Coordinates of P in the basis; exact check when they lift to Q.
    std::vector<std::optional<Rational>> coords;
    bool exact = true;
    Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(D, D);
    for (std::size_t c = 0; c < dim; ++c) {
      std::complex<double> acc = 0;
      for (const auto& [u, coeff] : basis.elements[c].terms())
        acc += std::conj(coeff.to_complex()) * P(static_cast<Eigen::Index>(u.first), static_cast<Eigen::Index>(u.second));
      acc /= static_cast<double>(idx.sizes[c]);
      recon += acc * dense[c];
      auto q = std::abs(acc.imag()) < 1e-9 ? lift_rational(acc.real(), 1000000, 1e-9) : std::nullopt;
      exact = exact && q.has_value();
      coords.push_back(q);
    }
    const bool in_span_float = (recon - P).norm() < 1e-8;
    if (exact) {
      SparseElement Pe(basis.site_dim, basis.window, order);
      for (std::size_t c = 0; c < dim; ++c)
        if (*coords[c] != 0) Pe = Pe + basis.elements[c] * CycNumber::from_rational(order, *coords[c]);
      blk.verification = "exact";
      blk.projection_ok = in_span_float && Pe * Pe == Pe && Pe.adjoint() == Pe &&
                          Pe.normalized_trace() == CycNumber::from_rational(order, Rational(blk.projection_rank, D));
    } else {
      blk.verification = "float";
      blk.projection_ok = in_span_float && (P * P - P).norm() < 1e-9 && (P - P.adjoint()).norm() < 1e-9;
    }
    st.ok = st.ok && blk.projection_ok;
    total_rank += blk.projection_rank;
    total_dim += static_cast<long>(mz) * mz;
    st.blocks.push_back(std::move(blk));
  }
  if (total_rank != D || total_dim != static_cast<long>(dim)) {
    st.ok = false;
    if (st.note.empty()) st.note = "block data do not account for the whole span";
  }
  if (static_cast<int>(st.blocks.size()) != st.center_dim) {
    st.ok = false;
    if (st.note.empty()) st.note = "center dimension differs from the number of blocks";
  }
  std::sort(st.blocks.begin(), st.blocks.end(), [](const StructureBlock& a, const StructureBlock& b) {
    return a.block_dim != b.block_dim ? a.block_dim < b.block_dim : a.min_trace < b.min_trace;
  });
  return st;
}

bool supported_in_first_sites(const CommutantBasis& basis, int depth) {
  const std::uint64_t T = checked_power(basis.site_dim, basis.window - depth, std::uint64_t{1} << 40);
  for (const auto& el : basis.elements) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, const CycNumber*>> outer;
    for (const auto& [u, c] : el.terms()) {
      if (u.first % T != u.second % T) return false;
      auto [it, inserted] = outer.try_emplace({u.first / T, u.second / T}, 0, &c);
      ++it->second.first;
      if (!(*it->second.second == c)) return false;
    }
    for (const auto& [k, v] : outer)
      if (v.first != T) return false;
  }
  return true;
}

Prediction predicted_commutant(const AlgebraSpec& spec, int depth) {
  std::vector<std::pair<int, Rational>> blocks{{1, Rational(1)}};
  for (int t = 0; t < depth; ++t) {
    std::vector<std::pair<int, Rational>> next;
    for (const auto& [d, tr] : blocks)
      for (int i = 0; i < spec.j; ++i) {
        if (spec.full()) next.emplace_back(d * spec.a[i], tr * spec.s[i]);
        else next.emplace_back(d, tr * Rational(spec.a[i], spec.n));
      }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end());
  Prediction p;
  for (const auto& [d, tr] : blocks) {
    p.dimension += static_cast<long>(d) * d;
    p.dimension_vector.push_back(d);
    p.trace_vector.push_back(tr);
  }
  return p;
}

CommutantReport compute_commutant(const TowerContext& ctx, int depth, int window, unsigned seed, long long cap) {
  CommutantReport rep;
  rep.window = window;
  rep.depth = depth;
  rep.truncation = ctx.truncation();
  rep.default_truncation = default_truncation(depth);
  const auto restrictions = restrict_generators(ctx, window, depth);
  rep.restrictions = static_cast<long>(restrictions.size());
  rep.basis = commutant_basis(restrictions, ctx.spec().n, window, ctx.spec().N, cap);
  rep.containment = commutant_containment(ctx, depth);
  rep.containment_pass = true;
  for (const auto& v : rep.containment) rep.containment_pass = rep.containment_pass && v.pass;
  rep.locality = supported_in_first_sites(rep.basis, depth);
  rep.structure = analyze_structure(rep.basis, seed);
  rep.prediction = predicted_commutant(ctx.spec(), depth);
  rep.matches_prediction = static_cast<long>(rep.basis.elements.size()) == rep.prediction.dimension &&
                           rep.structure.ok && rep.structure.dimension_vector() == rep.prediction.dimension_vector &&
                           rep.structure.trace_vector() == rep.prediction.trace_vector;
  return rep;
}

CommutantBasis direct_predicted_basis(const AlgebraSpec& spec, int depth) {
  // Single-site matrix units of A (full) or Z(A) (simplified) as
  // (row, col) lists, then their k-fold tensor products.
  std::vector<std::vector<std::pair<int, int>>> units;
  for (int i = 0; i < spec.j; ++i) {
    if (!spec.full()) {
      std::vector<std::pair<int, int>> u;
      for (int k = 0; k < spec.block_size[i]; ++k) u.emplace_back(spec.offset[i] + k, spec.offset[i] + k);
      units.push_back(std::move(u));
      continue;
    }
    const int ap = spec.a_prime[i];
    for (int x = 0; x < spec.a[i]; ++x)
      for (int x2 = 0; x2 < spec.a[i]; ++x2) {
        std::vector<std::pair<int, int>> u;
        for (int y = 0; y < ap; ++y) u.emplace_back(spec.offset[i] + x * ap + y, spec.offset[i] + x2 * ap + y);
        units.push_back(std::move(u));
      }
  }
  CommutantBasis out;
  out.site_dim = spec.n;
  out.window = std::max(depth, 1);
  out.order = spec.N;
  const int sites = out.window;
  std::vector<std::size_t> choice(sites, 0);
  const std::size_t per_site = depth == 0 ? 1 : units.size();
  const auto n = static_cast<std::uint64_t>(spec.n);
  while (true) {
    SparseElement el(spec.n, sites, spec.N);
    // Enumerate the tensor product of the chosen units.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> acc{{0, 0}};
    for (int s = 0; s < sites; ++s) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
      if (depth == 0) {
        for (auto [r, c] : acc)
          for (std::uint64_t k = 0; k < n; ++k) next.emplace_back(r * n + k, c * n + k);
      } else {
        for (auto [r, c] : acc)
          for (auto [ur, uc] : units[choice[s]]) next.emplace_back(r * n + ur, c * n + uc);
      }
      acc = std::move(next);
    }
    for (auto [r, c] : acc) el.add_term(r, c, CycNumber::from_rational(spec.N, 1));
    out.elements.push_back(std::move(el));
    int pos = 0;
    while (pos < sites && ++choice[pos] == per_site) choice[pos++] = 0;
    if (pos == sites || depth == 0) break;
  }
  out.components = static_cast<long>(out.elements.size());
  out.identity_in_span = true;
  return out;
}

}  // namespace shifttower
