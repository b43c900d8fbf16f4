#include "shifttower/dense_oracle.hpp"

#include "shifttower/errors.hpp"
#include "shifttower/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace shifttower {

namespace {

using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

cd root(int k, int order) {
  const double t = 2.0 * std::numbers::pi * k / order;
  return {std::cos(t), std::sin(t)};
}

bool triangular(int d, int* index) {
  for (int l = 1; l * (l + 1) / 2 <= d; ++l)
    if (l * (l + 1) / 2 == d) {
      if (index) *index = l;
      return true;
    }
  return false;
}

std::string key(const std::string& name, int block) { return name + std::to_string(block); }

Mat kron_sites(const std::vector<Mat>& factors) {
  Mat acc = Mat::Identity(1, 1);
  for (const auto& f : factors) acc = Eigen::kroneckerProduct(acc, f).eval();
  return acc;
}

}  // namespace

DenseTower::DenseTower(const AlgebraSpec& spec, int truncation, long long cap) : spec_(spec), K_(truncation) {
  const int n = spec.n;
  dim_ = static_cast<long long>(checked_power(n, truncation, static_cast<std::uint64_t>(cap)));
  const Mat I = Mat::Identity(n, n);
  site_["I"] = I;

  Mat s = Mat::Zero(n, n), v = I, w = Mat::Zero(n, n);
  std::vector<int> ends;
  for (int i = 0, off = 0; i < spec.j; off += spec.block_size[i], ++i) ends.push_back(off + spec.block_size[i] - 1);
  for (int b = 0; b < spec.j; ++b) {
    s(ends[b], ends[b]) = 1;
    v(ends[b], ends[b]) = 0;
  }
  for (int b = 0; b < spec.j; ++b) v(ends[(b + 1) % spec.j], ends[b]) = 1;
  for (int i = 0, off = 0; i < spec.j; off += spec.block_size[i], ++i) {
    const int ai = spec.a[i], ap = spec.full() ? spec.a_prime[i] : 1;
    Mat p = Mat::Zero(n, n), q = Mat::Zero(n, n), pp = Mat::Zero(n, n), qp = Mat::Zero(n, n), e = Mat::Zero(n, n);
    for (int x = 0; x < ai; ++x)
      for (int y = 0; y < ap; ++y) {
        const int k = off + x * ap + y;
        e(k, k) = 1;
        p(k, k) = root(x, ai);
        q(off + ((x + 1) % ai) * ap + y, k) = 1;
        pp(k, k) = root(y, ap);
        qp(off + x * ap + (y + 1) % ap, k) = 1;
        w(k, k) = root(i, spec.j);
      }
    const Mat outside = I - e;
    site_[key("p", i)] = p;
    site_[key("q", i)] = q;
    site_[key("pt", i)] = p + outside;
    site_[key("qt", i)] = q + outside;
    site_[key("e", i)] = e;
    if (spec.full()) {
      site_[key("pp", i)] = pp;
      site_[key("qp", i)] = qp;
      site_[key("ppt", i)] = pp + outside;
      site_[key("qpt", i)] = qp + outside;
    }
  }
  site_["s"] = s;
  site_["v"] = v;
  site_["r"] = s * v * s;
  site_["w"] = w;

  auto word = [&](int level, const Mat& last, auto twist_at) {
    std::vector<Mat> f(K_, I);
    for (int t = 1; t < level; ++t) f[t - 1] = twist_at(level - t);
    f[level - 1] = last;
    return kron_sites(f);
  };
  auto none = [&](int) { return I; };
  for (int l = 1; l <= K_; ++l) {
    for (int i = 0; i < spec.j; ++i) {
      auto q_twist = [&, i](int d) -> Mat {
        int idx = 0;
        if (!triangular(d, &idx)) return I;
        if (idx % 3 == 1) return site_[key("qt", i)];
        if (idx % 3 == 2) return site_[key("pt", i)];
        return I;
      };
      auto qp_twist = [&, i](int d) -> Mat {
        int idx = 0;
        if (!triangular(d, &idx)) return I;
        if (idx % 3 == 1) return site_[key("qpt", i)];
        if (idx % 3 == 2) return site_[key("ppt", i)];
        return I;
      };
      table_[{GenKind::P, i, l}] = word(l, site_[key("p", i)], none);
      table_[{GenKind::E, i, l}] = word(l, site_[key("e", i)], none);
      if (spec.full()) {
        table_[{GenKind::Q, i, l}] = word(l, site_[key("q", i)], none);
        table_[{GenKind::PPrime, i, l}] = word(l, site_[key("pp", i)], none);
        table_[{GenKind::QPrime, i, l}] = word(l, site_[key("qp", i)], qp_twist);
      } else {
        table_[{GenKind::Q, i, l}] = word(l, site_[key("q", i)], q_twist);
      }
    }
    const Mat r = word(l, site_["r"], [&](int d) -> Mat { return triangular(d, nullptr) ? site_["w"] : I; });
    table_[{GenKind::R, 0, l}] = r;
    table_[{GenKind::S, 0, l}] = r * r.adjoint();
    table_[{GenKind::W, 0, l}] = word(l, site_["w"], none);
  }
}

const Eigen::MatrixXcd& DenseTower::get(const GeneratorId& id) const {
  GeneratorId k = id;
  if (k.kind == GenKind::R || k.kind == GenKind::S || k.kind == GenKind::W) k.block = 0;
  auto it = table_.find(k);
  if (it == table_.end()) throw ShapeError("dense tower: no generator " + id.to_string());
  return it->second;
}

Eigen::MatrixXcd DenseTower::evaluate(const GeneratorWord& w) const {
  Mat acc = Mat::Identity(dim_, dim_);
  for (const auto& [id, power] : w.letters) {
    const Mat g = power < 0 ? Mat(get(id).adjoint()) : get(id);
    for (int t = 0; t < std::abs(power); ++t) acc = acc * g;
  }
  return acc;
}

std::vector<GeneratorId> DenseTower::level_generators(int level) const {
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

// ---------------------------------------------------------------------------

DenseRelationReport dense_verify_relations(const TowerContext& ctx, long long cap) {
  const DenseTower dt(ctx.spec(), ctx.truncation(), cap);
  constexpr double tol = 1e-9;
  DenseRelationReport rep;
  std::map<std::string, std::size_t> pos;
  for (const auto& c : relation_cases(ctx)) {
    const Mat a = dt.evaluate(c.a), b = dt.evaluate(c.b);
    bool ok = false;
    switch (c.expect) {
      case Expectation::Equal: ok = (a - b).norm() < tol; break;
      case Expectation::BothZero: ok = (a * b).norm() < tol && (b * a).norm() < tol; break;
      case Expectation::Phase: {
        const Mat ab = a * b;
        ok = ab.norm() > tol && (ab - c.lambda.value() * (b * a)).norm() < tol;
        break;
      }
    }
    auto [it, inserted] = pos.try_emplace(c.family, rep.families.size());
    if (inserted) rep.families.push_back({c.family, 0, 0});
    ++rep.families[it->second].checked;
    ++rep.checked;
    if (!ok) {
      ++rep.families[it->second].failed;
      std::ostringstream os;
      os << c.family << ' ' << c.a.to_string() << " vs " << c.b.to_string();
      rep.failures.push_back(os.str());
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

OracleCommutant oracle_dense_commutant(const AlgebraSpec& spec, int truncation, int depth, int window,
                                       long long cap) {
  if (window < depth || window < 1 || window > truncation) throw SpecError("oracle: need depth <= window <= K");
  const DenseTower dt(spec, truncation, cap);
  const auto D = static_cast<Eigen::Index>(checked_power(spec.n, window, static_cast<std::uint64_t>(cap)));
  const Eigen::Index T = dt.dim() / D;
  // Writing G = Σ_{s,t} G^{(s,t)} ⊗ E_st with D×D slices G^{(s,t)}_{bc} = G[bT+s, cT+t],
  // [x ⊗ 1, G] = 0 iff x commutes with every slice, hence with their span.
  Mat slices = Mat::Zero(D * D, D * D);
  for (int l = depth + 1; l <= truncation; ++l)
    for (const auto& id : dt.level_generators(l)) {
      const Mat& G = dt.get(id);
      for (Eigen::Index st = 0; st < T * T; ++st) {
        const Eigen::Index s0 = st / T, t0 = st % T;
        Eigen::VectorXcd v(D * D);
        for (Eigen::Index b = 0; b < D; ++b)
          for (Eigen::Index c = 0; c < D; ++c) v(b * D + c) = G(b * T + s0, c * T + t0);
        if (v.squaredNorm() > 0) slices.noalias() += v * v.adjoint();
      }
    }
  Eigen::SelfAdjointEigenSolver<Mat> span(slices);
  const double top = std::max(1.0, span.eigenvalues().maxCoeff());
  Mat gram = Mat::Zero(D * D, D * D);
  const Mat I = Mat::Identity(D, D);
  for (Eigen::Index k = 0; k < span.eigenvalues().size(); ++k) {
    if (span.eigenvalues()(k) <= 1e-12 * top) continue;
    Mat B(D, D);
    for (Eigen::Index b = 0; b < D; ++b)
      for (Eigen::Index c = 0; c < D; ++c) B(b, c) = span.eigenvectors()(b * D + c, k);
    // Row-major vec: vec(xB) = (1 ⊗ Bᵀ) vec(x), vec(Bx) = (B ⊗ 1) vec(x). Slices of G*
    // are adjoints of slices of G, so B* covers the adjoint generators.
    for (const Mat& X : {B, Mat(B.adjoint())}) {
      const Mat L = Eigen::kroneckerProduct(I, X.transpose()).eval() - Eigen::kroneckerProduct(X, I).eval();
      gram.noalias() += L.adjoint() * L;
    }
  }
  OracleCommutant out;
  // Columns are indexed by the flat unit a·D + b (row-major vec of x).
  out.basis = gram_nullspace(gram, 1e-6);
  out.dimension = static_cast<long>(out.basis.cols());
  return out;
}

double projection_residual(const Eigen::MatrixXcd& float_basis, const CommutantBasis& exact) {
  if (exact.elements.empty()) return float_basis.cols() ? 1.0 : 0.0;
  const auto D = static_cast<Eigen::Index>(exact.elements.front().dim());
  Mat Q = Mat::Zero(D * D, static_cast<Eigen::Index>(exact.elements.size()));
  for (std::size_t c = 0; c < exact.elements.size(); ++c)
    for (const auto& [u, coeff] : exact.elements[c].terms())
      Q(static_cast<Eigen::Index>(u.first) * D + static_cast<Eigen::Index>(u.second), static_cast<Eigen::Index>(c)) =
          coeff.to_complex();
  // Orthonormalize (the exact elements are disjoint, but stay general).
  Eigen::HouseholderQR<Mat> qr(Q);
  const Mat Qo = qr.householderQ() * Mat::Identity(Q.rows(), Q.cols());
  double worst = 0;
  for (Eigen::Index c = 0; c < float_basis.cols(); ++c) {
    const Eigen::VectorXcd f = float_basis.col(c).normalized();
    worst = std::max(worst, (f - Qo * (Qo.adjoint() * f)).norm());
  }
  return worst;
}

AveragingReport dense_averaging_check(const AlgebraSpec& spec) {
  AveragingReport rep;
  if (!spec.full()) return rep;
  rep.applicable = true;
  const DenseTower dt(spec, 1, static_cast<long long>(spec.n));
  const auto& site = dt.site();
  const int n = spec.n;
  // U P' = D P' U with D the block-phase unitary; U, P', D generate the group.
  Mat U = Mat::Zero(n, n), P = Mat::Zero(n, n), D = Mat::Zero(n, n);
  int order = 1;
  for (int i = 0; i < spec.j; ++i) {
    U += site.at(key("qp", i));
    P += site.at(key("pp", i));
    D += std::polar(1.0, 2 * std::numbers::pi / spec.a_prime[i]) * site.at(key("e", i));
    order = std::lcm(order, spec.a_prime[i]);
  }
  rep.group_order = order;

  // Orthogonal projection of M_n onto A, as an n²×n² matrix on vec(x).
  std::vector<Eigen::VectorXcd> span;
  for (int i = 0; i < spec.j; ++i)
    for (int x = 0; x < spec.a[i]; ++x)
      for (int y = 0; y < spec.a[i]; ++y) {
        Mat m = site.at(key("e", i));
        for (int t = 0; t < x; ++t) m = m * site.at(key("p", i));
        for (int t = 0; t < y; ++t) m = m * site.at(key("q", i));
        span.emplace_back(Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()));
      }
  Mat S(n * n, static_cast<Eigen::Index>(span.size()));
  for (std::size_t c = 0; c < span.size(); ++c) S.col(static_cast<Eigen::Index>(c)) = span[c];
  Eigen::HouseholderQR<Mat> qr(S);
  const Mat Q = qr.householderQ() * Mat::Identity(S.rows(), S.cols());
  const Mat proj = Q * Q.adjoint();

  // Mean of Ad(U^a P'^b D^c) over a, b < terms and c < phases.
  auto average = [&](int terms, int phases) {
    Mat E = Mat::Zero(n * n, n * n);
    Mat Ua = Mat::Identity(n, n);
    for (int a = 0; a < terms; ++a, Ua = Ua * U) {
      Mat Pb = Mat::Identity(n, n);
      for (int b = 0; b < terms; ++b, Pb = Pb * P) {
        Mat Dc = Mat::Identity(n, n);
        for (int c = 0; c < phases; ++c, Dc = Dc * D) {
          const Mat g = Ua * Pb * Dc;
          // vec(g x g*) = (conj(g) ⊗ g) vec(x) in column-major vec.
          E += Eigen::kroneckerProduct(g.conjugate(), g).eval();
        }
      }
    }
    return Mat(E / (static_cast<double>(terms) * terms * phases));
  };
  rep.true_order_error = (average(order, order) - proj).norm();
  rep.literal_error = (average(n, 1) - proj).norm();
  rep.true_order_pass = rep.true_order_error < 1e-9;
  rep.literal_pass = rep.literal_error < 1e-9;
  return rep;
}

}  // namespace shifttower
