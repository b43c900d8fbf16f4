#include "shifttower/monomial.hpp"

#include "shifttower/errors.hpp"

#include <sstream>

namespace shifttower {

namespace {

int mod_pos(long long x, int n) {
  long long r = x % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::uint64_t checked_power(int base, int exponent, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int k = 0; k < exponent; ++k) {
    v *= static_cast<std::uint64_t>(base);
    if (v > cap) {
      std::ostringstream os;
      os << base << "^" << exponent << " exceeds cap " << cap;
      throw CapExceeded(os.str());
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// SiteMonomial

SiteMonomial::SiteMonomial(int order, std::vector<int> cols, std::vector<int> phases)
    : order_(order), cols_(std::move(cols)), phases_(std::move(phases)) {
  if (cols_.size() != phases_.size()) throw ShapeError("site monomial: cols/phases length mismatch");
  std::vector<char> used(cols_.size(), 0);
  for (size_t r = 0; r < cols_.size(); ++r) {
    if (cols_[r] < 0) {
      cols_[r] = -1;
      phases_[r] = 0;
      continue;
    }
    if (cols_[r] >= static_cast<int>(cols_.size())) throw ShapeError("site monomial: column out of range");
    if (used[cols_[r]]) throw ShapeError("site monomial: repeated column");
    used[cols_[r]] = 1;
    phases_[r] = mod_pos(phases_[r], order_);
  }
}

SiteMonomial SiteMonomial::identity(int size, int order) {
  std::vector<int> cols(size);
  for (int r = 0; r < size; ++r) cols[r] = r;
  return SiteMonomial(order, std::move(cols), std::vector<int>(size, 0));
}

SiteMonomial SiteMonomial::zero(int size, int order) {
  return SiteMonomial(order, std::vector<int>(size, -1), std::vector<int>(size, 0));
}

SiteMonomial SiteMonomial::diagonal(int order, const std::vector<int>& phases) {
  std::vector<int> cols(phases.size());
  for (size_t r = 0; r < phases.size(); ++r) cols[r] = static_cast<int>(r);
  return SiteMonomial(order, std::move(cols), phases);
}

SiteMonomial SiteMonomial::from_permutation(int order, const std::vector<int>& perm) {
  // Column k carries a 1 in row perm[k].
  std::vector<int> cols(perm.size(), -1);
  for (size_t k = 0; k < perm.size(); ++k)
    if (perm[k] >= 0) cols[perm[k]] = static_cast<int>(k);
  return SiteMonomial(order, std::move(cols), std::vector<int>(perm.size(), 0));
}

bool SiteMonomial::is_identity() const {
  for (int r = 0; r < size(); ++r)
    if (cols_[r] != r || phases_[r] != 0) return false;
  return true;
}

bool SiteMonomial::is_zero() const { return defined_rows() == 0; }

int SiteMonomial::defined_rows() const {
  int c = 0;
  for (int v : cols_) c += v >= 0;
  return c;
}

SiteMonomial SiteMonomial::adjoint() const {
  std::vector<int> cols(cols_.size(), -1), phases(cols_.size(), 0);
  for (int r = 0; r < size(); ++r) {
    if (cols_[r] < 0) continue;
    cols[cols_[r]] = r;
    phases[cols_[r]] = -phases_[r];
  }
  return SiteMonomial(order_, std::move(cols), std::move(phases));
}

SiteMonomial SiteMonomial::pow(int k) const {
  if (k < 0) return adjoint().pow(-k);
  SiteMonomial acc = identity(size(), order_);
  for (int t = 0; t < k; ++t) acc = acc * *this;
  return acc;
}

CycNumber SiteMonomial::trace() const {
  CycNumber t(order_);
  for (int r = 0; r < size(); ++r)
    if (cols_[r] == r) t += CycNumber::from_root(RootOfUnity(order_, phases_[r]));
  return t;
}

Eigen::MatrixXcd SiteMonomial::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
  for (int r = 0; r < size(); ++r)
    if (cols_[r] >= 0) m(r, cols_[r]) = RootOfUnity(order_, phases_[r]).value();
  return m;
}

std::string SiteMonomial::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < size(); ++r) {
    if (r) os << ' ';
    if (cols_[r] < 0) {
      os << '.';
    } else {
      os << cols_[r];
      if (phases_[r]) os << '^' << phases_[r];
    }
  }
  os << ']';
  return os.str();
}

SiteMonomial operator*(const SiteMonomial& a, const SiteMonomial& b) {
  if (a.size() != b.size() || a.order_ != b.order_) throw ShapeError("site_mul: shape mismatch");
  const int n = a.size();
  std::vector<int> cols(n, -1), phases(n, 0);
  for (int r = 0; r < n; ++r) {
    const int mid = a.cols_[r];
    if (mid < 0 || b.cols_[mid] < 0) continue;
    cols[r] = b.cols_[mid];
    phases[r] = a.phases_[r] + b.phases_[mid];
  }
  return SiteMonomial(a.order_, std::move(cols), std::move(phases));
}

// ---------------------------------------------------------------------------
// FactoredWord

FactoredWord FactoredWord::identity(int site_dim, int num_sites, int order) {
  FactoredWord w;
  w.site_dim_ = site_dim;
  w.num_sites_ = num_sites;
  w.order_ = order;
  w.phase_ = RootOfUnity::one(order);
  return w;
}

FactoredWord FactoredWord::zero(int site_dim, int num_sites, int order) {
  FactoredWord w = identity(site_dim, num_sites, order);
  w.scale_ = 0;
  return w;
}

FactoredWord FactoredWord::from_sites(int site_dim, int num_sites, int order,
                                      std::map<int, SiteMonomial> sites) {
  FactoredWord w = identity(site_dim, num_sites, order);
  for (const auto& [k, m] : sites) {
    if (k < 1 || k > num_sites) throw ShapeError("factored word: site index out of range");
    if (m.size() != site_dim || m.order() != order) throw ShapeError("factored word: site shape mismatch");
  }
  w.sites_ = std::move(sites);
  w.canonicalize();
  return w;
}

FactoredWord FactoredWord::single_site(int num_sites, int site, const SiteMonomial& m) {
  return from_sites(m.size(), num_sites, m.order(), {{site, m}});
}

void FactoredWord::canonicalize() {
  if (scale_ == 0) {
    sites_.clear();
    phase_ = RootOfUnity::one(order_);
    return;
  }
  for (auto it = sites_.begin(); it != sites_.end();) {
    SiteMonomial& m = it->second;
    int first = -1;
    for (int r = 0; r < m.size(); ++r)
      if (m.defined(r)) {
        first = r;
        break;
      }
    if (first < 0) {
      scale_ = 0;
      sites_.clear();
      phase_ = RootOfUnity::one(order_);
      return;
    }
    const int shift = m.phase(first);
    if (shift != 0) {
      std::vector<int> cols(m.size()), phases(m.size());
      for (int r = 0; r < m.size(); ++r) {
        cols[r] = m.col(r);
        phases[r] = m.defined(r) ? m.phase(r) - shift : 0;
      }
      m = SiteMonomial(order_, std::move(cols), std::move(phases));
      phase_ = phase_ * RootOfUnity(order_, shift);
    }
    if (m.is_identity()) {
      it = sites_.erase(it);
    } else {
      ++it;
    }
  }
}

void FactoredWord::check_shape(const FactoredWord& o) const {
  if (site_dim_ != o.site_dim_ || num_sites_ != o.num_sites_ || order_ != o.order_)
    throw ShapeError("factored word: shape mismatch");
}

CycNumber FactoredWord::coefficient() const {
  if (is_zero()) return CycNumber(order_);
  return CycNumber::from_root(phase_, scale_);
}

SiteMonomial FactoredWord::site(int index) const {
  if (is_zero()) return SiteMonomial::zero(site_dim_, order_);
  auto it = sites_.find(index);
  return it == sites_.end() ? SiteMonomial::identity(site_dim_, order_) : it->second;
}

int FactoredWord::support_end() const { return sites_.empty() ? 0 : sites_.rbegin()->first; }

FactoredWord FactoredWord::adjoint() const {
  FactoredWord w = *this;
  w.phase_ = phase_.inverse();
  for (auto& [k, m] : w.sites_) m = m.adjoint();
  w.canonicalize();
  return w;
}

FactoredWord FactoredWord::pow(int k) const {
  if (k < 0) return adjoint().pow(-k);
  FactoredWord acc = identity(site_dim_, num_sites_, order_);
  for (int t = 0; t < k; ++t) acc = acc * *this;
  return acc;
}

FactoredWord FactoredWord::scaled(RootOfUnity z) const {
  FactoredWord w = *this;
  if (!w.is_zero()) w.phase_ = w.phase_ * z;
  return w;
}

FactoredWord FactoredWord::scaled(const Rational& q) const {
  FactoredWord w = *this;
  w.scale_ *= q;
  w.canonicalize();
  return w;
}

FactoredWord FactoredWord::with_num_sites(int num_sites) const {
  if (support_end() > num_sites) throw ShapeError("factored word: support exceeds site count");
  FactoredWord w = *this;
  w.num_sites_ = num_sites;
  return w;
}

FactoredWord FactoredWord::restrict_sites(int first, int last) const {
  if (first < 1 || last > num_sites_ || first > last) throw ShapeError("factored word: bad site range");
  std::map<int, SiteMonomial> part;
  for (const auto& [k, m] : sites_)
    if (k >= first && k <= last) part.emplace(k - first + 1, m);
  FactoredWord w = from_sites(site_dim_, last - first + 1, order_, std::move(part));
  if (is_zero()) w.scale_ = 0, w.sites_.clear();
  return w;
}

CycNumber FactoredWord::normalized_trace() const {
  if (is_zero()) return CycNumber(order_);
  CycNumber acc = coefficient();
  const Rational inv_n(1, site_dim_);
  for (const auto& [k, m] : sites_) {
    acc = acc * (m.trace() * inv_n);
    if (acc.formally_zero()) break;
  }
  return acc;
}

Eigen::MatrixXcd FactoredWord::to_dense(long long max_total_dim) const {
  const auto dim = static_cast<Eigen::Index>(
      checked_power(site_dim_, num_sites_, static_cast<std::uint64_t>(max_total_dim)));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  if (is_zero()) return out;
  std::vector<SiteMonomial> factors;
  factors.reserve(num_sites_);
  for (int k = 1; k <= num_sites_; ++k) factors.push_back(site(k));
  const std::complex<double> c = static_cast<double>(scale_) * phase_.value();
  for (Eigen::Index row = 0; row < dim; ++row) {
    // Decode the row multi-index, site 1 most significant.
    Eigen::Index rem = row, col = 0, stride = dim;
    int phase = 0;
    bool alive = true;
    for (int k = 0; k < num_sites_; ++k) {
      stride /= site_dim_;
      const int digit = static_cast<int>(rem / stride);
      rem %= stride;
      if (!factors[k].defined(digit)) {
        alive = false;
        break;
      }
      col += factors[k].col(digit) * stride;
      phase += factors[k].phase(digit);
    }
    if (alive) out(row, col) = c * RootOfUnity(order_, phase).value();
  }
  return out;
}

std::string FactoredWord::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  if (scale_ != 1) os << shifttower::to_string(scale_) << '*';
  if (!phase_.is_one()) os << "z" << order_ << '^' << phase_.exponent() << '*';
  if (sites_.empty()) return os.str() + "1";
  bool first = true;
  for (const auto& [k, m] : sites_) {
    if (!first) os << " (x) ";
    first = false;
    os << '@' << k << m.to_string();
  }
  return os.str();
}

FactoredWord operator*(const FactoredWord& a, const FactoredWord& b) {
  a.check_shape(b);
  if (a.is_zero() || b.is_zero()) return FactoredWord::zero(a.site_dim_, a.num_sites_, a.order_);
  FactoredWord w = FactoredWord::identity(a.site_dim_, a.num_sites_, a.order_);
  w.scale_ = a.scale_ * b.scale_;
  w.phase_ = a.phase_ * b.phase_;
  w.sites_ = a.sites_;
  for (const auto& [k, m] : b.sites_) {
    auto it = w.sites_.find(k);
    if (it == w.sites_.end()) {
      w.sites_.emplace(k, m);
    } else {
      it->second = it->second * m;
      if (it->second.is_zero()) return FactoredWord::zero(a.site_dim_, a.num_sites_, a.order_);
    }
  }
  w.canonicalize();
  return w;
}

bool operator==(const FactoredWord& a, const FactoredWord& b) {
  return a.site_dim_ == b.site_dim_ && a.num_sites_ == b.num_sites_ && a.order_ == b.order_ &&
         a.scale_ == b.scale_ && a.phase_ == b.phase_ && a.sites_ == b.sites_;
}

// ---------------------------------------------------------------------------

std::string CommuteResult::to_string() const {
  switch (kind) {
    case CommuteKind::BothZero: return "both-zero";
    case CommuteKind::NotProportional: return "not-proportional";
    case CommuteKind::Proportional: {
      std::ostringstream os;
      os << "phase z" << lambda.order() << '^' << lambda.exponent();
      return os.str();
    }
  }
  return "?";
}

CommuteResult commute_phase(const FactoredWord& a, const FactoredWord& b) {
  const FactoredWord ab = a * b;
  const FactoredWord ba = b * a;
  CommuteResult res;
  if (ab.is_zero() && ba.is_zero()) {
    res.kind = CommuteKind::BothZero;
    return res;
  }
  if (ab.is_zero() || ba.is_zero() || !ab.same_shape(ba) || ab.scale() != ba.scale()) {
    res.kind = CommuteKind::NotProportional;
    return res;
  }
  res.kind = CommuteKind::Proportional;
  res.lambda = ab.phase() * ba.phase().inverse();
  return res;
}

// ---------------------------------------------------------------------------
// SparseElement

SparseElement::SparseElement(int site_dim, int window, int order)
    : site_dim_(site_dim), window_(window), order_(order) {
  dim_ = checked_power(site_dim, window, std::uint64_t{1} << 31);
}

SparseElement SparseElement::identity(int site_dim, int window, int order) {
  SparseElement e(site_dim, window, order);
  for (std::uint64_t k = 0; k < e.dim_; ++k) e.add_term(k, k, CycNumber::from_rational(order, 1));
  return e;
}

SparseElement SparseElement::from_word(const FactoredWord& w) {
  SparseElement e(w.site_dim(), w.num_sites(), w.order());
  if (w.is_zero()) return e;
  const int n = w.site_dim();
  std::vector<SiteMonomial> factors;
  for (int k = 1; k <= w.num_sites(); ++k) factors.push_back(w.site(k));
  const CycNumber c = w.coefficient();
  for (std::uint64_t row = 0; row < e.dim_; ++row) {
    std::uint64_t rem = row, col = 0, stride = e.dim_;
    int phase = 0;
    bool alive = true;
    for (int k = 0; k < w.num_sites(); ++k) {
      stride /= static_cast<std::uint64_t>(n);
      const int digit = static_cast<int>(rem / stride);
      rem %= stride;
      if (!factors[k].defined(digit)) {
        alive = false;
        break;
      }
      col += static_cast<std::uint64_t>(factors[k].col(digit)) * stride;
      phase += factors[k].phase(digit);
    }
    if (alive) e.add_term(row, col, c * RootOfUnity(w.order(), phase));
  }
  return e;
}

void SparseElement::check_shape(const SparseElement& o) const {
  if (site_dim_ != o.site_dim_ || window_ != o.window_ || order_ != o.order_)
    throw ShapeError("sparse element: shape mismatch");
}

bool SparseElement::is_zero() const {
  for (const auto& [idx, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

void SparseElement::add_term(std::uint64_t row, std::uint64_t col, const CycNumber& c) {
  if (c.formally_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Index{row, col}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.formally_zero()) terms_.erase(it);
  }
}

CycNumber SparseElement::coefficient(std::uint64_t row, std::uint64_t col) const {
  auto it = terms_.find(Index{row, col});
  return it == terms_.end() ? CycNumber(order_) : it->second;
}

SparseElement SparseElement::adjoint() const {
  SparseElement e(site_dim_, window_, order_);
  for (const auto& [idx, c] : terms_) e.terms_.emplace(Index{idx.second, idx.first}, c.conj());
  return e;
}

CycNumber SparseElement::normalized_trace() const {
  CycNumber t(order_);
  for (const auto& [idx, c] : terms_)
    if (idx.first == idx.second) t += c;
  return t * Rational(1, static_cast<long long>(dim_));
}

Eigen::MatrixXcd SparseElement::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& [idx, c] : terms_)
    m(static_cast<Eigen::Index>(idx.first), static_cast<Eigen::Index>(idx.second)) = c.to_complex();
  return m;
}

SparseElement operator+(const SparseElement& a, const SparseElement& b) {
  a.check_shape(b);
  SparseElement e = a;
  for (const auto& [idx, c] : b.terms_) e.add_term(idx.first, idx.second, c);
  return e;
}

SparseElement operator-(const SparseElement& a, const SparseElement& b) {
  a.check_shape(b);
  SparseElement e = a;
  for (const auto& [idx, c] : b.terms_) e.add_term(idx.first, idx.second, -c);
  return e;
}

SparseElement operator*(const SparseElement& a, const SparseElement& b) {
  a.check_shape(b);
  // Group b's terms by row for the contraction.
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, const CycNumber*>>> rows;
  for (const auto& [idx, c] : b.terms_) rows[idx.first].emplace_back(idx.second, &c);
  SparseElement e(a.site_dim_, a.window_, a.order_);
  for (const auto& [idx, ca] : a.terms_) {
    auto it = rows.find(idx.second);
    if (it == rows.end()) continue;
    for (const auto& [col, cb] : it->second) e.add_term(idx.first, col, ca * *cb);
  }
  return e;
}

SparseElement operator*(const SparseElement& a, const CycNumber& c) {
  SparseElement e(a.site_dim_, a.window_, a.order_);
  for (const auto& [idx, v] : a.terms_) e.add_term(idx.first, idx.second, v * c);
  return e;
}

bool operator==(const SparseElement& a, const SparseElement& b) {
  if (a.site_dim_ != b.site_dim_ || a.window_ != b.window_ || a.order_ != b.order_) return false;
  return (a - b).is_zero();
}

}  // namespace shifttower
