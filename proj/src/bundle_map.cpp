#include "syz/bundle_map.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "syz/exterior.hpp"

namespace syz {

BundleMap::BundleMap(SplitBundle source, SplitBundle target)
    : source_(std::move(source)), target_(std::move(target)), columns_(source_.rank()) {}

BundleMap::BundleMap(SplitBundle source, SplitBundle target, const std::vector<std::vector<HomPoly>>& entries)
    : BundleMap(std::move(source), std::move(target)) {
  if (entries.size() != rows()) throw std::invalid_argument("BundleMap: row count does not match target rank");
  for (std::size_t i = 0; i < rows(); ++i) {
    if (entries[i].size() != cols()) throw std::invalid_argument("BundleMap: column count does not match source rank");
    for (std::size_t j = 0; j < cols(); ++j) set(i, j, entries[i][j]);
  }
}

void BundleMap::set(std::size_t i, std::size_t j, const HomPoly& p) {
  if (i >= rows() || j >= cols()) throw std::out_of_range("BundleMap::set: index out of range");
  Column& col = columns_[j];
  auto it = std::lower_bound(col.begin(), col.end(), i, [](const auto& e, std::size_t r) { return e.first < r; });
  const bool present = it != col.end() && it->first == i;
  if (p.is_zero()) {
    if (present) col.erase(it);
    return;
  }
  const int expected = target_[i] - source_[j];
  if (p.degree() != expected)
    throw std::invalid_argument("BundleMap: entry (" + std::to_string(i) + "," + std::to_string(j) + ") has degree " +
                                std::to_string(p.degree()) + ", expected " + std::to_string(expected));
  if (present) it->second = p;
  else col.insert(it, {i, p});
}

HomPoly BundleMap::entry(std::size_t i, std::size_t j) const {
  for (const auto& [r, p] : columns_.at(j))
    if (r == i) return p;
  return HomPoly(target_[i] - source_[j]);
}

bool BundleMap::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
}

int BundleMap::max_entry_degree() const {
  int m = 0;
  for (const auto& col : columns_)
    for (const auto& [r, p] : col) m = std::max(m, p.degree());
  return m;
}

std::size_t BundleMap::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

Mat BundleMap::evaluate(const ProjPoint& p) const {
  Mat m(rows(), cols());
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, f] : columns_[j]) m(i, j) = f.evaluate(p);
  return m;
}

std::size_t BundleMap::rank_at(const ProjPoint& p) const { return rank_kernel(evaluate(p)).rank; }

std::size_t BundleMap::generic_rank() const {
  const std::size_t full = std::min(rows(), cols());
  if (full == 0 || is_zero()) return 0;
  // A nonzero minor has degree at most full * max_entry_degree, so it cannot
  // vanish at all of that many + 1 distinct points.
  const long samples = static_cast<long>(full) * max_entry_degree() + 1;
  std::size_t best = rank_at(ProjPoint(1, 0));
  for (long k = 0; k < samples && best < full; ++k) best = std::max(best, rank_at(ProjPoint(k, 1)));
  return best;
}

LaurentVec BundleMap::apply(const LaurentVec& v) const {
  if (v.components() != cols()) throw std::invalid_argument("BundleMap::apply: vector has wrong component count");
  LaurentVec out(rows());
  for (const auto& [k, c] : v.terms())
    for (const auto& [i, f] : columns_[k.component])
      for (int l = 0; l <= f.degree(); ++l)
        if (!syz::is_zero(f.coeff(l))) out.add(i, k.s_exp + l, k.t_exp + f.degree() - l, c * f.coeff(l));
  return out;
}

BundleMap BundleMap::twist(int k) const {
  BundleMap out(source_.twist(k), target_.twist(k));
  out.columns_ = columns_;
  return out;
}

BundleMap compose(const BundleMap& g, const BundleMap& f) {
  if (!(g.source_ == f.target_)) throw std::invalid_argument("compose: target of f is not the source of g");
  BundleMap out(f.source_, g.target_);
  for (std::size_t k = 0; k < f.cols(); ++k) {
    std::map<std::size_t, HomPoly> acc;
    for (const auto& [j, fjk] : f.columns_[k])
      for (const auto& [i, gij] : g.columns_[j]) {
        HomPoly prod = gij * fjk;
        auto [it, inserted] = acc.try_emplace(i, prod);
        if (!inserted) it->second += prod;
      }
    for (const auto& [i, p] : acc) out.set(i, k, p);
  }
  return out;
}

bool operator==(const BundleMap& a, const BundleMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.columns_ == b.columns_;
}

// ---------------------------------------------------------------------------

namespace {

Scalar numeric_det(std::vector<std::vector<Scalar>> a) {
  const std::size_t n = a.size();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(a[r][c])) continue;
      const Scalar f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// The form of degree D through the values at (k : 1), k = 0..D, via Newton
// divided differences.
HomPoly interpolate(int D, std::vector<Scalar> values) {
  const std::size_t n = static_cast<std::size_t>(D + 1);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) values[k] = (values[k] - values[k - 1]) / Scalar(static_cast<long>(level));
  // p(s) = sum_k values[k] * prod_{j<k} (s - j), expanded by Horner.
  std::vector<Scalar> poly{values[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<Scalar> next(poly.size() + 1);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * Scalar(static_cast<long>(k));
    }
    next[0] += values[k];
    poly = std::move(next);
  }
  poly.resize(n);
  return HomPoly(D, poly);
}

}  // namespace

HomPoly determinant(const std::vector<std::vector<HomPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return HomPoly::constant(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // Entries have degree r_i - c_j, so every term of the expansion has the
  // degree of the diagonal product.
  int D = 0;
  for (std::size_t i = 0; i < n; ++i) D += m[i][i].degree();
  if (D < 0) return HomPoly(D);
  std::vector<Scalar> values;
  for (int k = 0; k <= D; ++k) {
    const ProjPoint pt(k, 1);
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].evaluate(pt);
    values.push_back(numeric_det(std::move(a)));
  }
  return interpolate(D, std::move(values));
}

namespace {

// det(P m Q) for r x rows P and cols x r Q is, by Cauchy-Binet, a combination
// of the r x r minors of m, so it is divisible by their gcd. P and Q carry
// powers of a linear form that make every product homogeneous of one degree.
HomPoly compressed_minor(const BundleMap& m, std::size_t r, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> val(-5, 5);
  const SplitBundle& S = m.source();
  const SplitBundle& T = m.target();
  const int tmax = *std::max_element(T.degrees().begin(), T.degrees().end());
  const int smin = *std::min_element(S.degrees().begin(), S.degrees().end());
  const HomPoly ell(1, {Scalar(val(rng)), Scalar(1 + static_cast<int>(seed % 7))});
  auto power = [&](int e) {
    HomPoly out = HomPoly::constant(1);
    for (int k = 0; k < e; ++k) out = out * ell;
    return out;
  };
  std::vector<HomPoly> row_pad, col_pad;
  for (std::size_t i = 0; i < m.rows(); ++i) row_pad.push_back(power(tmax - T[i]));
  for (std::size_t j = 0; j < m.cols(); ++j) col_pad.push_back(power(S[j] - smin));
  std::vector<std::vector<Scalar>> P(r, std::vector<Scalar>(m.rows())), Q(m.cols(), std::vector<Scalar>(r));
  for (auto& row : P)
    for (auto& x : row) x = val(rng);
  for (auto& row : Q)
    for (auto& x : row) x = val(rng);

  std::vector<std::vector<HomPoly>> c(r, std::vector<HomPoly>(r, HomPoly(tmax - smin)));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& [i, f] : m.column(j)) {
      const HomPoly padded = row_pad[i] * f * col_pad[j];
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          const Scalar w = P[a][i] * Q[j][b];
          if (!is_zero(w)) c[a][b] += padded * w;
        }
    }
  return determinant(c);
}

}  // namespace

std::optional<bool> minors_coprime(const BundleMap& m, std::size_t r, std::size_t budget) {
  if (r == 0) return true;
  if (r > std::min(m.rows(), m.cols())) return false;
  for (unsigned attempt = 0; attempt < 2; ++attempt) {
    const HomPoly d1 = compressed_minor(m, r, 2 * attempt + 1);
    const HomPoly d2 = compressed_minor(m, r, 2 * attempt + 2);
    if (!d1.is_zero() && !d2.is_zero() && gcd({d1, d2}).degree() == 0) return true;
  }
  const long count = binom(static_cast<long>(m.rows()), static_cast<long>(r)) *
                     binom(static_cast<long>(m.cols()), static_cast<long>(r));
  if (count < 0 || static_cast<std::size_t>(count) > budget) return std::nullopt;

  std::optional<HomPoly> acc;
  const auto row_sets = subsets(m.rows(), r);
  const auto col_sets = subsets(m.cols(), r);
  for (const auto& R : row_sets)
    for (const auto& C : col_sets) {
      std::vector<std::vector<HomPoly>> sub(r);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) sub[a].push_back(m.entry(R[a], C[b]));
      HomPoly det = determinant(sub);
      if (det.is_zero()) continue;
      acc = acc ? gcd({*acc, det}) : gcd({det});
      if (acc->degree() == 0) return true;
    }
  return false;
}

std::optional<LocalFreeness> check_constant_rank(const BundleMap& m, std::size_t budget) {
  const std::size_t r = m.generic_rank();
  const auto ok = minors_coprime(m, r, budget);
  if (!ok) return std::nullopt;
  return LocalFreeness{*ok, r};
}

// ---------------------------------------------------------------------------

namespace {

Mat coh_matrix(const BundleMap& f, CohDegree which) {
  const CohSpace src(f.source(), which);
  const CohSpace tgt(f.target(), which);
  Mat M(tgt.dim(), src.dim());
  for (std::size_t col = 0; col < src.dim(); ++col) {
    const CohMonomial& mono = src.basis()[col];
    for (const auto& [i, p] : f.column(mono.component))
      for (int l = 0; l <= p.degree(); ++l) {
        if (is_zero(p.coeff(l))) continue;
        const long row = tgt.index_of(i, mono.s_exp + l, mono.t_exp + p.degree() - l);
        if (row >= 0) M(static_cast<std::size_t>(row), col) += p.coeff(l);
      }
  }
  return M;
}

using MonoKey = std::pair<std::size_t, int>;  // (component, s exponent); t exponent fixed by the degree

// Matrix of a bundle map restricted to a finite set of source monomials; the
// target monomials that occur are indexed on the fly.
struct WindowedMap {
  std::vector<MonoKey> source;
  std::map<MonoKey, std::size_t> target_index;
  Mat matrix;
};

WindowedMap windowed(const BundleMap& m, std::vector<MonoKey> source) {
  WindowedMap w;
  w.source = std::move(source);
  std::vector<std::vector<std::pair<MonoKey, Scalar>>> images(w.source.size());
  for (std::size_t c = 0; c < w.source.size(); ++c) {
    const auto [j, u] = w.source[c];
    for (const auto& [i, p] : m.column(j))
      for (int l = 0; l <= p.degree(); ++l)
        if (!is_zero(p.coeff(l))) {
          const MonoKey key{i, u + l};
          w.target_index.try_emplace(key, 0);
          images[c].emplace_back(key, p.coeff(l));
        }
  }
  std::size_t next = 0;
  for (auto& [key, idx] : w.target_index) idx = next++;
  w.matrix = Mat(next, w.source.size());
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [key, x] : images[c]) w.matrix(w.target_index.at(key), c) += x;
  return w;
}

// Solves map(x) = rhs over the windowed source for every rhs at once; an
// entry is nullopt when that rhs has no solution there.
std::vector<std::optional<LaurentVec>> windowed_solve(const WindowedMap& w, const std::vector<LaurentVec>& rhs,
                                                      const SplitBundle& source_bundle) {
  std::vector<std::optional<LaurentVec>> out(rhs.size());
  std::vector<Vec> bs;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    Vec b(w.matrix.rows());
    bool fits = true;
    for (const auto& [key, c] : rhs[k].terms()) {
      auto it = w.target_index.find({key.component, key.s_exp});
      if (it == w.target_index.end()) {
        fits = false;
        break;
      }
      b[it->second] = c;
    }
    if (!fits) continue;
    bs.push_back(std::move(b));
    owner.push_back(k);
  }
  if (bs.empty()) return out;
  const auto xs = solve(w.matrix, bs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!xs[k]) continue;
    LaurentVec v(source_bundle.rank());
    for (std::size_t c = 0; c < w.source.size(); ++c) {
      const auto [j, u] = w.source[c];
      v.add(j, u, source_bundle[j] - u, (*xs[k])[c]);
    }
    out[owner[k]] = std::move(v);
  }
  return out;
}

std::vector<MonoKey> monomials(const SplitBundle& b, int s_lo_offset, int s_hi_offset, bool chart0, int window) {
  // chart0: s >= 0, t >= -window.  chart1: t >= 0, s >= -window.
  // s_lo_offset/s_hi_offset widen both ends (used for the overlap).
  std::vector<MonoKey> out;
  for (std::size_t j = 0; j < b.rank(); ++j) {
    int lo = chart0 ? 0 : -window;
    int hi = chart0 ? b[j] + window : b[j];
    lo -= s_lo_offset;
    hi += s_hi_offset;
    for (int u = lo; u <= hi; ++u) out.emplace_back(j, u);
  }
  return out;
}

}  // namespace

CohMaps induced_coh_maps(const BundleMap& f) { return {coh_matrix(f, CohDegree::H0), coh_matrix(f, CohDegree::H1)}; }

SES evaluation_sequence(const SplitBundle& F) {
  for (int a : F.degrees())
    if (a < 0) throw std::invalid_argument("evaluation_sequence: bundle is not globally generated (negative degree)");
  const CohSpace H0F(F, CohDegree::H0);
  const CohSpace H0K(F.twist(-1), CohDegree::H0);
  const SplitBundle middle = SplitBundle::trivial(H0F.dim());
  const SplitBundle kernel = SplitBundle::uniform(H0K.dim(), -1);

  BundleMap g(middle, F);
  for (std::size_t k = 0; k < H0F.dim(); ++k) {
    const CohMonomial& m = H0F.basis()[k];
    g.set(m.component, k, HomPoly::monomial(m.s_exp, m.t_exp));
  }
  BundleMap f(kernel, middle);
  for (std::size_t k = 0; k < H0K.dim(); ++k) {
    const CohMonomial& m = H0K.basis()[k];
    const long times_s = H0F.index_of(m.component, m.s_exp + 1, m.t_exp);
    const long times_t = H0F.index_of(m.component, m.s_exp, m.t_exp + 1);
    f.set(static_cast<std::size_t>(times_s), k, HomPoly::monomial(0, 1));
    f.set(static_cast<std::size_t>(times_t), k, HomPoly::monomial(1, 0, -1));
  }
  return {std::move(f), std::move(g)};
}

void validate_exact(const SES& ses) {
  if (!(ses.f.target() == ses.g.source())) throw std::invalid_argument("SES: middle terms do not match");
  if (!compose(ses.g, ses.f).is_zero()) throw std::invalid_argument("SES: g o f is not zero");
  if (ses.B().rank() != ses.A().rank() + ses.Q().rank())
    throw std::invalid_argument("SES: ranks are not additive");
  if (ses.B().degree() != ses.A().degree() + ses.Q().degree())
    throw std::invalid_argument("SES: degrees are not additive");
  const auto lf = check_constant_rank(ses.f);
  const auto lg = check_constant_rank(ses.g);
  if (!lf || !lg) throw std::invalid_argument("SES: too many minors to certify exactness");
  if (ses.A().rank() > 0 && (!lf->constant_rank || lf->generic_rank != ses.A().rank()))
    throw std::invalid_argument("SES: f is not injective on every fiber");
  if (ses.Q().rank() > 0 && (!lg->constant_rank || lg->generic_rank != ses.Q().rank()))
    throw std::invalid_argument("SES: g is not surjective on every fiber");
}

Mat connecting_hom(const SES& ses) {
  validate_exact(ses);
  const CohSpace H0Q(ses.Q(), CohDegree::H0);
  const CohSpace H1A(ses.A(), CohDegree::H1);
  Mat delta(H1A.dim(), H0Q.dim());
  if (H0Q.dim() == 0 || H1A.dim() == 0) return delta;

  const int base = std::max({ses.A().max_abs_degree(), ses.B().max_abs_degree(), ses.Q().max_abs_degree()}) + 2;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const int W = base + 4 * attempt;
    const WindowedMap g0 = windowed(ses.g, monomials(ses.B(), 0, 0, true, W));
    const WindowedMap g1 = windowed(ses.g, monomials(ses.B(), 0, 0, false, W));
    const int widen = ses.f.max_entry_degree() + ses.B().max_abs_degree();
    const WindowedMap f01 = windowed(ses.f, monomials(ses.A(), W + widen, W + widen, false, W));
    std::vector<LaurentVec> qs;
    for (const CohMonomial& q : H0Q.basis()) {
      LaurentVec qv(ses.Q().rank());
      qv.add(q.component, q.s_exp, q.t_exp, 1);
      qs.push_back(std::move(qv));
    }
    const auto b0 = windowed_solve(g0, qs, ses.B());
    const auto b1 = windowed_solve(g1, qs, ses.B());
    bool ok = std::all_of(b0.begin(), b0.end(), [](const auto& v) { return v.has_value(); }) &&
              std::all_of(b1.begin(), b1.end(), [](const auto& v) { return v.has_value(); });
    if (ok) {
      std::vector<LaurentVec> diffs;
      for (std::size_t col = 0; col < qs.size(); ++col) diffs.push_back(*b0[col] - *b1[col]);
      const auto alpha = windowed_solve(f01, diffs, ses.A());
      for (std::size_t col = 0; col < alpha.size() && ok; ++col) {
        if (!alpha[col]) {
          ok = false;
          break;
        }
        for (const auto& [k, c] : alpha[col]->terms()) {
          const long row = H1A.index_of(k.component, k.s_exp, k.t_exp);
          if (row >= 0) delta(static_cast<std::size_t>(row), col) = c;
        }
      }
    }
    if (ok) return delta;
    delta = Mat(H1A.dim(), H0Q.dim());
  }
  throw std::runtime_error("connecting_hom: no Cech lift found within the exponent window");
}

SixTermReport six_term_sequence(const SES& ses) {
  SixTermReport r;
  const CohMaps mf = induced_coh_maps(ses.f);
  const CohMaps mg = induced_coh_maps(ses.g);
  r.f0 = mf.H0;
  r.g0 = mg.H0;
  r.f1 = mf.H1;
  r.g1 = mg.H1;
  r.delta = connecting_hom(ses);

  auto zero = [](const Mat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_zero(m(i, j))) return false;
    return true;
  };
  r.compositions_zero = zero(r.g0 * r.f0) && zero(r.delta * r.g0) && zero(r.f1 * r.delta) && zero(r.g1 * r.f1);

  const std::size_t h0A = r.f0.cols(), h0B = r.g0.cols(), h0Q = r.delta.cols();
  const std::size_t h1A = r.f1.cols(), h1B = r.g1.cols(), h1Q = r.g1.rows();
  const std::size_t rf0 = rank_kernel(r.f0).rank, rg0 = rank_kernel(r.g0).rank, rd = rank_kernel(r.delta).rank;
  const std::size_t rf1 = rank_kernel(r.f1).rank, rg1 = rank_kernel(r.g1).rank;

  r.exact = true;
  auto require = [&](bool cond, const char* where) {
    if (!cond && r.exact) {
      r.exact = false;
      r.failure = where;
    }
  };
  require(r.compositions_zero, "a composition is nonzero");
  require(rf0 == h0A, "at H0(A)");
  require(rf0 + rg0 == h0B, "at H0(B)");
  require(rg0 + rd == h0Q, "at H0(Q)");
  require(rd + rf1 == h1A, "at H1(A)");
  require(rf1 + rg1 == h1B, "at H1(B)");
  require(rg1 == h1Q, "at H1(Q)");
  return r;
}

}  // namespace syz
