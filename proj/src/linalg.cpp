#include "syz/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace syz {

Mat::Mat(std::size_t rows, std::size_t cols, std::initializer_list<long> values) : Mat(rows, cols) {
  if (values.size() != rows * cols) throw std::invalid_argument("Mat: initializer size mismatch");
  std::size_t k = 0;
  for (long v : values) data_[k++] = v;
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Mat::from_rows: row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vec Mat::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
  Mat p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("Mat: shape mismatch in matrix-vector product");
  Vec out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!is_zero(a(i, k)) && !is_zero(v[k])) out[i] += a(i, k) * v[k];
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return is_zero(x); });
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) s.emplace_back(i, v[i]);
  return s;
}

Vec to_dense(const SparseVec& v, std::size_t n) {
  Vec d(n);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

// ---------------------------------------------------------------------------
// EchelonBasis

EchelonBasis::Reduction EchelonBasis::reduce(const SparseVec& v) const {
  std::map<std::size_t, Scalar> work;
  for (const auto& [i, x] : v)
    if (!is_zero(x)) work[i] += x;
  for (auto it = work.begin(); it != work.end();) {
    if (is_zero(it->second)) it = work.erase(it);
    else ++it;
  }

  Reduction out;
  out.tagged_coords.assign(tagged_count_, Scalar(0));
  auto it = work.begin();
  while (it != work.end()) {
    const std::size_t col = it->first;
    const auto row_it = rows_.find(col);
    if (row_it == rows_.end()) {
      ++it;
      continue;
    }
    const Scalar c = it->second;
    for (const auto& [j, x] : row_it->second) {
      auto [w, inserted] = work.try_emplace(j, 0);
      w->second -= c * x;
      if (is_zero(w->second)) work.erase(w);
    }
    const RowInfo& info = info_.at(col);
    if (info.tagged)
      for (std::size_t k = 0; k < info.origin.size(); ++k)
        if (!is_zero(info.origin[k])) out.tagged_coords[k] += c * info.origin[k];
    it = work.upper_bound(col);
  }
  out.residual.assign(work.begin(), work.end());
  return out;
}

bool EchelonBasis::insert(const SparseVec& v, bool tagged) {
  if (!tagged && tagged_count_ > 0)
    throw std::logic_error("EchelonBasis: relations must be inserted before tagged generators");
  Reduction red = reduce(v);
  if (red.residual.empty()) return false;
  const Scalar lead = red.residual.front().second;
  const std::size_t pivot = red.residual.front().first;
  for (auto& [j, x] : red.residual) x /= lead;

  RowInfo info;
  info.tagged = tagged;
  if (tagged) {
    info.origin = std::move(red.tagged_coords);
    for (auto& x : info.origin) x = -x;
    info.origin.push_back(1);
    for (auto& x : info.origin) x /= lead;
    ++tagged_count_;
  }
  rows_.emplace(pivot, std::move(red.residual));
  info_.emplace(pivot, std::move(info));
  return true;
}

bool EchelonBasis::insert_dense(const Vec& v, bool tagged) { return insert(to_sparse(v), tagged); }

// ---------------------------------------------------------------------------
// Subspace

void Subspace::check(const Vec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace: dimension mismatch");
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& rows) {
  Subspace s(ambient);
  for (const auto& r : rows) s.add(r);
  return s;
}

Subspace Subspace::sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw std::invalid_argument("Subspace::sum: dimension mismatch");
  Subspace s = a;
  for (const auto& v : b.basis()) s.add(v);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  check(v);
  return echelon_.contains(to_sparse(v));
}

bool Subspace::add(const Vec& v) {
  check(v);
  return echelon_.insert(to_sparse(v));
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  out.reserve(dim());
  for (const auto& [p, row] : echelon_.rows()) out.push_back(to_dense(row, ambient_));
  return out;
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  for (const auto& [p, row] : echelon_.rows()) out.push_back(p);
  return out;
}

Vec Subspace::reduce(const Vec& v) const {
  check(v);
  return to_dense(echelon_.reduce(to_sparse(v)).residual, ambient_);
}

std::size_t intersection_dim(const Subspace& a, const Subspace& b) {
  return a.dim() + b.dim() - Subspace::sum(a, b).dim();
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {

struct IntEchelon {
  std::vector<std::vector<mpz_class>> rows;  // row echelon form, leading rows only
  std::vector<std::size_t> pivots;
};

std::vector<std::vector<mpz_class>> integer_rows(const Mat& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class den = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).get_num() * (den / m(r, c).get_den());
  }
  return a;
}

// Bareiss: after processing k pivots every remaining entry is a k+1 minor of
// the input, so the division by the previous pivot is exact.
// Pivots are sought only in the first `pivot_cols` columns; with
// `keep_residual` the rows left without a pivot are appended after the
// echelon rows.
IntEchelon bareiss(std::vector<std::vector<mpz_class>> a, std::size_t cols,
                   std::size_t pivot_cols = SIZE_MAX, bool keep_residual = false) {
  const std::size_t m = a.size();
  IntEchelon out;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < std::min(cols, pivot_cols) && r < m; ++col) {
    std::size_t p = r;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    const mpz_class& piv = a[r][col];
    for (std::size_t i = r + 1; i < m; ++i) {
      const mpz_class lead = a[i][col];
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = piv * a[i][j] - lead * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][col] = 0;
    }
    prev = piv;
    out.pivots.push_back(col);
    ++r;
  }
  if (!keep_residual) a.resize(r);
  out.rows = std::move(a);
  return out;
}

// Solution of the echelon system with prescribed values on the free columns.
Vec back_substitute(const IntEchelon& e, std::size_t cols, Vec x) {
  for (std::size_t k = e.pivots.size(); k-- > 0;) {
    const std::size_t p = e.pivots[k];
    Scalar acc(0);
    for (std::size_t j = p + 1; j < cols; ++j)
      if (e.rows[k][j] != 0 && !is_zero(x[j])) acc += Scalar(e.rows[k][j]) * x[j];
    x[p] = -acc / Scalar(e.rows[k][p]);
  }
  return x;
}

}  // namespace

RankKernel rank_kernel(const Mat& m) {
  const IntEchelon e = bareiss(integer_rows(m), m.cols());
  RankKernel out{e.pivots.size(), Subspace(m.cols())};
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec x(m.cols());
    x[f] = 1;
    out.kernel.add(back_substitute(e, m.cols(), std::move(x)));
  }
  return out;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  Mat aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const IntEchelon e = bareiss(integer_rows(aug), aug.cols());
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  // Treat the augmented column as "free" with value -1 so that the solved
  // pivot variables satisfy M x - b = 0.
  Vec x(aug.cols());
  x[m.cols()] = -1;
  x = back_substitute(e, aug.cols(), std::move(x));
  x.pop_back();
  return x;
}

std::vector<std::optional<Vec>> solve(const Mat& m, const std::vector<Vec>& bs) {
  const std::size_t n = m.cols(), k = bs.size();
  Mat aug(m.rows(), n + k);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
  for (std::size_t j = 0; j < k; ++j) {
    if (bs[j].size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
    for (std::size_t r = 0; r < m.rows(); ++r) aug(r, n + j) = bs[j][r];
  }
  const IntEchelon e = bareiss(integer_rows(aug), aug.cols(), n, true);
  const std::size_t rank = e.pivots.size();
  std::vector<std::optional<Vec>> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    bool consistent = true;
    for (std::size_t r = rank; r < e.rows.size() && consistent; ++r) consistent = e.rows[r][n + j] == 0;
    if (!consistent) continue;
    Vec x(aug.cols());
    x[n + j] = -1;
    x = back_substitute(e, aug.cols(), std::move(x));
    x.resize(n);
    out[j] = std::move(x);
  }
  return out;
}

}  // namespace syz
