#include "syz/cokernel.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>

#include "syz/exterior.hpp"

namespace syz {

int CokernelPresentation::default_window() const { return std::max(A().max_abs_degree(), B().max_abs_degree()) + 2; }

CokernelPresentation CokernelPresentation::twist(int k) const {
  CokernelPresentation out = *this;
  out.map = map.twist(k);
  out.window.reset();
  return out;
}

CechSection section_mul(const CechSection& s, const HomPoly& form) { return {s.rep0 * form, s.rep1 * form}; }

// ---------------------------------------------------------------------------
// Local freeness

namespace {

void verify_certificate(const CokernelPresentation& p) {
  const WedgeCertificate& c = *p.certificate;
  const std::size_t N = c.ambient;
  const std::size_t i = c.degree;
  if (i < 2 || i > N) throw std::invalid_argument("wedge certificate: exterior degree out of range");
  const auto pairs = subsets(N, 2);
  if (c.minors.size() != pairs.size()) throw std::invalid_argument("wedge certificate: wrong number of minors");
  if (p.A().rank() != static_cast<std::size_t>(binom(N, i - 2)) ||
      p.B().rank() != static_cast<std::size_t>(binom(N, i)))
    throw std::invalid_argument("wedge certificate: bundle ranks do not match the exterior powers");

  // m ^ m = 0: the Pluecker relations.
  for (const auto& q : subsets(N, 4)) {
    auto m = [&](std::size_t a, std::size_t b) -> const HomPoly& { return c.minors[subset_rank({q[a], q[b]}, N)]; };
    HomPoly rel = m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
    if (!rel.is_zero()) throw std::invalid_argument("wedge certificate: minor vector is not decomposable");
  }
  bool any = false;
  for (const auto& f : c.minors) any = any || !f.is_zero();
  if (!any || gcd(c.minors).degree() != 0)
    throw std::invalid_argument("wedge certificate: minor vector vanishes somewhere on P^1");

  // The map must be exactly e_J -> e_J ^ m.
  const auto sources = subsets(N, i - 2);
  for (std::size_t j = 0; j < sources.size(); ++j) {
    BundleMap::Column expected;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (c.minors[k].is_zero()) continue;
      const auto w = wedge_indices(sources[j], pairs[k]);
      if (!w) continue;
      expected.emplace_back(subset_rank(w->second, N), w->first > 0 ? c.minors[k] : -c.minors[k]);
    }
    std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (expected != p.map.column(j)) throw std::invalid_argument("wedge certificate: map is not wedging with m");
  }
}

}  // namespace

std::size_t validate_locally_free(const CokernelPresentation& p) {
  if (p.certificate) {
    verify_certificate(p);
    return static_cast<std::size_t>(binom(p.certificate->ambient - 2, p.certificate->degree - 2));
  }
  const auto lf = check_constant_rank(p.map);
  if (!lf) throw std::invalid_argument("cokernel_sections: too many minors to certify local freeness");
  if (!lf->constant_rank) throw std::invalid_argument("cokernel_sections: rank of the presentation drops at some point");
  return lf->generic_rank;
}

// ---------------------------------------------------------------------------
// CechModel

struct CechModel::OverlapCache {
  struct Block {
    std::map<std::pair<std::size_t, int>, std::size_t> index;
    EchelonBasis echelon;
  };
  std::mutex mu;
  std::map<int, Block> blocks;
};

namespace {

CechSection restrict_to(const CechSection& s, const std::function<bool(std::size_t, int)>& keep) {
  CechSection out{LaurentVec(s.rep0.components()), LaurentVec(s.rep1.components())};
  for (const auto& [k, c] : s.rep0.terms())
    if (keep(k.component, k.s_exp)) out.rep0.add(k.component, k.s_exp, k.t_exp, c);
  for (const auto& [k, c] : s.rep1.terms())
    if (keep(k.component, k.s_exp)) out.rep1.add(k.component, k.s_exp, k.t_exp, c);
  return out;
}

LaurentVec monomial_vec(const SplitBundle& b, std::size_t comp, int s_exp, const Scalar& c = 1) {
  LaurentVec v(b.rank());
  v.add(comp, s_exp, b[comp] - s_exp, c);
  return v;
}

}  // namespace

CechModel::CechModel(CokernelPresentation p) : pres_(std::move(p)), overlap_(std::make_shared<OverlapCache>()) {
  build();
}

int CechModel::weight_of(std::size_t component, int s_exp) const {
  return pres_.graded() ? s_exp + pres_.target_weights[component] : 0;
}

int CechModel::source_weight_of(std::size_t component, int s_exp) const {
  return pres_.graded() ? s_exp + pres_.source_weights[component] : 0;
}

CechModel::Block& CechModel::block(int weight) { return blocks_[weight]; }

const CechModel::Block* CechModel::find_block(int weight) const {
  auto it = blocks_.find(weight);
  return it == blocks_.end() ? nullptr : &it->second;
}

std::map<int, SparseVec> CechModel::split_by_block(const CechSection& s, bool create) {
  std::map<int, SparseVec> out;
  auto visit = [&](int chart, const LaurentVec& rep) {
    for (const auto& [k, c] : rep.terms()) {
      const int w = weight_of(k.component, k.s_exp);
      Block& b = block(w);
      const CellKey key{chart, k.component, k.s_exp};
      auto it = b.index.find(key);
      if (it == b.index.end()) {
        if (!create) throw std::logic_error("CechModel: unindexed cell");
        it = b.index.emplace(key, b.index.size()).first;
      }
      out[w].emplace_back(it->second, c);
    }
  };
  visit(0, s.rep0);
  visit(1, s.rep1);
  return out;
}

std::optional<SparseVec> CechModel::block_vector(const Block& b, int weight, const CechSection& s) const {
  SparseVec v;
  auto visit = [&](int chart, const LaurentVec& rep) {
    for (const auto& [k, c] : rep.terms()) {
      if (weight_of(k.component, k.s_exp) != weight) continue;
      auto it = b.index.find(CellKey{chart, k.component, k.s_exp});
      if (it == b.index.end()) return false;
      v.emplace_back(it->second, c);
    }
    return true;
  };
  if (!visit(0, s.rep0) || !visit(1, s.rep1)) return std::nullopt;
  return v;
}

void CechModel::insert_pair(const CechSection& s, bool tagged) {
  for (auto& [w, v] : split_by_block(s, true)) {
    Block& b = blocks_.at(w);
    const bool independent = b.echelon.insert(v, tagged);
    if (tagged && independent) {
      const int weight = w;
      b.basis.push_back(restrict_to(s, [&](std::size_t c, int u) { return weight_of(c, u) == weight; }));
    }
  }
}

namespace {

// A relation inside the window may come from a source element far outside it
// whose excess cancels against the kernel bundle K. Such cancellations use
// kernel sections whose components have degree a_j - c for the summands O(c)
// of K, so the window is widened by max_j a_j - min c. The splitting of K is
// read off h0(K(m)) = dim ker H0(phi(m)): the first difference counts the
// summands with c >= -m.
int kernel_reach(const BundleMap& phi, std::size_t kernel_rank) {
  const SplitBundle& A = phi.source();
  const int amax = *std::max_element(A.degrees().begin(), A.degrees().end());
  auto h0K = [&](int m) {
    const Mat H0 = induced_coh_maps(phi.twist(m)).H0;
    return H0.cols() - rank_kernel(H0).rank;
  };
  std::size_t prev = h0K(-amax - 1);
  for (int m = -amax;; ++m) {
    const std::size_t cur = h0K(m);
    if (cur - prev == kernel_rank) return std::max(0, amax + m);
    prev = cur;
  }
}

}  // namespace

void CechModel::build() {
  map_rank_ = validate_locally_free(pres_);
  const BundleMap& phi = pres_.map;
  const SplitBundle& A = pres_.A();
  const SplitBundle& B = pres_.B();

  if (pres_.graded()) {
    if (pres_.source_weights.size() != A.rank() || pres_.target_weights.size() != B.rank())
      throw std::invalid_argument("CokernelPresentation: weight vectors do not match the bundle ranks");
    for (std::size_t j = 0; j < A.rank(); ++j)
      for (const auto& [i, f] : phi.column(j)) {
        int nonzero = 0, l = 0;
        for (int k = 0; k <= f.degree(); ++k)
          if (!is_zero(f.coeff(k))) ++nonzero, l = k;
        if (nonzero != 1 || l + pres_.target_weights[i] != pres_.source_weights[j])
          throw std::invalid_argument("CokernelPresentation: map does not respect the weights");
      }
  }

  const std::size_t rB = B.rank();
  std::vector<CechSection> generators;

  // Generators: constants.
  for (std::size_t c = 0; c < rB; ++c)
    for (int k = 0; k <= B[c]; ++k) {
      const LaurentVec m = monomial_vec(B, c, k);
      generators.push_back({m, m});
    }

  // Generators: H^1(A) classes whose image is regular on one chart or the other.
  const CohSpace H1A(A, CohDegree::H1);
  std::map<int, std::vector<CohMonomial>> by_weight;
  for (const auto& m : H1A.basis()) by_weight[source_weight_of(m.component, m.s_exp)].push_back(m);
  for (const auto& [w, monos] : by_weight) {
    std::vector<LaurentVec> images;
    std::map<std::pair<std::size_t, int>, std::size_t> bad_rows;
    for (const auto& m : monos) {
      images.push_back(phi.apply(monomial_vec(A, m.component, m.s_exp)));
      for (const auto& [k, c] : images.back().terms())
        if (k.s_exp < 0 && k.t_exp < 0) bad_rows.try_emplace({k.component, k.s_exp}, bad_rows.size());
    }
    std::vector<Vec> combos;
    if (bad_rows.empty()) {
      for (std::size_t k = 0; k < monos.size(); ++k) {
        Vec e(monos.size());
        e[k] = 1;
        combos.push_back(std::move(e));
      }
    } else {
      Mat M(bad_rows.size(), monos.size());
      for (std::size_t k = 0; k < images.size(); ++k)
        for (const auto& [key, c] : images[k].terms())
          if (key.s_exp < 0 && key.t_exp < 0) M(bad_rows.at({key.component, key.s_exp}), k) += c;
      combos = rank_kernel(M).kernel.basis();
    }
    for (const auto& x : combos) {
      LaurentVec v(rB);
      for (std::size_t k = 0; k < x.size(); ++k)
        if (!is_zero(x[k])) v += images[k] * x[k];
      CechSection gen{LaurentVec(rB), LaurentVec(rB)};
      for (const auto& [k, c] : v.terms()) {
        if (k.s_exp >= 0) gen.rep0.add(k.component, k.s_exp, k.t_exp, c);
        else gen.rep1.add(k.component, k.s_exp, k.t_exp, -c);
      }
      generators.push_back(std::move(gen));
    }
  }

  // Relations: image of A over each chart. With weights, the part of A(U_i)
  // of a fixed weight is spanned by one monomial per summand, so every
  // relation of every weight that carries a generator is included and no
  // window is involved. Without weights the relations are cut off at the
  // exponent window.
  const LaurentVec zero(rB);
  if (pres_.graded()) {
    std::set<int> ws;
    for (const auto& gen : generators)
      for (const auto* rep : {&gen.rep0, &gen.rep1})
        for (const auto& [k, c] : rep->terms()) ws.insert(weight_of(k.component, k.s_exp));
    for (int w : ws)
      for (std::size_t j = 0; j < A.rank(); ++j) {
        const int u = w - pres_.source_weights[j];
        const LaurentVec img = phi.apply(monomial_vec(A, j, u));
        if (u >= 0) insert_pair({img, zero}, false);
        if (u <= A[j]) insert_pair({zero, img}, false);
      }
  } else {
    window_ = pres_.cech_window();
    if (map_rank_ < A.rank()) window_ += kernel_reach(phi, A.rank() - map_rank_);
    const int W = window_;
    for (std::size_t j = 0; j < A.rank(); ++j) {
      for (int u = 0; u <= A[j] + W; ++u) insert_pair({phi.apply(monomial_vec(A, j, u)), zero}, false);
      for (int u = -W; u <= A[j]; ++u) insert_pair({zero, phi.apply(monomial_vec(A, j, u))}, false);
    }
  }

  for (const auto& gen : generators) insert_pair(gen, true);

  std::size_t offset = 0;
  for (auto& [w, b] : blocks_) {
    b.offset = offset;
    offset += b.basis.size();
  }
  dim_ = offset;
}

std::vector<CechSection> CechModel::basis() const {
  std::vector<CechSection> out;
  out.reserve(dim_);
  for (const auto& [w, b] : blocks_) out.insert(out.end(), b.basis.begin(), b.basis.end());
  return out;
}

std::vector<int> CechModel::basis_weights() const {
  std::vector<int> out;
  for (const auto& [w, b] : blocks_) out.insert(out.end(), b.basis.size(), w);
  return out;
}

std::vector<int> CechModel::weights() const {
  std::vector<int> out;
  for (const auto& [w, b] : blocks_)
    if (!b.basis.empty()) out.push_back(w);
  return out;
}

std::size_t CechModel::block_dim(int weight) const {
  const Block* b = find_block(weight);
  return b ? b->basis.size() : 0;
}

std::size_t CechModel::block_offset(int weight) const {
  const Block* b = find_block(weight);
  if (!b) throw std::out_of_range("CechModel: no block of this weight");
  return b->offset;
}

const std::vector<CechSection>& CechModel::block_basis(int weight) const {
  const Block* b = find_block(weight);
  if (!b) throw std::out_of_range("CechModel: no block of this weight");
  return b->basis;
}

bool CechModel::in_relations(int weight, const CechSection& s) const {
  // Only reached for weights without generators; relations of such a weight
  // are assembled on demand, exactly as in build().
  if (!pres_.graded()) return false;
  const SplitBundle& A = pres_.A();
  const LaurentVec zero(pres_.B().rank());
  std::map<CellKey, std::size_t> index;
  EchelonBasis ech;
  auto to_sparse_vec = [&](const CechSection& pair, bool create, SparseVec& out) {
    for (int chart : {0, 1})
      for (const auto& [k, c] : (chart == 0 ? pair.rep0 : pair.rep1).terms()) {
        if (weight_of(k.component, k.s_exp) != weight) continue;
        const CellKey key{chart, k.component, k.s_exp};
        auto it = index.find(key);
        if (it == index.end()) {
          if (!create) return false;
          it = index.emplace(key, index.size()).first;
        }
        out.emplace_back(it->second, c);
      }
    return true;
  };
  for (std::size_t j = 0; j < A.rank(); ++j) {
    const int u = weight - pres_.source_weights[j];
    const LaurentVec img = pres_.map.apply(monomial_vec(A, j, u));
    SparseVec v;
    if (u >= 0) {
      to_sparse_vec({img, zero}, true, v);
      ech.insert(v);
      v.clear();
    }
    if (u <= A[j]) {
      to_sparse_vec({zero, img}, true, v);
      ech.insert(v);
    }
  }
  SparseVec v;
  if (!to_sparse_vec(s, false, v)) return false;
  return ech.contains(v);
}

Vec CechModel::reduce_in_block(const Block& b, const SparseVec& v) const {
  EchelonBasis::Reduction red = b.echelon.reduce(v);
  if (!red.residual.empty())
    throw std::domain_error("CechModel: not a section, or its representatives leave the exponent window");
  return std::move(red.tagged_coords);
}

Vec CechModel::block_coordinates(int weight, const CechSection& s) const {
  const Block* b = find_block(weight);
  const std::size_t n = b ? b->basis.size() : 0;
  if (s.rep0.is_zero() && s.rep1.is_zero()) return Vec(n);
  if (!b) {
    if (!in_relations(weight, s)) throw std::domain_error("CechModel: not a section of this weight");
    return Vec();
  }
  const auto v = block_vector(*b, weight, s);
  if (!v) throw std::domain_error("CechModel: representative outside the exponent window");
  return reduce_in_block(*b, *v);
}

Vec CechModel::coordinates(const CechSection& s) const {
  if (s.rep0.components() != pres_.B().rank() || s.rep1.components() != pres_.B().rank())
    throw std::invalid_argument("CechModel: section has the wrong number of components");
  std::vector<int> ws;
  for (const auto* rep : {&s.rep0, &s.rep1})
    for (const auto& [k, c] : rep->terms()) ws.push_back(weight_of(k.component, k.s_exp));
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

  Vec out(dim_);
  for (int w : ws) {
    const Block* b = find_block(w);
    if (!b) {
      if (!in_relations(w, s)) throw std::domain_error("CechModel: not a section, or outside the exponent window");
      continue;
    }
    const auto v = block_vector(*b, w, s);
    if (!v) throw std::domain_error("CechModel: representative outside the exponent window");
    const Vec c = reduce_in_block(*b, *v);
    std::copy(c.begin(), c.end(), out.begin() + static_cast<long>(b->offset));
  }
  return out;
}

CechSection CechModel::section(const Vec& coords) const {
  if (coords.size() != dim_) throw std::invalid_argument("CechModel::section: coordinate length mismatch");
  const std::size_t rB = pres_.B().rank();
  CechSection out{LaurentVec(rB), LaurentVec(rB)};
  std::size_t k = 0;
  for (const auto& [w, b] : blocks_)
    for (const auto& s : b.basis) {
      if (!is_zero(coords[k])) out = out + s * coords[k];
      ++k;
    }
  return out;
}

bool CechModel::satisfies_overlap(const CechSection& s) const {
  for (const auto& [k, c] : s.rep0.terms())
    if (k.s_exp < 0) return false;
  for (const auto& [k, c] : s.rep1.terms())
    if (k.t_exp < 0) return false;

  const LaurentVec diff = s.rep0 - s.rep1;
  std::map<int, std::vector<std::pair<std::pair<std::size_t, int>, Scalar>>> parts;
  for (const auto& [k, c] : diff.terms()) parts[weight_of(k.component, k.s_exp)].push_back({{k.component, k.s_exp}, c});

  const SplitBundle& A = pres_.A();
  std::lock_guard<std::mutex> lock(overlap_->mu);
  for (const auto& [w, terms] : parts) {
    auto [bit, fresh] = overlap_->blocks.try_emplace(w);
    OverlapCache::Block& b = bit->second;
    if (fresh) {
      // Image of A over the overlap in this weight: one monomial per summand
      // with weights, a window of monomials without.
      auto add = [&](std::size_t j, int u) {
        SparseVec v;
        const LaurentVec img = pres_.map.apply(monomial_vec(A, j, u));
        for (const auto& [key, c] : img.terms())
          if (weight_of(key.component, key.s_exp) == w)
            v.emplace_back(b.index.try_emplace({key.component, key.s_exp}, b.index.size()).first->second, c);
        b.echelon.insert(v);
      };
      if (pres_.graded()) {
        for (std::size_t j = 0; j < A.rank(); ++j) add(j, w - pres_.source_weights[j]);
      } else {
        const int reach = 2 * window_ + pres_.map.max_entry_degree();
        for (std::size_t j = 0; j < A.rank(); ++j)
          for (int u = -reach; u <= A[j] + reach; ++u) add(j, u);
      }
    }
    SparseVec v;
    for (const auto& [key, c] : terms) {
      auto it = b.index.find(key);
      if (it == b.index.end()) return false;
      v.emplace_back(it->second, c);
    }
    if (!b.echelon.contains(v)) return false;
  }
  return true;
}

Vec CechModel::evaluate(const CechSection& s, const ProjPoint& p) const { return section_eval(s, pres_, p); }

// ---------------------------------------------------------------------------

std::vector<CechSection> cokernel_sections(const CokernelPresentation& p) { return CechModel(p).basis(); }

Vec section_eval(const CechSection& s, const CokernelPresentation& p, const ProjPoint& point) {
  const LaurentVec& rep = is_zero(point.t) ? s.rep1 : s.rep0;
  const std::size_t rB = p.B().rank();
  Vec value(rB);
  for (std::size_t c = 0; c < rB; ++c) value[c] = rep.evaluate(c, point);

  const Mat phi = p.map.evaluate(point);
  Subspace image(rB);
  for (std::size_t j = 0; j < phi.cols(); ++j) image.add(phi.column(j));
  const Vec reduced = image.reduce(value);
  const auto piv = image.pivots();
  Vec out;
  out.reserve(rB - piv.size());
  std::size_t next = 0;
  for (std::size_t c = 0; c < rB; ++c) {
    if (next < piv.size() && piv[next] == c) {
      ++next;
      continue;
    }
    out.push_back(reduced[c]);
  }
  return out;
}

}  // namespace syz
