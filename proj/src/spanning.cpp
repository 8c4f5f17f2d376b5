#include "syz/spanning.hpp"

#include <stdexcept>
#include <string>

namespace syz {

namespace {

CechSection constant_section(const std::vector<Scalar>& values) {
  const LaurentVec v = LaurentVec::constant(values);
  return {v, v};
}

std::string point_str(const ProjPoint& a) { return "(" + to_string(a.s) + ":" + to_string(a.t) + ")"; }

struct I2Result {
  SpanningCertificate cert;
  Subspace span;
};

I2Result spanning_i2_impl(const SpanningContext& ctx, const std::vector<ProjPoint>& points, bool escalate) {
  const CurveParams& p = ctx.params();
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a].same_point(points[b]))
        throw std::invalid_argument("spanning: sample point " + point_str(points[a]) + " is repeated");

  I2Result out{SpanningCertificate{}, ctx.global_image()};
  SpanningCertificate& cert = out.cert;
  cert.params = p;
  cert.i = 2;
  cert.target = static_cast<std::size_t>(dim_L_prime(p, 2));
  const QuotientSpace q = d2_quotient(ctx);

  auto use = [&](const ProjPoint& a) {
    const Pencil pen = pencil(ctx, a);
    out.span.add(pen.s_tau);
    out.span.add(pen.t_tau);
    cert.points.push_back(a);
    cert.quotient_coords.push_back(rnc_point(ctx, q, pen));
  };
  for (const auto& a : points) use(a);

  if (escalate) {
    int extra = 0;
    for (long k = p.r() - 3; out.span.dim() < cert.target && extra < 2 * p.r(); ++k) {
      const ProjPoint a(k, 1);
      bool seen = false;
      for (const auto& b : cert.points) seen = seen || b.same_point(a);
      if (seen) continue;
      use(a);
      ++extra;
    }
  }
  cert.rank = out.span.dim();
  cert.verdict = cert.rank == cert.target;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SpanningContext::SpanningContext(const CurveParams& p)
    : params_(p), l2_(build_L_prime(p, 2)), l2_twisted_(build_L_prime(p, 2).twist(-1)), global_image_(l2_.dimension()) {
  const std::size_t pairs = static_cast<std::size_t>(binom(p.N(), 2));
  for (std::size_t k = 0; k < pairs; ++k) {
    std::vector<Scalar> e(pairs);
    e[k] = 1;
    global_image_.add(l2_.coordinates(constant_section(e)));
  }
}

Mat SpanningContext::division_matrix(const HomPoly& delta) const {
  const auto basis = l2_twisted_.basis();
  Mat D(l2_.dimension(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Vec c = l2_.coordinates(section_mul(basis[k], delta));
    for (std::size_t r = 0; r < c.size(); ++r) D(r, k) = c[r];
  }
  return D;
}

const CechModel& SpanningContext::model(int i) const {
  if (i == 2) return l2_;
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = models_[i];
  if (!slot) slot = std::make_unique<CechModel>(build_L_prime(params_, i));
  return *slot;
}

CechSection sigma_section(const CurveParams& p, const ProjPoint& a) {
  std::vector<Scalar> values;
  for (const auto& m : minor_vector(p)) values.push_back(m.evaluate(a));
  return constant_section(values);
}

Pencil pencil(const SpanningContext& ctx, const ProjPoint& a) {
  Pencil pen{a, sigma_section(ctx.params(), a), CechSection{LaurentVec(), LaurentVec()}, {}, {}, {}, Subspace(ctx.l2().dimension())};
  pen.sigma_coords = ctx.l2().coordinates(pen.sigma);
  const auto x = solve(ctx.division_matrix(HomPoly::vanishing_at(a)), pen.sigma_coords);
  if (!x) throw std::runtime_error("pencil: sigma is not divisible by the linear form vanishing at " + point_str(a));
  pen.tau = ctx.l2_twisted().section(*x);
  pen.s_tau = ctx.l2().coordinates(section_mul(pen.tau, HomPoly::monomial(1, 0)));
  pen.t_tau = ctx.l2().coordinates(section_mul(pen.tau, HomPoly::monomial(0, 1)));
  pen.subspace.add(pen.s_tau);
  pen.subspace.add(pen.t_tau);
  return pen;
}

Vec QuotientSpace::project(const Vec& v) const {
  const Vec r = kernel.reduce(v);
  Vec out;
  out.reserve(complement.size());
  for (auto c : complement) out.push_back(r[c]);
  return out;
}

QuotientSpace d2_quotient(const SpanningContext& ctx) {
  QuotientSpace q{ctx.l2().dimension(), ctx.global_image(), {}};
  const auto piv = q.kernel.pivots();
  std::size_t next = 0;
  for (std::size_t c = 0; c < q.ambient; ++c) {
    if (next < piv.size() && piv[next] == c) ++next;
    else q.complement.push_back(c);
  }
  return q;
}

Vec rnc_point(const SpanningContext&, const QuotientSpace& q, const Pencil& pen) {
  Vec v = q.project(pen.t_tau);
  if (!is_zero(v)) return v;
  v = q.project(pen.s_tau);
  if (!is_zero(v)) return v;
  throw std::runtime_error("rnc_point: the pencil at " + point_str(pen.a) + " projects to zero");
}

Vec rnc_point(const SpanningContext& ctx, const ProjPoint& a) { return rnc_point(ctx, d2_quotient(ctx), pencil(ctx, a)); }

std::vector<ProjPoint> default_points(const CurveParams& p) {
  std::vector<ProjPoint> pts;
  for (int k = 0; k <= p.r() - 4; ++k) pts.emplace_back(k, 1);
  pts.emplace_back(1, 0);
  return pts;
}

SpanningCertificate spanning_i2(const SpanningContext& ctx, const std::vector<ProjPoint>& points, bool escalate) {
  return spanning_i2_impl(ctx, points, escalate).cert;
}

SpanningCertificate spanning_i2(const SpanningContext& ctx) {
  return spanning_i2(ctx, default_points(ctx.params()), true);
}

CechSection mult_section(const SpanningContext& ctx, int i, const Subset& J, const CechSection& sigma) {
  const std::size_t N = static_cast<std::size_t>(ctx.params().N());
  if (i < 2 || i > ctx.params().r()) throw std::invalid_argument("mult_section: i out of range");
  if (J.size() != static_cast<std::size_t>(i - 2)) throw std::invalid_argument("mult_section: |J| must be i - 2");
  const std::size_t comps = static_cast<std::size_t>(binom(static_cast<long>(N), i));
  CechSection out{LaurentVec(comps), LaurentVec(comps)};
  auto wedge_rep = [&](const LaurentVec& rep, LaurentVec& dst) {
    for (const auto& [k, c] : rep.terms()) {
      const auto w = wedge_indices(J, subset_unrank(k.component, N, 2));
      if (!w) continue;
      dst.add(subset_rank(w->second, N), k.s_exp, k.t_exp, w->first > 0 ? c : Scalar(-c));
    }
  };
  wedge_rep(sigma.rep0, out.rep0);
  wedge_rep(sigma.rep1, out.rep1);
  if (!ctx.model(i).satisfies_overlap(out))
    throw std::runtime_error("mult_section: product violates the overlap condition of L'_" + std::to_string(i));
  return out;
}

SpanningCertificate spanning_general(const SpanningContext& ctx, int i, const std::vector<ProjPoint>& points,
                                     bool escalate) {
  const CurveParams& p = ctx.params();
  if (i < 2 || i > p.g)
    throw std::invalid_argument("spanning_general: i = " + std::to_string(i) +
                                " is outside the verified range 2 <= i <= g = " + std::to_string(p.g) +
                                "; there the section count of L'_i is not known to equal that of the exterior power");
  I2Result base = spanning_i2_impl(ctx, points, escalate);
  if (i == 2) return base.cert;

  SpanningCertificate cert = base.cert;
  cert.i = i;
  cert.target = static_cast<std::size_t>(dim_L_prime(p, i));
  const CechModel& Mi = ctx.model(i);
  const auto Js = subsets(static_cast<std::size_t>(p.N()), static_cast<std::size_t>(i - 2));
  const auto basis2 = ctx.l2().basis();
  const auto& tw = Mi.presentation().target_weights;

  if (base.cert.verdict) {
    // The sample set spans Gamma(L'_2), so by bilinearity its products span
    // the same space as the products with a basis; basis elements are weight
    // homogeneous, and so are their products.
    std::map<int, Subspace> blocks;
    for (const auto& J : Js)
      for (const auto& beta : basis2) {
        const CechSection prod = mult_section(ctx, i, J, beta);
        const LaurentVec& any = prod.rep0.is_zero() ? prod.rep1 : prod.rep0;
        if (any.is_zero()) continue;
        const auto& key = any.terms().begin()->first;
        const int w = key.s_exp + tw[key.component];
        auto it = blocks.try_emplace(w, Subspace(Mi.block_dim(w))).first;
        it->second.add(Mi.block_coordinates(w, prod));
      }
    cert.rank = 0;
    for (const auto& [w, s] : blocks) cert.rank += s.dim();
  } else {
    Subspace span(Mi.dimension());
    const auto gens = base.span.basis();
    for (const auto& J : Js) {
      std::vector<Vec> prods;
      for (const auto& beta : basis2) prods.push_back(Mi.coordinates(mult_section(ctx, i, J, beta)));
      for (const auto& c : gens) {
        Vec v(Mi.dimension());
        for (std::size_t k = 0; k < c.size(); ++k)
          if (!is_zero(c[k]))
            for (std::size_t r = 0; r < v.size(); ++r) v[r] += c[k] * prods[k][r];
        span.add(v);
      }
    }
    cert.rank = span.dim();
  }
  cert.verdict = cert.rank == cert.target;
  return cert;
}

SpanningCertificate spanning_general(const SpanningContext& ctx, int i) {
  return spanning_general(ctx, i, default_points(ctx.params()), true);
}

}  // namespace syz
