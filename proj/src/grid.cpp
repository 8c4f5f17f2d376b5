#include "syz/grid.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "syz/scroll.hpp"
#include "syz/spanning.hpp"

namespace syz {

std::vector<CurveParams> grid_cells(const GridBounds& b) {
  std::vector<CurveParams> cells;
  for (int g = b.gmin; g <= b.gmax; ++g)
    for (int d = 2 * g + 1; d <= 2 * g + b.dspan; ++d) {
      const auto [lo, hi] = x_range(g, d);
      for (int x = lo; x <= hi; ++x) cells.push_back({g, d, x});
    }
  return cells;
}

namespace {

void check_cell(const CurveParams& p, CellReport& rep) {
  auto fail = [&](std::optional<int> i, std::string check, std::string detail) {
    rep.failures.push_back({p, i, std::move(check), std::move(detail)});
  };

  for (int i = 0; i <= p.g; ++i) {
    const long cech = static_cast<long>(CechModel(build_L_prime(p, i)).dimension());
    const long closed = dim_L_prime(p, i);
    const long wedge = dim_wedge_E(p, i).value;
    if (cech != closed || cech != wedge)
      fail(i, "dims", "cech " + std::to_string(cech) + ", closed form " + std::to_string(closed) + ", wedge " +
                          std::to_string(wedge));
  }

  const BettiTable t = betti_table(p);
  const HilbertCheck h = hilbert_check(p, t);
  if (!h.ok)
    fail(std::nullopt, "hilbert", "n = " + std::to_string(h.first_failure) + ": expected " +
                                      std::to_string(h.expected) + ", got " + std::to_string(h.computed));
  const BridgeCheck br = betti_bridge(p, t);
  if (!br.ok) fail(br.failing_i, "bridge", "");

  const SpanningContext ctx(p);
  const auto pts = default_points(p);
  const SpanningCertificate c2 = spanning_i2(ctx, pts, false);
  if (!c2.verdict) fail(2, "spanning", std::to_string(c2.rank) + "/" + std::to_string(c2.target));
  for (int i = 3; i <= p.g; ++i) {
    const SpanningCertificate ci = spanning_general(ctx, i, pts, false);
    if (!ci.verdict) fail(i, "spanning", std::to_string(ci.rank) + "/" + std::to_string(ci.target));
  }

  if (p.r() - 3 >= 1) {
    const QuotientSpace q = d2_quotient(ctx);
    const std::size_t rank = Subspace::span(q.dim(), c2.quotient_coords).dim();
    const std::size_t want = std::min(pts.size(), static_cast<std::size_t>(p.r() - 2));
    if (rank != want) fail(std::nullopt, "rnc", std::to_string(rank) + " of " + std::to_string(want));
  }
}

}  // namespace

CellReport run_cell(const CurveParams& p) {
  CellReport rep{p, {}, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    check_cell(p, rep);
  } catch (const std::exception& e) {
    rep.failures.push_back({p, std::nullopt, "exception", e.what()});
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<CellReport> run_grid(const std::vector<CurveParams>& cells, unsigned jobs) {
  std::vector<CellReport> out(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) out[k] = run_cell(cells[k]);
  };
  const unsigned n = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace syz
