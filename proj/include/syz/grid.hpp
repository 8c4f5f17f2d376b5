#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syz/hyperelliptic.hpp"

namespace syz {

struct GridBounds {
  int gmin = 2;
  int gmax = 5;
  int dspan = 6;  // d runs over 2g+1 .. 2g+dspan
};

/// All valid (g, d, x) inside the bounds, ordered by g, then d, then x.
std::vector<CurveParams> grid_cells(const GridBounds& b);

struct CellFailure {
  CurveParams params;
  std::optional<int> i;  // empty for checks not indexed by i
  std::string check;
  std::string detail;
};

struct CellReport {
  CurveParams params;
  std::vector<CellFailure> failures;
  double seconds = 0;
  bool ok() const { return failures.empty(); }
};

/// Every per-cell verification: Cech counts against both closed forms for
/// 0 <= i <= g, the Hilbert and bridge checks of the Betti table, spanning
/// at i = 2 with the default points, spanning for 3 <= i <= g, and the rank
/// of the D^2 images of the default points.
CellReport run_cell(const CurveParams& p);

/// Runs the cells on up to `jobs` threads; reports come back in cell order.
std::vector<CellReport> run_grid(const std::vector<CurveParams>& cells, unsigned jobs);

}  // namespace syz
