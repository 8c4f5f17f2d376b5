// Command-line front end: dims, betti, verify, grid.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "syz/grid.hpp"
#include "syz/render.hpp"

#ifndef SYZ_VERSION
#define SYZ_VERSION "0.0.0"
#endif

namespace {

using namespace syz;

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kBadInput = 2;

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// "k0,k1;k2,k3" -> (k0:k1), (k2:k3). Entries may be rationals p/q.
std::vector<ProjPoint> parse_points(const std::string& text) {
  std::vector<ProjPoint> pts;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos || item.find(',', comma + 1) != std::string::npos)
      throw BadInput("malformed point '" + item + "': expected a0,a1");
    Scalar c[2];
    const std::string parts[2] = {item.substr(0, comma), item.substr(comma + 1)};
    for (int k = 0; k < 2; ++k) {
      if (parts[k].empty() || c[k].set_str(parts[k], 10) != 0 || c[k].get_den() == 0)
        throw BadInput("malformed coordinate '" + parts[k] + "' in point '" + item + "'");
      c[k].canonicalize();
    }
    try {
      pts.emplace_back(c[0], c[1]);
    } catch (const std::invalid_argument& e) {
      throw BadInput(e.what());
    }
  }
  return pts;
}

CurveParams checked(int g, int d, int x) {
  try {
    return validate(g, d, x);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
}

int cmd_dims(RunManifest& m, int g, int d, int x, std::optional<int> imax, bool cech) {
  const CurveParams p = checked(g, d, x);
  const int top = imax.value_or(p.r());
  if (top < 2 || top > p.r())
    throw BadInput("--imax must lie in [2, d-g] = [2, " + std::to_string(p.r()) + "]");
  const auto rows = dims_rows(p, top, cech);
  std::cout << render(p, rows, m.format);
  int code = kOk;
  Json reports = Json::array();
  for (int i = 2; i <= top; ++i) {
    const DimComparison r = dim_comparison(p, i);
    reports.push_back(Json{{"i", r.i}, {"dimLPrime", r.dim_L_prime}, {"dimWedgeE", r.dim_wedge_E},
                           {"inRange", r.in_range}, {"agree", r.agree}});
    if (r.in_range && !r.agree) code = kVerdictFalse;
    if (m.format == Format::Text && !r.agree)
      std::cout << "i=" << i << ": h0(L'_i) = " << r.dim_L_prime << " vs " << r.dim_wedge_E
                << (r.in_range ? " (DISAGREE)" : " (i > g, informational)") << '\n';
  }
  if (m.format == Format::Json) std::cout << '\n';
  m.inputs = params_json(p);
  m.results = Json{{"dims", dims_json(rows)}, {"comparison", reports}};
  return code;
}

int cmd_betti(RunManifest& m, int g, int d, std::optional<int> x) {
  const CurveParams p = checked(g, d, x.value_or(x_range(g, d).first));
  const BettiTable t = betti_table(p);
  const HilbertCheck h = hilbert_check(p, t);
  const BridgeCheck b = betti_bridge(p, t);
  std::cout << render(t, m.format);
  if (m.format == Format::Text)
    std::cout << "hilbert=" << (h.ok ? "pass" : "fail") << '\n' << "bridge=" << (b.ok ? "pass" : "fail") << '\n';
  else
    std::cout << '\n';
  m.inputs = params_json(p);
  m.results = Json{{"betti", betti_json(t)}, {"hilbert", h.ok}, {"bridge", b.ok}};
  return h.ok && b.ok ? kOk : kVerdictFalse;
}

int cmd_verify(RunManifest& m, int g, int d, int x, int i, const std::optional<std::string>& points) {
  const CurveParams p = checked(g, d, x);
  if (i < 2 || i > p.g)
    throw BadInput("--i must lie in [2, g] = [2, " + std::to_string(p.g) + "]");
  if (points) m.points = parse_points(*points);
  const SpanningContext ctx(p);
  SpanningCertificate c;
  try {
    c = points ? spanning_general(ctx, i, m.points, false) : spanning_general(ctx, i);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  std::cout << render(c, m.format);
  if (m.format == Format::Json) std::cout << '\n';
  m.inputs = params_json(p);
  m.results = Json{{"certificate", certificate_json(c)}};
  return c.verdict ? kOk : kVerdictFalse;
}

int cmd_grid(RunManifest& m, const GridBounds& b, unsigned jobs) {
  if (b.gmin < 2 || b.gmax < b.gmin || b.dspan < 1) throw BadInput("grid bounds need 2 <= gmin <= gmax and dspan >= 1");
  const auto reports = run_grid(grid_cells(b), jobs == 0 ? std::thread::hardware_concurrency() : jobs);
  Json cells = Json::array();
  Json failures = Json::array();
  for (const auto& r : reports) {
    Json cell = params_json(r.params);
    cell["ok"] = r.ok();
    cells.push_back(cell);
    for (const auto& f : r.failures) {
      Json o = params_json(f.params);
      o["i"] = f.i ? Json(*f.i) : Json(nullptr);
      o["check"] = f.check;
      o["detail"] = f.detail;
      failures.push_back(o);
    }
  }
  const Json bounds{{"gmin", b.gmin}, {"gmax", b.gmax}, {"dspan", b.dspan}};
  if (m.format == Format::Json) {
    std::cout << Json{{"grid", bounds}, {"cells", cells}, {"failures", failures}}.dump() << '\n';
  } else {
    for (const auto& r : reports)
      std::cout << "g=" << r.params.g << " d=" << r.params.d << " x=" << r.params.x << ' '
                << (r.ok() ? "ok" : "FAIL") << '\n';
    for (const auto& f : failures)
      std::cout << "failure: (" << f["g"] << "," << f["d"] << "," << f["x"] << ","
                << (f["i"].is_null() ? std::string("-") : f["i"].dump()) << ") " << f["check"].get<std::string>()
                << ' ' << f["detail"].get<std::string>() << '\n';
    std::cout << reports.size() << " cells, " << failures.size() << " failures\n";
  }
  m.inputs = bounds;
  Json timing = Json::array();
  for (const auto& r : reports) timing.push_back(r.seconds);
  m.results = Json{{"cells", cells}, {"failures", failures}, {"seconds", timing}};
  return failures.empty() ? kOk : kVerdictFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syzygy verification for line bundles on hyperelliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", SYZ_VERSION);

  std::string format_flag;
  std::string manifest_path;
  app.add_option("--format", format_flag, "Output format: text or json (default: $SYZ_FORMAT, else text)")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--manifest", manifest_path, "Also write a JSON run manifest to this file");

  int g = 0, d = 0, x = 0, i = 2;
  std::optional<int> imax, bx;
  std::optional<std::string> points;
  bool cech = false;
  GridBounds bounds;
  unsigned jobs = 1;

  auto* dims = app.add_subcommand("dims", "Section counts of L'_i and the exterior powers of E");
  dims->add_option("--g", g)->required();
  dims->add_option("--d", d)->required();
  dims->add_option("--x", x)->required();
  dims->add_option("--imax", imax, "Largest i (default d-g)");
  dims->add_flag("--cech", cech, "Also count sections with the Cech model");

  auto* betti = app.add_subcommand("betti", "Betti table with Hilbert and bridge checks");
  betti->add_option("--g", g)->required();
  betti->add_option("--d", d)->required();
  betti->add_option("--x", bx, "Splitting parameter (default: least valid)");

  auto* verify = app.add_subcommand("verify", "Spanning certificate for Gamma(L'_i)");
  verify->add_option("--g", g)->required();
  verify->add_option("--d", d)->required();
  verify->add_option("--x", x)->required();
  verify->add_option("--i", i, "Exterior degree, 2 <= i <= g (default 2)");
  verify->add_option("--points", points, "Sample points \"a0,a1;b0,b1;...\" (default: standard set)");

  auto* grid = app.add_subcommand("grid", "Sweep every check over a parameter grid");
  grid->add_option("--gmin", bounds.gmin);
  grid->add_option("--gmax", bounds.gmax);
  grid->add_option("--dspan", bounds.dspan, "d runs over 2g+1 .. 2g+dspan");
  grid->add_option("--jobs", jobs, "Worker threads across cells (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }

  RunManifest m;
  m.version = SYZ_VERSION;
  m.timestamp = utc_timestamp();
  if (format_flag.empty()) {
    const char* env = std::getenv("SYZ_FORMAT");
    format_flag = env != nullptr && *env != '\0' ? env : "text";
  }
  const auto f = parse_format(format_flag);
  if (!f) {
    std::cerr << "error: unknown format '" << format_flag << "' (expected text or json)\n";
    return kBadInput;
  }
  m.format = *f;

  int code = kOk;
  try {
    if (*dims) {
      m.subcommand = "dims";
      code = cmd_dims(m, g, d, x, imax, cech);
    } else if (*betti) {
      m.subcommand = "betti";
      code = cmd_betti(m, g, d, bx);
    } else if (*verify) {
      m.subcommand = "verify";
      code = cmd_verify(m, g, d, x, i, points);
    } else {
      m.subcommand = "grid";
      code = cmd_grid(m, bounds, jobs);
    }
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }

  m.exit_code = code;
  if (!manifest_path.empty()) {
    std::ofstream out(manifest_path);
    if (!out) {
      std::cerr << "error: cannot write " << manifest_path << '\n';
      return kBadInput;
    }
    out << manifest_json(m).dump(2) << '\n';
  }
  return code;
}
