#include "syz/render.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "syz/cokernel.hpp"

namespace syz {

std::optional<Format> parse_format(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  return std::nullopt;
}

std::string format_name(Format f) { return f == Format::Text ? "text" : "json"; }

std::vector<DimsRow> dims_rows(const CurveParams& p, int imax, bool with_cech) {
  std::vector<DimsRow> rows;
  for (int i = 2; i <= imax; ++i) {
    const WedgeDim w = dim_wedge_E(p, i);
    DimsRow row{i, dim_L_prime(p, i), w.value, h1_wedge_E(p, i), w.in_range, std::nullopt};
    if (with_cech) row.cech = static_cast<long>(CechModel(build_L_prime(p, i)).dimension());
    rows.push_back(row);
  }
  return rows;
}

Json params_json(const CurveParams& p) { return Json{{"g", p.g}, {"d", p.d}, {"x", p.x}}; }

CurveParams params_from_json(const Json& j) {
  return CurveParams{j.at("g").get<int>(), j.at("d").get<int>(), j.at("x").get<int>()};
}

Json betti_json(const BettiTable& t) {
  Json arr = Json::array();
  for (const auto& [key, beta] : t.entries()) arr.push_back(Json{{"p", key.first}, {"j", key.second}, {"beta", beta}});
  return arr;
}

BettiTable betti_from_json(const CurveParams& p, const Json& arr) {
  BettiTable t(p);
  for (const auto& e : arr) t.add(e.at("p").get<int>(), e.at("j").get<int>(), e.at("beta").get<long>());
  return t;
}

Json dims_json(const std::vector<DimsRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json o{{"i", r.i},
           {"dimLPrime", r.dim_L_prime},
           {"dimWedgeE", r.dim_wedge_E},
           {"h1WedgeE", r.h1_wedge_E},
           {"inRange", r.in_range}};
    if (r.cech) o["cech"] = *r.cech;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<DimsRow> dims_from_json(const Json& arr) {
  std::vector<DimsRow> rows;
  for (const auto& o : arr) {
    DimsRow r{o.at("i").get<int>(), o.at("dimLPrime").get<long>(), o.at("dimWedgeE").get<long>(),
              o.at("h1WedgeE").get<long>(), o.at("inRange").get<bool>(), std::nullopt};
    if (o.contains("cech")) r.cech = o.at("cech").get<long>();
    rows.push_back(r);
  }
  return rows;
}

namespace {

Json scalar_json(const Scalar& x) {
  if (is_integer(x) && x.get_num().fits_slong_p()) return x.get_num().get_si();
  return to_string(x);
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) {
    Scalar q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not a rational: " + j.get<std::string>());
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("expected an integer or a rational string");
}

std::string point_text(const ProjPoint& a) { return "(" + to_string(a.s) + ":" + to_string(a.t) + ")"; }

}  // namespace

Json point_json(const ProjPoint& a) { return Json::array({scalar_json(a.s), scalar_json(a.t)}); }

ProjPoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a point is a pair [a0, a1]");
  return ProjPoint(scalar_from_json(j[0]), scalar_from_json(j[1]));
}

Json certificate_json(const SpanningCertificate& c) {
  Json pts = Json::array();
  for (const auto& a : c.points) pts.push_back(point_json(a));
  return Json{{"i", c.i}, {"points", pts}, {"rank", c.rank}, {"target", c.target}, {"verdict", c.verdict}};
}

SpanningCertificate certificate_from_json(const CurveParams& p, const Json& obj) {
  SpanningCertificate c;
  c.params = p;
  c.i = obj.at("i").get<int>();
  for (const auto& a : obj.at("points")) c.points.push_back(point_from_json(a));
  c.rank = obj.at("rank").get<std::size_t>();
  c.target = obj.at("target").get<std::size_t>();
  c.verdict = obj.at("verdict").get<bool>();
  return c;
}

std::string betti_text(const BettiTable& t) {
  const int cols = t.max_p() + 1;
  int rows = 0;
  for (const auto& [key, beta] : t.entries()) rows = std::max(rows, key.second - key.first + 1);

  std::vector<long> totals(cols, 0);
  for (const auto& [key, beta] : t.entries()) totals[key.first] += beta;

  std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols, "."));
  for (const auto& [key, beta] : t.entries()) cells[key.second - key.first][key.first] = std::to_string(beta);

  std::vector<std::size_t> width(cols, 1);
  for (int c = 0; c < cols; ++c) {
    width[c] = std::max(std::to_string(c).size(), std::to_string(totals[c]).size());
    for (int q = 0; q < rows; ++q) width[c] = std::max(width[c], cells[q][c].size());
  }
  std::size_t label = std::string("total:").size();
  for (int q = 0; q < rows; ++q) label = std::max(label, std::to_string(q).size() + 1);

  std::ostringstream os;
  auto line = [&](const std::string& head, auto&& entry) {
    os << std::setw(static_cast<int>(label)) << head;
    for (int c = 0; c < cols; ++c) os << ' ' << std::setw(static_cast<int>(width[c])) << entry(c);
    os << '\n';
  };
  line("", [](int c) { return std::to_string(c); });
  line("total:", [&](int c) { return std::to_string(totals[c]); });
  for (int q = 0; q < rows; ++q) line(std::to_string(q) + ":", [&](int c) { return cells[q][c]; });
  return os.str();
}

std::string dims_text(const CurveParams& p, const std::vector<DimsRow>& rows) {
  std::ostringstream os;
  os << "g=" << p.g << " d=" << p.d << " x=" << p.x << '\n';
  const bool cech = std::any_of(rows.begin(), rows.end(), [](const DimsRow& r) { return r.cech.has_value(); });
  os << std::setw(3) << "i" << std::setw(12) << "dimLPrime" << std::setw(12) << "dimWedgeE" << std::setw(11)
     << "h1WedgeE" << std::setw(9) << "inRange";
  if (cech) os << std::setw(8) << "cech";
  os << '\n';
  for (const auto& r : rows) {
    os << std::setw(3) << r.i << std::setw(12) << r.dim_L_prime << std::setw(12) << r.dim_wedge_E << std::setw(11)
       << r.h1_wedge_E << std::setw(9) << (r.in_range ? "yes" : "no");
    if (cech) os << std::setw(8) << (r.cech ? std::to_string(*r.cech) : "-");
    os << '\n';
  }
  return os.str();
}

std::string certificate_text(const SpanningCertificate& c) {
  std::ostringstream os;
  os << "g=" << c.params.g << " d=" << c.params.d << " x=" << c.params.x << " i=" << c.i << '\n';
  os << "points:";
  for (const auto& a : c.points) os << ' ' << point_text(a);
  os << '\n' << "rank: " << c.rank << '/' << c.target << '\n';
  os << "verdict: " << (c.verdict ? "true" : "false") << '\n';
  return os.str();
}

std::string render(const BettiTable& t, Format f) {
  if (f == Format::Text) return betti_text(t);
  Json j = params_json(t.params());
  j["betti"] = betti_json(t);
  return j.dump();
}

std::string render(const SpanningCertificate& c, Format f) {
  if (f == Format::Text) return certificate_text(c);
  Json j = params_json(c.params);
  j["certificate"] = certificate_json(c);
  return j.dump();
}

std::string render(const CurveParams& p, const std::vector<DimsRow>& rows, Format f) {
  if (f == Format::Text) return dims_text(p, rows);
  Json j = params_json(p);
  j["dims"] = dims_json(rows);
  return j.dump();
}

Json manifest_json(const RunManifest& m) {
  Json pts = Json::array();
  for (const auto& a : m.points) pts.push_back(point_json(a));
  return Json{{"subcommand", m.subcommand}, {"inputs", m.inputs},       {"points", pts},
              {"format", format_name(m.format)}, {"timestamp", m.timestamp}, {"version", m.version},
              {"exitCode", m.exit_code},      {"results", m.results}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.inputs = j.at("inputs");
  for (const auto& a : j.at("points")) m.points.push_back(point_from_json(a));
  const auto f = parse_format(j.at("format").get<std::string>());
  if (!f) throw std::invalid_argument("manifest: unknown format");
  m.format = *f;
  m.timestamp = j.at("timestamp").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.exit_code = j.at("exitCode").get<int>();
  m.results = j.at("results");
  return m;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace syz
