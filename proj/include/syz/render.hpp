#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "syz/hyperelliptic.hpp"
#include "syz/scroll.hpp"
#include "syz/spanning.hpp"

namespace syz {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json };

std::optional<Format> parse_format(std::string_view s);
std::string format_name(Format f);

/// One row of the dimension table for L'_i and the i-th exterior power of E.
struct DimsRow {
  int i;
  long dim_L_prime;
  long dim_wedge_E;
  long h1_wedge_E;
  bool in_range;
  std::optional<long> cech;  // section count of the Cech model, when computed
  friend bool operator==(const DimsRow&, const DimsRow&) = default;
};

std::vector<DimsRow> dims_rows(const CurveParams& p, int imax, bool with_cech);

// JSON fragments. The *_from_json functions invert them exactly.
Json params_json(const CurveParams& p);
CurveParams params_from_json(const Json& j);
Json betti_json(const BettiTable& t);
BettiTable betti_from_json(const CurveParams& p, const Json& arr);
Json dims_json(const std::vector<DimsRow>& rows);
std::vector<DimsRow> dims_from_json(const Json& arr);
Json certificate_json(const SpanningCertificate& c);
SpanningCertificate certificate_from_json(const CurveParams& p, const Json& obj);
Json point_json(const ProjPoint& a);
ProjPoint point_from_json(const Json& j);

/// Rows q = j - p, columns p, "." for zero, with a "total:" row on top.
std::string betti_text(const BettiTable& t);
std::string dims_text(const CurveParams& p, const std::vector<DimsRow>& rows);
std::string certificate_text(const SpanningCertificate& c);

/// Full document: the text layouts above, or a compact JSON object keyed
/// "g", "d", "x" followed by the payload.
std::string render(const BettiTable& t, Format f);
std::string render(const SpanningCertificate& c, Format f);
std::string render(const CurveParams& p, const std::vector<DimsRow>& rows, Format f);

/// Record of one CLI invocation.
struct RunManifest {
  std::string subcommand;
  Json inputs;  // parameter triple or grid bounds
  std::vector<ProjPoint> points;
  Format format = Format::Text;
  std::string timestamp;
  std::string version;
  Json results;
  int exit_code = 0;
};

Json manifest_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
std::string utc_timestamp();

}  // namespace syz
