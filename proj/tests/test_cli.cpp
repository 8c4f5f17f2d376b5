#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "syz/grid.hpp"
#include "syz/render.hpp"

using namespace syz;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SYZ_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Render, BettiText) {
  const std::string text = render(betti_table({2, 5, 1}), Format::Text);
  EXPECT_EQ(text,
            "       0 1 2\n"
            "total: 1 3 2\n"
            "    0: 1 . .\n"
            "    1: . 1 .\n"
            "    2: . 2 2\n");
}

TEST(Render, BettiJson) {
  EXPECT_EQ(render(betti_table({2, 5, 1}), Format::Json),
            R"({"g":2,"d":5,"x":1,"betti":[{"p":0,"j":0,"beta":1},{"p":1,"j":2,"beta":1},)"
            R"({"p":1,"j":3,"beta":2},{"p":2,"j":4,"beta":2}]})");
}

TEST(Render, EmptyCertificatePoints) {
  SpanningCertificate c;
  c.params = {2, 7, 2};
  c.rank = 15;
  c.target = 18;
  EXPECT_NE(render(c, Format::Json).find(R"("points":[])"), std::string::npos);
}

TEST(Render, JsonRoundTripIsByteIdentical) {
  for (const CurveParams& p : grid_cells({2, 4, 6})) {
    const std::string b = render(betti_table(p), Format::Json);
    const Json jb = Json::parse(b);
    EXPECT_EQ(render(betti_from_json(params_from_json(jb), jb.at("betti")), Format::Json), b);

    const auto rows = dims_rows(p, p.r(), false);
    const std::string d = render(p, rows, Format::Json);
    const Json jd = Json::parse(d);
    EXPECT_EQ(dims_from_json(jd.at("dims")), rows);
    EXPECT_EQ(render(params_from_json(jd), dims_from_json(jd.at("dims")), Format::Json), d);
  }
  SpanningCertificate c;
  c.params = {3, 9, 2};
  c.i = 3;
  c.points = {ProjPoint(0, 1), ProjPoint(make_fraction(-3, 2), 1), ProjPoint(1, 0)};
  c.rank = 50;
  c.target = 50;
  c.verdict = true;
  const std::string s = render(c, Format::Json);
  const Json j = Json::parse(s);
  EXPECT_EQ(render(certificate_from_json(params_from_json(j), j.at("certificate")), Format::Json), s);
}

TEST(Render, ManifestRoundTrip) {
  RunManifest m;
  m.subcommand = "verify";
  m.inputs = params_json({2, 7, 2});
  m.points = {ProjPoint(1, 1), ProjPoint(make_fraction(1, 3), 1)};
  m.format = Format::Json;
  m.timestamp = utc_timestamp();
  m.version = "test";
  m.results = Json{{"certificate", Json{{"rank", 18}}}};
  m.exit_code = 1;
  const std::string once = manifest_json(m).dump();
  EXPECT_EQ(manifest_json(manifest_from_json(Json::parse(once))).dump(), once);
}

TEST(Render, Formats) {
  EXPECT_EQ(parse_format("text"), Format::Text);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_FALSE(parse_format("yaml").has_value());
}

TEST(Cli, DimsExample) {
  const RunResult r = run("dims --g 2 --d 5 --x 1 --imax 3 --format json");
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("dims").at(0).at("i"), 2);
  EXPECT_EQ(j.at("dims").at(0).at("dimLPrime"), 7);
}

TEST(Cli, BettiExample) {
  const RunResult r = run("betti --g 2 --d 5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("    2: . 2 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("hilbert=pass"), std::string::npos);
  EXPECT_NE(r.out.find("bridge=pass"), std::string::npos);
}

TEST(Cli, VerifyExample) {
  const RunResult r = run("verify --g 2 --d 7 --x 2 --i 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rank: 18/18"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: true"), std::string::npos);
}

TEST(Cli, FalseVerdictExitsOneWithCertificate) {
  const RunResult r = run("verify --g 3 --d 7 --x 1 --i 3 --points '' --format json");
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("certificate").at("rank"), 10);
  EXPECT_EQ(j.at("certificate").at("verdict"), false);
  EXPECT_EQ(j.at("certificate").at("points"), Json::array());
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("verify --g 2 --d 7 --x 3").code, 2);
  EXPECT_EQ(run("betti --g 3 --d 6").code, 2);
  EXPECT_EQ(run("betti --g 2 --d 5 --bogus 1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --g 2 --d 7 --x 2 --points '1,2,3'").code, 2);
  EXPECT_EQ(run("verify --g 2 --d 7 --x 2 --points '0,0'").code, 2);
  EXPECT_EQ(run("verify --g 2 --d 7 --x 2 --points '1,1;2,2'").code, 2);
  EXPECT_EQ(run("verify --g 2 --d 7 --x 2 --i 3").code, 2);
  EXPECT_EQ(run("betti --g 2 --d 5", "SYZ_FORMAT=xml").code, 2);
  EXPECT_EQ(run("betti --g 2 --d 5 --format xml").code, 2);
}

TEST(Cli, EnvironmentFormatAndOverride) {
  const RunResult j = run("betti --g 2 --d 5", "SYZ_FORMAT=json");
  EXPECT_EQ(j.out, render(betti_table({2, 5, 1}), Format::Json) + "\n");
  const RunResult t = run("betti --g 2 --d 5 --format text", "SYZ_FORMAT=json");
  EXPECT_EQ(t.out.rfind("       0 1 2\n", 0), 0u);
}

TEST(Cli, ExplicitPoints) {
  const RunResult r = run("verify --g 2 --d 7 --x 2 --points '0,1;1,1;1,0' --format json");
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("certificate").at("points"), Json::parse("[[0,1],[1,1],[1,0]]"));
}

TEST(Cli, ManifestFile) {
  const std::string path = testing::TempDir() + "syz_manifest.json";
  const RunResult r = run("betti --g 2 --d 6 --manifest " + path);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  const Json j = Json::parse(in);
  const RunManifest m = manifest_from_json(j);
  EXPECT_EQ(m.subcommand, "betti");
  EXPECT_EQ(m.inputs, params_json({2, 6, 1}));
  EXPECT_EQ(m.results.at("hilbert"), true);
  EXPECT_EQ(manifest_json(m), j);
  std::remove(path.c_str());
}

TEST(Cli, GridDeterministicAcrossJobs) {
  const RunResult one = run("grid --gmin 2 --gmax 3 --dspan 4 --jobs 1 --format json");
  const RunResult many = run("grid --gmin 2 --gmax 3 --dspan 4 --jobs 4 --format json");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
  EXPECT_TRUE(Json::parse(one.out).at("failures").empty());
}

TEST(Grid, Cells) {
  const auto cells = grid_cells({});
  EXPECT_EQ(cells.size(), 58u);
  EXPECT_EQ(cells.front().g, 2);
  EXPECT_EQ(cells.front().d, 5);
  EXPECT_EQ(cells.back().g, 5);
  EXPECT_EQ(cells.back().d, 16);
}
