#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "vmcorr/errors.hpp"
#include "vmcorr/io.hpp"

using namespace vmcorr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vmcorr_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const fs::path out = scratch("cli_stdout.txt");
  const std::string cmd =
      std::string(VMCORR_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

}  // namespace

TEST_CASE("sample CSV round trip") {
  const AngleSampleMatrix d = sample_bivariate(ModelParams::cosine(1, 2, -1), 200, SamplerConfig{4});
  const fs::path path = scratch("roundtrip.csv");
  io::write_sample_csv(path.string(), d);
  CHECK(slurp(path).rfind("theta,phi\n", 0) == 0);
  const AngleSampleMatrix back = io::read_sample_csv(path.string());
  REQUIRE(back.size() == d.size());
  CHECK((back.theta == d.theta).all());
  CHECK((back.phi == d.phi).all());
}

TEST_CASE("CSV errors") {
  CHECK_THROWS_AS(io::read_sample_csv(scratch("missing.csv").string()), IoError);
  const fs::path bad = scratch("bad.csv");
  io::write_text(bad.string(), "theta,phi\n0.1;0.2\n");
  CHECK_THROWS_AS(io::read_sample_csv(bad.string()), IoError);
  CHECK_THROWS_AS(io::write_text("/nonexistent-dir/x.csv", "x"), IoError);
}

TEST_CASE("number formats") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_2sf(0.21914) == "0.22");
  CHECK(io::format_2sf(-0.0784) == "-0.078");
}

TEST_CASE("manifest and report JSON") {
  io::RunManifest m;
  m.command = "sample";
  m.params = ModelParams::sine(1, 1, 2);
  m.sampler = SamplerConfig{5};
  m.outputs = {"a.csv"};
  const auto j = nlohmann::json::parse(io::manifest_json(m));
  CHECK(j["tool_version"] == io::kToolVersion);
  CHECK(j["params"]["assoc"] == 2.0);
  CHECK(j["sampler"]["seed"] == 5);
  CHECK(j["sampler"]["rng"] == "mt19937_64+splitmix64");

  const auto r = nlohmann::json::parse(io::report_json(correlation_report(ModelParams::cosine(1, 1, -2))));
  CHECK(r["normal_approx"].is_null());
  CHECK(r["rho_fl"].get<double>() > 0);
  CHECK(r["series"]["converged"] == true);
}

TEST_CASE("CLI report and table") {
  const Run r = cli("report --family sine --k1 1 --k2 1 --assoc 0.5");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(io::format_2sf(j["rho_js"].get<double>()) == "0.22");
  CHECK(io::format_2sf(j["rho_fl"].get<double>()) == "0.078");

  const auto c = nlohmann::json::parse(cli("report --family cosine --k1 10 --k2 10 --assoc 20").out);
  CHECK(io::format_2sf(c["rho_js"].get<double>()) == "0.67");
  CHECK(io::format_2sf(c["rho_fl"].get<double>()) == "0.67");

  const auto u = nlohmann::json::parse(cli("report --family sine").out);
  CHECK(u["rho_js"] == 0.0);
  CHECK(u["var_theta"] == 1.0);

  const std::string sine = cli("table --family sine --pretty").out;
  CHECK(sine.find("10,10,20,2,0.98,0.89,0.49\n") != std::string::npos);
  const std::string cosine = cli("table --family cosine --pretty").out;
  CHECK(cosine.find("1,1,-0.5,-1,-0.22,-0.025,0.64\n") != std::string::npos);
  for (const std::string& t : {sine, cosine}) {
    CHECK(std::count(t.begin(), t.end(), '\n') == 13);
  }
  CHECK(cli("table --family tangent").code == 2);
}

TEST_CASE("CLI sample and exit codes") {
  const fs::path a = scratch("s_a.csv"), b = scratch("s_b.csv");
  const std::string common = "sample --family sine --k1 1 --k2 1 --assoc 2 --n 10 --seed 3 --out ";
  REQUIRE(cli(common + a.string()).code == 0);
  REQUIRE(cli(common + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(fs::exists(a.string() + ".manifest.json"));

  CHECK(cli("sample --method rejection --k1 10 --k2 10 --assoc 5 --out " + a.string()).code == 2);
  CHECK(cli("sample --k1 1 --out /nonexistent-dir/x.csv").code == 4);
  CHECK(cli("report --k1 -1").code == 2);
  CHECK(cli("report --k1 abc").code == 2);
  CHECK(cli("report --k1 10 --k2 10 --assoc 20 --max-terms 2").code == 3);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("CLI degrees flag converts means") {
  const fs::path a = scratch("deg_a.csv"), b = scratch("deg_b.csv");
  REQUIRE(cli("sample --k1 2 --mu1 90 --degrees --n 5 --seed 1 --out " + a.string()).code == 0);
  REQUIRE(cli("sample --k1 2 --mu1 1.5707963267948966 --n 5 --seed 1 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("CLI mc-validate, density-grid and oracle-check") {
  const Run mc = cli("mc-validate --family sine --k1 1 --k2 1 --assoc 0.5 --n 10 --replicates 2");
  REQUIRE(mc.code == 0);
  CHECK(mc.out.rfind("quantity,analytic,estimate_mean,estimate_se", 0) == 0);
  CHECK(std::count(mc.out.begin(), mc.out.end(), '\n') == 4);

  const fs::path g = scratch("grid.csv");
  REQUIRE(cli("density-grid --family cosine --k1 1 --k2 1 --assoc -2 --resolution 16 --out " + g.string()).code == 0);
  const std::string grid = slurp(g);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 257);
  const auto manifest = nlohmann::json::parse(slurp(g.string() + ".manifest.json"));
  CHECK(manifest["settings"]["resolution"] == "16");

  for (const std::string& args : {"--family cosine --k1 2 --k2 3 --assoc 1.5",
                                  "--family sine --k1 0 --k2 1 --assoc 0.5",
                                  "--family cosine --k1 1 --k2 1 --assoc -2"}) {
    const Run o = cli("oracle-check " + args);
    CHECK(o.code == 0);
    CHECK(nlohmann::json::parse(o.out)["pass"] == true);
  }
  CHECK(cli("oracle-check --k1 60").code == 2);
}
