#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace polyiso::cli;

namespace {

const std::string kData = POLYISO_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("polyiso_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUnknownCommand);
  CHECK(run({"frobnicate"}).code == kExitUnknownCommand);
  CHECK(run({"gallery", "nope"}).code == kExitUnknownCommand);
  CHECK(run({"analyze", "--help"}).code == kExitOk);
  const auto dir = scratch("codes").string();
  CHECK(run({"slice", "--n", "9", "--N", "2", "--out", dir}).code == kExitValidation);
  CHECK(run({"slice", "--n", "3", "--out", dir}).code == kExitValidation);
  CHECK(run({"analyze", "--polytope", kData + "/missing.json", "--out", dir}).code == kExitValidation);
  const auto big_eps = run({"smooth", "--polytope", kData + "/square.json", "--eps", "5", "--out", dir});
  CHECK(big_eps.code == kExitNumerical);
  // Diagnostics are a single line.
  CHECK(std::count(big_eps.err.begin(), big_eps.err.end(), '\n') == 1);
  CHECK(run({"profile", "--model", "sphere", "--n", "2", "--vmin", "1", "--vmax", "20", "--out", dir}).code ==
        kExitValidation);
}

TEST_CASE("analyze the cube") {
  const auto dir = scratch("analyze");
  REQUIRE(run({"analyze", "--polytope", kData + "/cube.json", "--out", dir.string()}).code == kExitOk);
  const std::string csv = slurp(dir / "analyze.csv");
  CHECK(csv.rfind("# manifest command=analyze", 0) == 0);
  const auto rows = data_rows(csv);
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) {
    std::istringstream in(row);
    std::string index, omega;
    std::getline(in, index, ',');
    std::getline(in, omega, ',');
    CHECK(std::stod(omega) == doctest::Approx(3 * std::numbers::pi / 2).epsilon(1e-13));
  }
  CHECK(csv.find("optimal_vertex=0") != std::string::npos);
}

TEST_CASE("slice n = 3, N = 2") {
  const auto dir = scratch("slice");
  const auto r = run({"slice", "--n", "3", "--N", "2", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("classes <= 3: PASS") != std::string::npos);
  const std::string csv = slurp(dir / "slice.csv");
  CHECK(data_rows(csv).size() == 5);
  CHECK(csv.find("classes=2") != std::string::npos);
  CHECK(csv.find("classes <= 3: PASS") != std::string::npos);
}

TEST_CASE("solve writes a region and a bound check") {
  const auto dir = scratch("solve");
  const auto r = run({"solve", "--polytope", kData + "/cube.json", "--volume", "0.05", "--level", "4", "--seed", "7",
                      "--iters", "50000", "--restarts", "4", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("bound check") != std::string::npos);
  CHECK(fs::exists(dir / "solve_region.csv"));
  const std::string summary = slurp(dir / "solve.csv");
  CHECK(summary.find("seed=7") != std::string::npos);
  CHECK(summary.find("continuum_bound,") != std::string::npos);
  CHECK(summary.find("kappa,") != std::string::npos);
}

TEST_CASE("manifest digest covers the run description") {
  const auto dir = scratch("manifest");
  REQUIRE(run({"profile", "--model", "cone", "--n", "2", "--omega", "4.71238898038469", "--out", dir.string()}).code ==
          kExitOk);
  const std::string csv = slurp(dir / "profile.csv");
  const auto first_break = csv.find('\n');
  const std::string header = csv.substr(0, first_break);
  const auto at = header.find("digest=");
  REQUIRE(at != std::string::npos);
  const std::string prefix = "# manifest ";
  REQUIRE(header.rfind(prefix, 0) == 0);
  CHECK(header.substr(at + 7) == sha256_hex(header.substr(prefix.size(), at - 1 - prefix.size())));
  CHECK(header.find("version=" + std::string(kVersion)) != std::string::npos);
  CHECK(header.find("input_sha256=none") != std::string::npos);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> commands{
      {"analyze", "--polytope", kData + "/square_pyramid.json"},
      {"slice", "--n", "3", "--N", "3"},
      {"smooth", "--polytope", kData + "/square.json", "--eps", "0.1", "--dirs", "32", "--trials", "100"},
      {"profile", "--model", "sphere", "--n", "3", "--vmin", "0.01", "--vmax", "10", "--svg"},
      {"solve", "--polytope", kData + "/cube.json", "--volume", "0.1", "--level", "3", "--iters", "20000",
       "--restarts", "2", "--seed", "3"},
      {"gallery", "double-pyramid"},
      {"gallery", "spiked-cone"},
      {"gallery", "cube-competitors", "--svg"},
  };
  for (const auto& base : commands) {
    const auto dir = scratch("determinism");
    auto args = base;
    args.insert(args.end(), {"--out", dir.string()});
    std::map<std::string, std::string> first;
    REQUIRE(run(args).code == kExitOk);
    for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename().string()] = slurp(e.path());
    CHECK_FALSE(first.empty());
    REQUIRE(run(args).code == kExitOk);
    for (const auto& [name, bytes] : first) {
      INFO(base[0] << " " << name);
      CHECK(slurp(dir / name) == bytes);
    }
  }
}
