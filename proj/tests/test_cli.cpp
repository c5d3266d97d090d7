#include "topstat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "topstat/analytic_barcodes.hpp"
#include "topstat/barcode_io.hpp"
#include "topstat/distributions.hpp"
#include "topstat/geometry.hpp"
#include "vendor/doctest.h"

using namespace topstat;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

// Every test works inside one scratch directory so paths never collide with
// the host system and cleanup is a single remove_all in the last test case.
fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "topstat_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string path_of(const std::string& name) {
  return (scratch() / name).string();
}

json read_json_file(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  return json::parse(is);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("version and argument errors") {
  CHECK(run_cli({"--version"}) == 0);
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"frobnicate"}) == 1);
  CHECK(run_cli({"sample", "--family", "nosuch", "--n", "5"}) == 1);
}

TEST_CASE("sample writes a readable point cloud") {
  std::string out = path_of("sample.csv");
  CHECK(run_cli({"sample", "--family", "vmf", "--p", "3", "--kappa", "2",
                 "--n", "40", "--seed", "7", "-o", out}) == 0);
  PointCloud cloud = PointCloud::read_csv_file(out);
  CHECK(cloud.size() == 40);
  CHECK(cloud.space() == Space::sphere);
  CHECK(cloud.ambient_dim() == 3);
}

TEST_CASE("invalid parameters surface as usage errors") {
  CHECK(run_cli({"sample", "--family", "vmf", "--p", "3", "--kappa", "-1",
                 "--n", "5"}) == 1);
  CHECK(run_cli({"estimate", "--family", "vmf", "--in",
                 path_of("does_not_exist.csv")}) == 1);
}

TEST_CASE("point-cloud persistence round-trips through the CLI") {
  std::string csv = path_of("square.csv");
  PointCloud::circle_from_positions({0.0, 0.25, 0.5, 0.75})
      .write_csv_file(csv);
  std::string out = path_of("square_rips.json");
  CHECK(run_cli({"persist", "--in", csv, "--filtration", "rips", "--dimmax",
                 "2", "-o", out}) == 0);
  json j = read_json_file(out);
  CHECK(j["source"] == "points");
  Barcode bc = barcode_from_json(j["barcode"]);
  auto dim0 = bc.in_dimension(0);
  REQUIRE(dim0.size() == 4);
  CHECK(dim0[2].death().value() == 0.25);
  CHECK(dim0[3].death().is_pos_infinity());
  auto dim1 = bc.in_dimension(1);
  REQUIRE(dim1.size() == 1);
  CHECK(dim1[0].birth().value() == 0.25);
  CHECK(dim1[0].death().value() == 0.5);

  // Passing both a file and a family is ambiguous.
  CHECK(run_cli({"persist", "--in", csv, "--family", "vm", "--filtration",
                 "rips", "-o", out}) == 1);
  CHECK(run_cli({"persist", "--in", csv, "--filtration", "morse", "-o",
                 out}) == 1);
}

TEST_CASE("density persistence tracks the closed forms") {
  std::string out = path_of("vm_morse.json");
  CHECK(run_cli({"persist", "--family", "vm", "--kappa", "1", "--filtration",
                 "morse", "--mesh", "2000", "-o", out}) == 0);
  json j = read_json_file(out);
  double modulus = j["mesh_modulus"].get<double>();
  CHECK(modulus > 0.0);
  CHECK(modulus < 0.01);
  Barcode got = barcode_from_json(j["barcode"]);
  Barcode want = morse_barcode(DistributionSpec(VonMises{0.0, 1.0}),
                               FieldSpec::f2());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got.intervals()[i].dim() == want.intervals()[i].dim());
    CHECK(std::abs(got.intervals()[i].birth().value() -
                   want.intervals()[i].birth().value()) <= modulus);
  }
}

TEST_CASE("closed-form barcodes through the CLI") {
  std::string out = path_of("vm_cech.json");
  CHECK(run_cli({"analytic", "--family", "vm", "--kappa", "1.5",
                 "--filtration", "cech", "-o", out}) == 0);
  json j = read_json_file(out);
  DistributionSpec spec = VonMises{0.0, 1.5};
  CHECK(barcode_from_json(j["barcode"]).intervals() ==
        cech_barcode(spec).intervals());
  CHECK(barcode_from_json(j["component_intervals"]).intervals() ==
        Barcode(cech_component_intervals(spec)).intervals());
  CHECK(run_cli({"analytic", "--family", "vm", "--kappa", "1.5",
                 "--filtration", "rips", "-o", out}) == 1);
}

TEST_CASE("component-count curves as CSV") {
  std::string out = path_of("betti0.csv");
  CHECK(run_cli({"betti0", "--family", "vmf", "--p", "3", "--kappa", "1",
                 "--grid", "8", "-o", out}) == 0);
  auto lines = read_lines(out);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "x,beta0");
  double x = 0.0, beta = 0.0;
  REQUIRE(std::sscanf(lines[4].c_str(), "%lf,%lf", &x, &beta) == 2);
  CHECK(x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta == doctest::Approx(std::tanh(1.0)).epsilon(1e-8));
}

TEST_CASE("barcode distance between files") {
  std::string left = path_of("left.json"), right = path_of("right.json");
  write_barcode_json(left, Barcode(std::vector<PersistenceInterval>{
                               {0, ExtendedReal(0.0), ExtendedReal(1.0)}}));
  write_barcode_json(right, Barcode(std::vector<PersistenceInterval>{
                                {0, ExtendedReal(0.0), ExtendedReal(2.0)}}));
  std::string out = path_of("bdist.json");
  CHECK(run_cli({"bdist", "--left", left, "--right", right, "-o", out}) == 0);
  json j = read_json_file(out);
  CHECK(j["distance"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j["matched"].size() == 1);
}

TEST_CASE("spacings tables, limit curve, and seeded checks") {
  std::string out = path_of("spacings.csv");
  CHECK(run_cli({"spacings", "--n", "4", "-o", out}) == 0);
  auto table = read_lines(out);
  REQUIRE(table.size() == 5);
  CHECK(table[0] == "i,expected_spacing");
  CHECK(table[1].substr(0, 2) == "1,");

  CHECK(run_cli({"spacings", "--n", "100", "--grid", "8", "-o", out}) == 0);
  auto curve = read_lines(out);
  REQUIRE(curve.size() == 8);
  CHECK(curve[0] == "x,scaled_betti0,limit");

  std::string rep = path_of("spacings_check.json");
  CHECK(run_cli({"spacings", "--n", "20", "--seed", "12345", "-o", rep}) == 0);
  json j = read_json_file(rep);
  CHECK(j["n"] == 20);
  CHECK(j["deaths_match_gaps"] == true);
  CHECK(j["passed"] == true);

  CHECK(run_cli({"spacings", "--n", "20", "--grid", "8", "--seed", "1", "-o",
                 out}) == 1);
}

TEST_CASE("estimation pipeline from sampled CSV") {
  std::string csv = path_of("fit_input.csv");
  CHECK(run_cli({"sample", "--family", "vmf", "--p", "3", "--kappa", "2",
                 "--n", "4000", "--seed", "99", "-o", csv}) == 0);
  std::string out = path_of("fit.json");
  CHECK(run_cli({"estimate", "--family", "vmf", "--in", csv, "-o", out}) == 0);
  json j = read_json_file(out);
  CHECK(j["family"] == "vmf");
  CHECK(j["p"] == 3);
  CHECK(j["degenerate"] == false);
  CHECK(j["kappa_hat"].get<double>() == doctest::Approx(2.0).epsilon(0.15));
  REQUIRE(j.contains("barcodes"));
  CHECK(j["barcodes"].contains("morse_component"));
  CHECK(j["barcodes"].contains("morse_top"));
  CHECK(j["barcodes"].contains("cech_top"));

  // A tied scatter matrix has no well-defined axis: numerical failure, not
  // a usage error.
  std::string tied = path_of("tied.csv");
  PointCloud::on_sphere(3, {1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0})
      .write_csv_file(tied);
  CHECK(run_cli({"estimate", "--family", "watson", "--in", tied}) == 2);
}

TEST_CASE("convergence experiment JSON shape") {
  std::string out = path_of("conv.json");
  CHECK(run_cli({"experiment", "convergence", "--n", "30,60", "--trials", "3",
                 "--seed", "2", "-o", out}) == 0);
  json j = read_json_file(out);
  CHECK(j["experiment"] == "convergence");
  CHECK(j["n_values"] == json::array({30, 60}));
  REQUIRE(j["series"].size() == 4);
  CHECK(j["series"][0]["name"] == "morse_component");
  CHECK(j["series"][3]["name"] == "kappa_sq_error");
  for (const auto& s : j["series"]) {
    CHECK(s["mean"].size() == 2);
    CHECK(s["raw"].size() == 2);
  }
}

TEST_CASE("internal consistency battery") {
  CHECK(run_cli({"check"}) == 0);
  std::error_code ec;
  fs::remove_all(scratch(), ec);
}
