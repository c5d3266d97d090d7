#include "topstat/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vendor/CLI11.hpp"

#include "topstat/analytic_barcodes.hpp"
#include "topstat/barcode_io.hpp"
#include "topstat/barcode_metric.hpp"
#include "topstat/complex.hpp"
#include "topstat/distributions.hpp"
#include "topstat/estimation.hpp"
#include "topstat/geometry.hpp"
#include "topstat/mesh.hpp"
#include "topstat/persistence.hpp"
#include "topstat/rng.hpp"
#include "topstat/spacings.hpp"
#include "topstat/version.hpp"

namespace topstat {

namespace {

using nlohmann::json;

// --- output plumbing ---------------------------------------------------------

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os << text;
}

void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

json extended_to_json(const ExtendedReal& v) {
  if (v.is_finite()) return v.value();
  return v.is_pos_infinity() ? json("inf") : json("-inf");
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? json("inf") : json("-inf");
}

// --- shared flag bundles -------------------------------------------------------

struct FamilyFlags {
  std::string family;
  int p = 3;
  double kappa = 1.0;
  std::vector<double> mu;
  std::vector<double> eigs;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--family", f.family, "distribution family")
      ->required()
      ->check(CLI::IsMember({"vm", "vmf", "watson", "bingham", "matrixvm"}));
  cmd->add_option("--p", f.p, "sphere dimension p, for points on S^{p-1}");
  cmd->add_option("--kappa", f.kappa, "concentration parameter");
  cmd->add_option("--mu", f.mu,
                  "mode: angle in [-pi,pi) for vm, p components for "
                  "vmf/watson (normalized), 9 row-major rotation entries "
                  "for matrixvm")
      ->delimiter(',');
  cmd->add_option("--eigs", f.eigs,
                  "bingham concentrations k1<k2<... (axes are the "
                  "coordinate axes)")
      ->delimiter(',');
}

Eigen::VectorXd unit_from_flag(int p, const std::vector<double>& mu) {
  if (mu.empty()) return Eigen::VectorXd::Unit(p, 0);
  if (static_cast<int>(mu.size()) != p)
    throw std::invalid_argument("--mu needs exactly p components");
  Eigen::VectorXd m = Eigen::Map<const Eigen::VectorXd>(mu.data(), p);
  double norm = m.norm();
  if (norm == 0.0) throw std::invalid_argument("--mu must be nonzero");
  return m / norm;
}

DistributionSpec make_spec(const FamilyFlags& f) {
  DistributionSpec spec;
  if (f.family == "vm") {
    spec = VonMises{f.mu.empty() ? 0.0 : f.mu[0], f.kappa};
  } else if (f.family == "vmf") {
    spec = VonMisesFisher{f.p, unit_from_flag(f.p, f.mu), f.kappa};
  } else if (f.family == "watson") {
    spec = WatsonDistribution{f.p, unit_from_flag(f.p, f.mu), f.kappa};
  } else if (f.family == "bingham") {
    if (f.eigs.size() < 2)
      throw std::invalid_argument("bingham needs --eigs k1,k2,...");
    int p = static_cast<int>(f.eigs.size());
    Eigen::VectorXd k = Eigen::Map<const Eigen::VectorXd>(f.eigs.data(), p);
    spec = BinghamDistribution{k, Eigen::MatrixXd::Identity(p, p)};
  } else if (f.family == "matrixvm") {
    Eigen::Matrix3d mode = Eigen::Matrix3d::Identity();
    if (!f.mu.empty()) {
      if (f.mu.size() != 9)
        throw std::invalid_argument(
            "--mu for matrixvm needs 9 row-major entries");
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) mode(r, c) = f.mu[3 * r + c];
    }
    spec = MatrixVonMises{mode, f.kappa};
  } else {
    throw std::invalid_argument("unknown family: " + f.family);
  }
  validate(spec);
  return spec;
}

FieldSpec field_from_flag(int characteristic) {
  if (characteristic == 2) return FieldSpec::f2();
  if (characteristic == 0) return FieldSpec::rational();
  throw std::invalid_argument("--field must be 0 or 2");
}

json family_json(const FamilyFlags& f) {
  json j{{"family", f.family}};
  if (f.family == "vmf" || f.family == "watson") j["p"] = f.p;
  if (f.family == "bingham")
    j["eigs"] = f.eigs;
  else
    j["kappa"] = f.kappa;
  if (!f.mu.empty()) j["mu"] = f.mu;
  return j;
}

Barcode load_barcode_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open barcode file: " + path);
  json j = json::parse(is);
  if (j.is_object() && j.contains("barcode"))
    return barcode_from_json(j["barcode"]);
  return barcode_from_json(j);
}

// --- verb handlers -------------------------------------------------------------

struct SampleFlags {
  FamilyFlags fam;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::string out;
};

void run_sample(const SampleFlags& f) {
  PointCloud cloud = sample(make_spec(f.fam), f.n, f.seed);
  if (f.out.empty()) {
    cloud.write_csv(std::cout);
  } else {
    cloud.write_csv_file(f.out);
  }
}

struct FiltrationFlags {
  std::string in;
  int dim_max = 2;
  double r_max = std::numeric_limits<double>::quiet_NaN();
  std::string out;
};

void run_filtration(const std::string& kind, const FiltrationFlags& f) {
  PointCloud cloud = PointCloud::read_csv_file(f.in);
  ExtendedReal cap = std::isnan(f.r_max) ? ExtendedReal::infinity()
                                         : ExtendedReal(f.r_max);
  FilteredComplex complex = kind == "rips"
                                ? rips_filtration(cloud, f.dim_max, cap)
                                : cech_filtration(cloud, f.dim_max, cap);
  json simplices = json::array();
  for (const Simplex& s : complex.simplices())
    simplices.push_back({{"vertices", s.vertices}, {"value", s.value}});
  write_json(f.out, json{{"filtration", kind},
                         {"points", cloud.size()},
                         {"dim_max", f.dim_max},
                         {"r_max", extended_to_json(cap)},
                         {"simplices", std::move(simplices)}});
}

struct PersistFlags {
  std::string in;
  FamilyFlags fam;
  std::string filtration;
  int dim_max = 2;
  double r_max = std::numeric_limits<double>::quiet_NaN();
  int field = 2;
  int mesh = 0;  // 0 = default for the space
  std::string out;
  bool have_family = false;
};

void run_persist(const PersistFlags& f) {
  FieldSpec field = field_from_flag(f.field);
  if (f.in.empty() == !f.have_family)
    throw std::invalid_argument(
        "persist needs exactly one input: --in points.csv or --family ...");

  if (!f.in.empty()) {
    if (f.filtration != "rips" && f.filtration != "cech")
      throw std::invalid_argument(
          "point-cloud persistence needs --filtration rips or cech");
    PointCloud cloud = PointCloud::read_csv_file(f.in);
    ExtendedReal cap = std::isnan(f.r_max) ? ExtendedReal::infinity()
                                           : ExtendedReal(f.r_max);
    FilteredComplex complex =
        f.filtration == "rips" ? rips_filtration(cloud, f.dim_max, cap)
                               : cech_filtration(cloud, f.dim_max, cap);
    Barcode bc = persistence_barcode(complex, field);
    write_json(f.out, json{{"source", "points"},
                           {"filtration", f.filtration},
                           {"points", cloud.size()},
                           {"dim_max", f.dim_max},
                           {"field", f.field},
                           {"barcode", barcode_to_json(bc)}});
    return;
  }

  if (f.filtration != "morse" && f.filtration != "cech")
    throw std::invalid_argument(
        "density persistence needs --filtration morse or cech");
  DistributionSpec spec = make_spec(f.fam);
  Space space = space_of(spec);
  DiscretizedDensity density_mesh;
  int mesh = f.mesh;
  if (space == Space::circle) {
    if (mesh == 0) mesh = 10000;
    density_mesh = discretize_circle(
        [&](double u) { return density(spec, &u); }, mesh);
  } else if (space == Space::sphere && ambient_dim_of(spec) == 3) {
    if (mesh == 0) mesh = 5;
    density_mesh = discretize_sphere(
        [&](const Eigen::Vector3d& v) { return density(spec, v.data()); },
        mesh);
  } else {
    throw std::invalid_argument(
        "mesh persistence covers the circle and S^2 (p = 3) only");
  }
  DensityPersistence result =
      f.filtration == "morse" ? sublevel_persistence(density_mesh, field)
                              : superlevel_cech_persistence(density_mesh, field);
  json j = family_json(f.fam);
  j["source"] = "density";
  j["filtration"] = f.filtration;
  j["mesh"] = mesh;
  j["mesh_modulus"] = result.mesh_modulus;
  j["field"] = f.field;
  j["barcode"] = barcode_to_json(result.barcode);
  write_json(f.out, j);
}

struct BdistFlags {
  std::string left;
  std::string right;
  std::string out;
};

void run_bdist(const BdistFlags& f) {
  Barcode a = load_barcode_file(f.left);
  Barcode b = load_barcode_file(f.right);
  BarcodeMatching m = barcode_distance(a, b);
  json matched = json::array();
  for (auto [i, j] : m.matched) matched.push_back({i, j});
  write_json(f.out, json{{"distance", extended_to_json(m.cost)},
                         {"matched", std::move(matched)},
                         {"unmatched_left", m.unmatched_left},
                         {"unmatched_right", m.unmatched_right}});
}

struct AnalyticFlags {
  FamilyFlags fam;
  std::string filtration;
  int field = 2;
  std::string out;
};

void run_analytic(const AnalyticFlags& f) {
  DistributionSpec spec = make_spec(f.fam);
  json j = family_json(f.fam);
  j["filtration"] = f.filtration;
  if (f.filtration == "morse") {
    j["field"] = f.field;
    j["barcode"] = barcode_to_json(morse_barcode(spec, field_from_flag(f.field)));
  } else if (f.filtration == "cech") {
    j["barcode"] = barcode_to_json(cech_barcode(spec));
    j["component_intervals"] =
        barcode_to_json(Barcode(cech_component_intervals(spec)));
  } else {
    throw std::invalid_argument(
        "closed-form barcodes exist for --filtration morse or cech");
  }
  write_json(f.out, j);
}

struct Betti0Flags {
  FamilyFlags fam;
  int grid = 256;
  std::string out;
};

void run_betti0(const Betti0Flags& f) {
  BettiZeroCurve curve = betti0_curve(make_spec(f.fam), f.grid);
  std::ostringstream os;
  write_betti0_curve_csv(os, curve);
  write_text(f.out, os.str());
}

struct SpacingsFlags {
  std::size_t n = 10;
  int grid = 0;
  std::uint64_t seed = 0;
  bool have_grid = false;
  bool have_seed = false;
  std::string out;
};

void run_spacings(const SpacingsFlags& f) {
  if (f.have_grid && f.have_seed)
    throw std::invalid_argument("spacings: choose one of --grid, --seed");
  char buf[96];
  if (f.have_seed) {
    UniformCircleReport rep = uniform_circle_persistence_check(f.n, f.seed);
    write_json(f.out, json{{"n", rep.n},
                           {"seed", rep.seed},
                           {"deaths_match_gaps", rep.deaths_match_gaps},
                           {"cycle_tested", rep.cycle_tested},
                           {"cycle_ok", rep.cycle_ok},
                           {"largest_gap", rep.largest_gap},
                           {"passed", rep.passed()}});
    return;
  }
  std::ostringstream os;
  if (f.have_grid) {
    // Scaled component-count curve against its limit.
    if (f.grid < 2) throw std::invalid_argument("--grid must be at least 2");
    os << "x,scaled_betti0,limit\n";
    for (int i = 1; i < f.grid; ++i) {
      double x = static_cast<double>(i) / f.grid;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", x,
                    empirical_betti0_function(f.n, x), -std::log1p(-x));
      os << buf << "\n";
    }
  } else {
    os << "i,expected_spacing\n";
    for (std::size_t i = 1; i <= f.n; ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g", i, expected_spacing(f.n, i));
      os << buf << "\n";
    }
  }
  write_text(f.out, os.str());
}

struct EstimateFlags {
  std::string family = "vmf";
  std::string in;
  std::string out;
};

json estimated_barcodes_json(int p, double kappa_hat) {
  json j;
  j["morse_component"] = barcode_to_json(
      estimated_vmf_barcode(p, kappa_hat, BarcodeFamily::morse_component));
  j["morse_top"] = barcode_to_json(
      estimated_vmf_barcode(p, kappa_hat, BarcodeFamily::morse_top));
  j["cech_top"] = barcode_to_json(
      estimated_vmf_barcode(p, kappa_hat, BarcodeFamily::cech_top));
  return j;
}

void run_estimate(const EstimateFlags& f) {
  PointCloud cloud = PointCloud::read_csv_file(f.in);
  if (f.family == "vm" || f.family == "vmf") {
    VmfEstimate est = mle_vmf(cloud);
    json j{{"family", "vmf"},
           {"p", est.p},
           {"n", cloud.size()},
           {"mu_hat", std::vector<double>(est.mu_hat.data(),
                                          est.mu_hat.data() + est.p)},
           {"kappa_hat", finite_or_string(est.kappa_hat)},
           {"resultant_length", est.resultant_length},
           {"degenerate", est.degenerate},
           {"asymptotic_variance", est.asymptotic_variance}};
    if (!est.degenerate)
      j["barcodes"] = estimated_barcodes_json(est.p, est.kappa_hat);
    write_json(f.out, j);
    return;
  }
  if (f.family == "watson") {
    WatsonEstimate est = mle_watson(cloud);
    write_json(f.out,
               json{{"family", "watson"},
                    {"p", est.p},
                    {"n", cloud.size()},
                    {"mu_hat", std::vector<double>(est.mu_hat.data(),
                                                   est.mu_hat.data() + est.p)},
                    {"kappa_hat", est.kappa_hat},
                    {"scatter_eigenvalue", est.scatter_eigenvalue},
                    {"asymptotic_variance", est.asymptotic_variance}});
    return;
  }
  throw std::invalid_argument(
      "estimation covers --family vm, vmf, or watson");
}

json report_to_json(const ConvergenceReport& rep, const std::string& name,
                    const json& flags) {
  json series = json::array();
  for (const Series& s : rep.series) {
    json means = json::array(), ses = json::array();
    for (double m : s.mean) means.push_back(finite_or_string(m));
    for (double e : s.se) ses.push_back(finite_or_string(e));
    series.push_back({{"name", s.name},
                      {"mean", std::move(means)},
                      {"se", std::move(ses)},
                      {"slope", s.slope},
                      {"intercept", s.intercept},
                      {"raw", s.raw}});
  }
  return json{{"experiment", name},
              {"version", kVersion},
              {"seed", rep.seed},
              {"flags", flags},
              {"p", rep.p},
              {"kappa", rep.kappa},
              {"n_values", rep.n_values},
              {"trials", rep.trials},
              {"degenerate_trials", rep.degenerate_trials},
              {"series", std::move(series)}};
}

struct ExperimentFlags {
  std::string family = "vmf";
  int p = 3;
  double kappa = 2.0;
  std::vector<std::size_t> n_values;
  int trials = 200;
  std::uint64_t seed = 0;
  std::string out;
};

void run_experiment_convergence(const ExperimentFlags& f) {
  if (f.family != "vmf")
    throw std::invalid_argument(
        "the convergence experiment covers --family vmf only");
  ConvergenceReport rep =
      convergence_experiment(f.p, f.kappa, f.n_values, f.trials, f.seed);
  write_json(f.out, report_to_json(rep, "convergence",
                                   json{{"family", f.family},
                                        {"p", f.p},
                                        {"kappa", f.kappa},
                                        {"n", f.n_values},
                                        {"trials", f.trials},
                                        {"seed", f.seed}}));
}

void run_experiment_betti0(const ExperimentFlags& f) {
  ConvergenceReport rep =
      betti0_sup_error_experiment(f.kappa, f.n_values, f.trials, f.seed);
  write_json(f.out, report_to_json(rep, "betti0_sup_error",
                                   json{{"family", "vmf"},
                                        {"p", 3},
                                        {"kappa", f.kappa},
                                        {"n", f.n_values},
                                        {"trials", f.trials},
                                        {"seed", f.seed}}));
}

// --- property battery ----------------------------------------------------------

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

CheckRow check_spacing_sums() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 30; ++n) {
    double total = 0.0;
    for (std::size_t i = 1; i <= n; ++i) total += expected_spacing(n, i);
    worst = std::max(worst, std::fabs(total - 1.0));
    double exact = static_cast<double>(n) * std::pow(0.5, double(n - 1));
    worst = std::max(worst, std::fabs(whitworth_tail(n, 0.5) - exact));
  }
  return {"expected spacings sum to one; tail identity at 1/2", worst <= 1e-12,
          fmt("max deviation %.2e", worst)};
}

CheckRow check_circle_persistence() {
  int passed = 0;
  const int runs = 10;
  for (int s = 1; s <= runs; ++s)
    passed += uniform_circle_persistence_check(20, s).passed();
  return {"circle filtration deaths equal gaps (10 seeded runs)",
          passed == runs, std::to_string(passed) + "/" + std::to_string(runs)};
}

Barcode random_small_barcode(Rng& rng) {
  std::vector<PersistenceInterval> iv;
  int count = 1 + static_cast<int>(rng.next_u64() % 4);
  for (int i = 0; i < count; ++i) {
    int dim = static_cast<int>(rng.next_u64() % 2);
    double birth = 2.0 * rng.uniform();
    if (rng.uniform() < 0.3) {
      iv.emplace_back(dim, ExtendedReal(birth), ExtendedReal::infinity());
    } else {
      iv.emplace_back(dim, ExtendedReal(birth),
                      ExtendedReal(birth + 1.5 * rng.uniform_pos()));
    }
  }
  return Barcode(std::move(iv));
}

CheckRow check_metric_oracle() {
  Rng rng(20240807);
  int agree = 0;
  const int pairs = 50;
  for (int t = 0; t < pairs; ++t) {
    Barcode a = random_small_barcode(rng);
    Barcode b = random_small_barcode(rng);
    ExtendedReal fast = barcode_distance(a, b).cost;
    ExtendedReal brute = brute_force_barcode_distance(a, b);
    bool same = fast.is_finite() == brute.is_finite() &&
                (!fast.is_finite() || fast.value() == brute.value());
    agree += same;
  }
  return {"matching distance equals brute-force enumeration", agree == pairs,
          std::to_string(agree) + "/" + std::to_string(pairs)};
}

CheckRow check_square_barcode() {
  PointCloud square =
      PointCloud::circle_from_positions({0.0, 0.25, 0.5, 0.75});
  Barcode got =
      persistence_barcode(rips_filtration(square, 2), FieldSpec::f2());
  // Dimension 2 is left alone: truncating at dim_max = 2 leaves a hollow
  // tetrahedron once every triangle is present, an artifact of the cap.
  Barcode want(std::vector<PersistenceInterval>{
      {0, ExtendedReal(0.0), ExtendedReal(0.25)},
      {0, ExtendedReal(0.0), ExtendedReal(0.25)},
      {0, ExtendedReal(0.0), ExtendedReal(0.25)},
      {0, ExtendedReal(0.0), ExtendedReal::infinity()},
      {1, ExtendedReal(0.25), ExtendedReal(0.5)},
  });
  bool ok = got.in_dimension(0) == want.in_dimension(0) &&
            got.in_dimension(1) == want.in_dimension(1);
  return {"four equally spaced points: known barcode", ok,
          ok ? "exact match" : "mismatch"};
}

CheckRow check_mesh_vs_closed_form() {
  DistributionSpec spec = VonMises{0.0, 1.0};
  DiscretizedDensity mesh = discretize_circle(
      [&](double u) { return density(spec, &u); }, 2000);
  DensityPersistence mesh_result = sublevel_persistence(mesh, FieldSpec::f2());
  Barcode exact = morse_barcode(spec, FieldSpec::f2());
  double worst = 0.0;
  for (int dim : {0, 1}) {
    auto got = mesh_result.barcode.in_dimension(dim);
    auto want = exact.in_dimension(dim);
    if (got.size() != want.size())
      return {"circle mesh barcode within mesh modulus", false,
              "interval count mismatch"};
    for (std::size_t i = 0; i < got.size(); ++i)
      worst = std::max(worst, std::fabs(got[i].birth().value() -
                                        want[i].birth().value()));
  }
  bool ok = worst <= mesh_result.mesh_modulus;
  return {"circle mesh barcode within mesh modulus", ok,
          fmt("worst endpoint error %.2e", worst) +
              fmt(", modulus %.2e", mesh_result.mesh_modulus)};
}

CheckRow check_duality() {
  Eigen::VectorXd k2(2), k3(3);
  k2 << 0.8, 2.2;
  k3 << 0.5, 1.7, 3.0;
  std::vector<DistributionSpec> specs = {
      WatsonDistribution{2, Eigen::VectorXd::Unit(2, 0), 1.5},
      WatsonDistribution{3, Eigen::VectorXd::Unit(3, 0), 2.0},
      BinghamDistribution{k2, Eigen::MatrixXd::Identity(2, 2)},
      BinghamDistribution{k3, Eigen::MatrixXd::Identity(3, 3)},
  };
  int passed = 0;
  for (const auto& s : specs) passed += duality_check(s);
  return {"sublevel/superlevel barcode duality (4 cases)",
          passed == static_cast<int>(specs.size()),
          std::to_string(passed) + "/" + std::to_string(specs.size())};
}

CheckRow check_trace_identity() {
  Rng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    auto draw = [&] {
      Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
      double norm = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
      q.w /= norm;
      q.x /= norm;
      q.y /= norm;
      q.z /= norm;
      return q;
    };
    Quaternion a = draw(), b = draw();
    double dot = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    double tr = (cayley_klein(a).transpose() * cayley_klein(b)).trace();
    worst = std::max(worst, std::fabs(tr - (4.0 * dot * dot - 1.0)));
  }
  return {"rotation trace identity on 200 quaternion pairs", worst <= 1e-12,
          fmt("max deviation %.2e", worst)};
}

CheckRow check_estimator_identities() {
  double worst = 0.0;
  for (double k : {0.5, 1.0, 2.0, 5.0})
    worst = std::max(
        worst, std::fabs(a_p(3, k) - (1.0 / std::tanh(k) - 1.0 / k)));
  bool a3 = worst <= 1e-12;
  double worst_rt = 0.0;
  for (int p : {2, 3, 5})
    for (double k : {0.1, 1.0, 10.0, 100.0})
      worst_rt =
          std::max(worst_rt, std::fabs(invert_a_p(p, a_p(p, k)) - k) / k);
  bool rt = worst_rt <= 1e-10;
  return {"resultant identities and inversion roundtrip", a3 && rt,
          fmt("identity %.2e", worst) + fmt(", roundtrip %.2e", worst_rt)};
}

CheckRow check_betti0_consistency() {
  DistributionSpec spec = VonMisesFisher{3, Eigen::VectorXd::Unit(3, 0), 1.0};
  SuperlevelMass mass(spec);
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    double x = i / 10.0;
    worst = std::max(worst, std::fabs(mass.invert(x) -
                                      vmf_sphere_betti0_closed_form(1.0, x)));
  }
  double at_half = vmf_sphere_betti0_closed_form(1.0, 0.5);
  bool tanh_ok = std::fabs(at_half - std::tanh(1.0)) <= 1e-12;
  return {"component-count curve: closed form vs mass inversion",
          worst <= 1e-6 && tanh_ok, fmt("sup deviation %.2e", worst)};
}

int run_check() {
  std::vector<CheckRow> rows = {
      check_spacing_sums(),       check_circle_persistence(),
      check_metric_oracle(),      check_square_barcode(),
      check_mesh_vs_closed_form(),check_duality(),
      check_trace_identity(),     check_estimator_identities(),
      check_betti0_consistency(),
  };
  int failures = 0;
  std::printf("%-55s %-6s %s\n", "check", "status", "detail");
  std::printf("%-55s %-6s %s\n", std::string(55, '-').c_str(), "------",
              "------");
  for (const CheckRow& r : rows) {
    failures += !r.pass;
    std::printf("%-55s %-6s %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL",
                r.detail.c_str());
  }
  std::printf("\n%d/%zu checks passed\n", static_cast<int>(rows.size()) - failures,
              rows.size());
  return failures == 0 ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Topological summaries of directional distributions"};
  app.name("topstat");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  int exit_code = 0;

  SampleFlags sample_flags;
  auto* cmd_sample = app.add_subcommand(
      "sample", "draw points from a distribution, point-cloud CSV out");
  add_family_flags(cmd_sample, sample_flags.fam);
  cmd_sample->add_option("--n", sample_flags.n, "number of points")->required();
  cmd_sample->add_option("--seed", sample_flags.seed, "RNG seed");
  cmd_sample->add_option("-o,--out", sample_flags.out, "output file");
  cmd_sample->callback([&] { run_sample(sample_flags); });

  FiltrationFlags rips_flags, cech_flags;
  auto add_filtration_cmd = [&](const std::string& name, FiltrationFlags* flags,
                                const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--in", flags->in, "point-cloud CSV")->required();
    cmd->add_option("--dimmax", flags->dim_max, "top simplex dimension");
    cmd->add_option("--rmax", flags->r_max, "radius cap");
    cmd->add_option("-o,--out", flags->out, "output file");
    cmd->callback([name, flags] { run_filtration(name, *flags); });
  };
  add_filtration_cmd(
      "rips", &rips_flags,
      "Vietoris-Rips filtration of a point cloud, simplex JSON out");
  add_filtration_cmd(
      "cech", &cech_flags,
      "ball-cover filtration of a point cloud, simplex JSON out");

  PersistFlags persist_flags;
  auto* cmd_persist = app.add_subcommand(
      "persist", "persistence barcode of a point cloud or a density mesh");
  cmd_persist->add_option("--in", persist_flags.in, "point-cloud CSV");
  auto* persist_family =
      cmd_persist->add_option("--family", persist_flags.fam.family,
                              "density family (mesh mode)")
          ->check(CLI::IsMember({"vm", "vmf", "watson", "bingham", "matrixvm"}));
  cmd_persist->add_option("--p", persist_flags.fam.p, "sphere dimension p");
  cmd_persist->add_option("--kappa", persist_flags.fam.kappa, "concentration");
  cmd_persist->add_option("--mu", persist_flags.fam.mu, "mode")->delimiter(',');
  cmd_persist->add_option("--eigs", persist_flags.fam.eigs,
                          "bingham concentrations")
      ->delimiter(',');
  cmd_persist
      ->add_option("--filtration", persist_flags.filtration,
                   "rips|cech for points, morse|cech for densities")
      ->required()
      ->check(CLI::IsMember({"rips", "cech", "morse"}));
  cmd_persist->add_option("--dimmax", persist_flags.dim_max,
                          "top simplex dimension (points)");
  cmd_persist->add_option("--rmax", persist_flags.r_max, "radius cap (points)");
  cmd_persist->add_option("--field", persist_flags.field,
                          "coefficient field characteristic (0 or 2)");
  cmd_persist->add_option("--mesh", persist_flags.mesh,
                          "circle vertex count or icosphere level");
  cmd_persist->add_option("-o,--out", persist_flags.out, "output file");
  cmd_persist->callback([&, persist_family] {
    persist_flags.have_family = persist_family->count() > 0;
    run_persist(persist_flags);
  });

  BdistFlags bdist_flags;
  auto* cmd_bdist = app.add_subcommand(
      "bdist", "matching distance between two barcode files");
  cmd_bdist->add_option("--left", bdist_flags.left, "first barcode JSON")
      ->required();
  cmd_bdist->add_option("--right", bdist_flags.right, "second barcode JSON")
      ->required();
  cmd_bdist->add_option("-o,--out", bdist_flags.out, "output file");
  cmd_bdist->callback([&] { run_bdist(bdist_flags); });

  AnalyticFlags analytic_flags;
  auto* cmd_analytic = app.add_subcommand(
      "analytic", "closed-form barcode of a density, JSON out");
  add_family_flags(cmd_analytic, analytic_flags.fam);
  cmd_analytic
      ->add_option("--filtration", analytic_flags.filtration, "morse|cech")
      ->required()
      ->check(CLI::IsMember({"morse", "cech"}));
  cmd_analytic->add_option("--field", analytic_flags.field,
                           "coefficient field characteristic (0 or 2)");
  cmd_analytic->add_option("-o,--out", analytic_flags.out, "output file");
  cmd_analytic->callback([&] { run_analytic(analytic_flags); });

  Betti0Flags betti0_flags;
  auto* cmd_betti0 = app.add_subcommand(
      "betti0", "component-count curve of a density, CSV out");
  add_family_flags(cmd_betti0, betti0_flags.fam);
  cmd_betti0->add_option("--grid", betti0_flags.grid, "grid resolution");
  cmd_betti0->add_option("-o,--out", betti0_flags.out, "output file");
  cmd_betti0->callback([&] { run_betti0(betti0_flags); });

  SpacingsFlags spacings_flags;
  auto* cmd_spacings = app.add_subcommand(
      "spacings",
      "uniform circle gap theory: expectation table, limit curve (--grid), "
      "or a seeded persistence check (--seed)");
  cmd_spacings->add_option("--n", spacings_flags.n, "number of points")
      ->required();
  auto* spacings_grid =
      cmd_spacings->add_option("--grid", spacings_flags.grid,
                               "emit the scaled component curve on this grid");
  auto* spacings_seed = cmd_spacings->add_option(
      "--seed", spacings_flags.seed, "run one seeded persistence check");
  cmd_spacings->add_option("-o,--out", spacings_flags.out, "output file");
  cmd_spacings->callback([&, spacings_grid, spacings_seed] {
    spacings_flags.have_grid = spacings_grid->count() > 0;
    spacings_flags.have_seed = spacings_seed->count() > 0;
    run_spacings(spacings_flags);
  });

  EstimateFlags estimate_flags;
  auto* cmd_estimate = app.add_subcommand(
      "estimate", "maximum likelihood fit from a point cloud, JSON out");
  cmd_estimate
      ->add_option("--family", estimate_flags.family, "vm, vmf, or watson")
      ->required()
      ->check(CLI::IsMember({"vm", "vmf", "watson"}));
  cmd_estimate->add_option("--in", estimate_flags.in, "point-cloud CSV")
      ->required();
  cmd_estimate->add_option("-o,--out", estimate_flags.out, "output file");
  cmd_estimate->callback([&] { run_estimate(estimate_flags); });

  auto* cmd_experiment = app.add_subcommand(
      "experiment", "Monte Carlo studies, JSON report out");
  cmd_experiment->require_subcommand(1);
  ExperimentFlags conv_flags, b0_flags;
  auto* cmd_conv = cmd_experiment->add_subcommand(
      "convergence", "plug-in barcode distance vs sample size");
  cmd_conv->add_option("--family", conv_flags.family, "family (vmf)");
  cmd_conv->add_option("--p", conv_flags.p, "sphere dimension p");
  cmd_conv->add_option("--kappa", conv_flags.kappa, "true concentration");
  cmd_conv->add_option("--n", conv_flags.n_values, "sample sizes")
      ->required()
      ->delimiter(',');
  cmd_conv->add_option("--trials", conv_flags.trials, "trials per size");
  cmd_conv->add_option("--seed", conv_flags.seed, "RNG seed");
  cmd_conv->add_option("-o,--out", conv_flags.out, "output file");
  cmd_conv->callback([&] { run_experiment_convergence(conv_flags); });

  auto* cmd_b0exp = cmd_experiment->add_subcommand(
      "betti0", "sup error of the fitted component curve on S^2");
  cmd_b0exp->add_option("--kappa", b0_flags.kappa, "true concentration");
  cmd_b0exp->add_option("--n", b0_flags.n_values, "sample sizes")
      ->required()
      ->delimiter(',');
  cmd_b0exp->add_option("--trials", b0_flags.trials, "trials per size");
  cmd_b0exp->add_option("--seed", b0_flags.seed, "RNG seed");
  cmd_b0exp->add_option("-o,--out", b0_flags.out, "output file");
  cmd_b0exp->callback([&] { run_experiment_betti0(b0_flags); });

  auto* cmd_check = app.add_subcommand(
      "check", "run the property battery and print a summary table");
  cmd_check->callback([&] { exit_code = run_check(); });

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("topstat");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace topstat
