#include "topstat/barcode_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace topstat {

namespace {

nlohmann::json endpoint_to_json(ExtendedReal v) {
  if (v.is_pos_infinity()) return "inf";
  if (v.is_neg_infinity()) return "-inf";
  return v.value();
}

ExtendedReal endpoint_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_extended_real(j.get<std::string>());
  if (j.is_number()) return ExtendedReal(j.get<double>());
  throw std::invalid_argument("barcode endpoint must be a number or inf/-inf");
}

}  // namespace

nlohmann::json barcode_to_json(const Barcode& bc) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& j : bc.intervals()) {
    arr.push_back({{"dim", j.dim()},
                   {"birth", endpoint_to_json(j.birth())},
                   {"death", endpoint_to_json(j.death())},
                   {"birth_closed", j.birth_closed()},
                   {"death_closed", j.death_closed()}});
  }
  return arr;
}

Barcode barcode_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("barcode JSON must be an array");
  std::vector<PersistenceInterval> ivs;
  ivs.reserve(j.size());
  for (const auto& e : j) {
    PersistenceInterval iv(e.at("dim").get<int>(),
                           endpoint_from_json(e.at("birth")),
                           endpoint_from_json(e.at("death")));
    if (e.contains("birth_closed") || e.contains("death_closed")) {
      iv = PersistenceInterval(iv.dim(), iv.birth(), iv.death(),
                               e.value("birth_closed", iv.birth_closed()),
                               e.value("death_closed", iv.death_closed()));
    }
    ivs.push_back(iv);
  }
  return Barcode(std::move(ivs));
}

void write_barcode_json(const std::string& path, const Barcode& bc) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << barcode_to_json(bc).dump(2) << "\n";
}

Barcode read_barcode_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  nlohmann::json j;
  is >> j;
  return barcode_from_json(j);
}

void write_barcode_csv(std::ostream& os, const Barcode& bc) {
  os << "dim,birth,death\n";
  for (const auto& j : bc.intervals())
    os << j.dim() << "," << j.birth().str() << "," << j.death().str() << "\n";
}

Barcode read_barcode_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("dim,birth,death", 0) != 0)
    throw std::invalid_argument("barcode CSV: missing dim,birth,death header");
  std::vector<PersistenceInterval> ivs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string dim, birth, death;
    if (!std::getline(row, dim, ',') || !std::getline(row, birth, ',') ||
        !std::getline(row, death, ','))
      throw std::invalid_argument("barcode CSV: bad row: " + line);
    ivs.emplace_back(std::stoi(dim), parse_extended_real(birth),
                     parse_extended_real(death));
  }
  return Barcode(std::move(ivs));
}

void write_barcode_csv(const std::string& path, const Barcode& bc) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_barcode_csv(os, bc);
}

Barcode read_barcode_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_barcode_csv(is);
}

void write_betti0_curve_csv(std::ostream& os, const BettiZeroCurve& curve) {
  curve.validate();
  os << "x,beta0\n";
  char buf[64];
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", curve.xs[i], curve.values[i]);
    os << buf << "\n";
  }
}

}  // namespace topstat
