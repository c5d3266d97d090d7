#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "topstat/interval.hpp"

namespace topstat {

// JSON schema: an array of objects
//   {"dim": k, "birth": number|"inf"|"-inf", "death": number|"inf"|"-inf",
//    "birth_closed": bool, "death_closed": bool}
// Two barcodes are equal iff their canonically ordered interval lists match.
nlohmann::json barcode_to_json(const Barcode& bc);
Barcode barcode_from_json(const nlohmann::json& j);

void write_barcode_json(const std::string& path, const Barcode& bc);
Barcode read_barcode_json(const std::string& path);

// CSV variant: header "dim,birth,death", one interval per row,
// infinite endpoints spelled inf / -inf. Openness flags are not kept;
// reading restores the default [birth, death) / [birth, +inf] convention.
void write_barcode_csv(std::ostream& os, const Barcode& bc);
Barcode read_barcode_csv(std::istream& is);
void write_barcode_csv(const std::string& path, const Barcode& bc);
Barcode read_barcode_csv_file(const std::string& path);

void write_betti0_curve_csv(std::ostream& os, const BettiZeroCurve& curve);

}  // namespace topstat
