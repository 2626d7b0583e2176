#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "padspec/born.hpp"
#include "padspec/funcalc.hpp"
#include "padspec/structured.hpp"
#include "padspec/unidiag.hpp"

namespace padspec::io {

using nlohmann::json;

inline constexpr const char* kSchema = "padspec/1";

/// Tower fields given on the command line; each overrides the input file.
struct TowerFlags {
  std::optional<std::uint32_t> p;
  std::optional<int> f;
  std::optional<bool> ramified;
  std::optional<int> n;
};

struct TowerSpec {
  std::uint32_t p = 0;
  int f = 1;
  bool ramified = false;
  std::optional<int> n;  // unset: chosen from the job size
};

/// Merges file fields ("p", "f", "ramified", "N") with the flags. BadLiteral
/// style format errors are reported as InvalidArgument.
TowerSpec tower_spec(const json* file, const TowerFlags& flags);

json read_json_file(const std::string& path);

PadicScalar scalar_from_json(const json& j, const TowerRef& tower);
json scalar_to_json(const PadicScalar& x);

/// { "p", "f", "ramified", "N", "rows": [[literal...]...] }
PMatrix matrix_from_json(const json& j, const TowerRef& tower);
json matrix_to_json(const PMatrix& m);
/// Row count of a matrix file without parsing entries.
std::size_t matrix_file_size(const json& j);

json residue_to_json(const ResidueMatrix& m);
json norm_to_json(const Norm& n, std::uint32_t p);
json fq_to_json(const FieldTower& t, const std::optional<Fq>& a);

json class_tree_to_json(const FieldTower& t, const ClassNode& node);
json certificate_to_json(const FieldTower& t, const FailureCertificate& c);

/// { "pieces": [ { "center": lit, "radius_exp": int, "value": lit } ] }
LocallyConstantFn function_from_json(const json& j, const TowerRef& tower);
/// { "coords": [lit...] }
StateVector state_from_json(const json& j, const TowerRef& tower);
/// { "discs": [ { "center": lit, "radius_exp": int } ] } or a bare list.
MeasurableSet set_from_json(const json& j, const TowerRef& tower);
/// { "coeffs": { "n": lit, ... } } or { "coeffs": [[n, lit], ...] }
TateSeries series_from_json(const json& j, const TowerRef& tower);

json masked_to_json(const MaskedMatrix& m);

}  // namespace padspec::io
