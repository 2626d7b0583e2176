#include "json_io.hpp"

#include <fstream>

#include "padspec/literal.hpp"

namespace padspec::io {

namespace {

[[noreturn]] void format_error(const std::string& what) { fail(Errc::InvalidArgument, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) format_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    format_error(std::string("field \"") + what + "\" has the wrong type");
  }
}

PDisc disc_from_json(const json& d, const TowerRef& tower) {
  return PDisc::with_exponent(scalar_from_json(field(d, "center"), tower), get_as<int>(field(d, "radius_exp"), "radius_exp"));
}

}  // namespace

TowerSpec tower_spec(const json* file, const TowerFlags& flags) {
  TowerSpec s;
  if (file && file->is_object()) {
    if (file->contains("p")) s.p = get_as<std::uint32_t>(file->at("p"), "p");
    if (file->contains("f")) s.f = get_as<int>(file->at("f"), "f");
    if (file->contains("ramified")) s.ramified = get_as<bool>(file->at("ramified"), "ramified");
    if (file->contains("N")) s.n = get_as<int>(file->at("N"), "N");
  }
  if (flags.p) s.p = *flags.p;
  if (flags.f) s.f = *flags.f;
  if (flags.ramified) s.ramified = *flags.ramified;
  if (flags.n) s.n = *flags.n;
  if (s.p == 0) format_error("no prime given (--p or \"p\" in the input)");
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) format_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    format_error(path + ": " + e.what());
  }
}

PadicScalar scalar_from_json(const json& j, const TowerRef& tower) {
  if (j.is_number_integer()) return PadicScalar::from_int(j.get<long long>(), tower);
  if (j.is_string()) return parse_scalar_literal(j.get<std::string>(), tower);
  fail(Errc::BadLiteral, "scalar must be a string literal or an integer, got " + j.dump());
}

json scalar_to_json(const PadicScalar& x) { return format_scalar_literal(x); }

PMatrix matrix_from_json(const json& j, const TowerRef& tower) {
  const json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty()) format_error("\"rows\" must be a nonempty array");
  const std::size_t n = rows.size();
  const std::size_t m = rows[0].is_array() ? rows[0].size() : 0;
  if (m == 0) format_error("rows must be nonempty arrays");
  PMatrix out(tower, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m) format_error("row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < m; ++k) out(i, k) = scalar_from_json(rows[i][k], tower);
  }
  return out;
}

json matrix_to_json(const PMatrix& m) {
  const FieldTower& t = *m.tower();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"p", t.p()}, {"f", t.degree()}, {"ramified", t.ramified()}, {"N", t.precision()}, {"rows", std::move(rows)}};
}

std::size_t matrix_file_size(const json& j) {
  const json& rows = field(j, "rows");
  if (!rows.is_array()) format_error("\"rows\" must be an array");
  return rows.size();
}

json residue_to_json(const ResidueMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.tower()->fq_to_string(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json norm_to_json(const Norm& n, std::uint32_t p) {
  if (n.zero) return {{"zero", true}, {"text", "0"}, {"value", 0.0}};
  return {{"zero", false}, {"v2", n.v2}, {"text", n.to_string()}, {"value", probability_value(n, p)}};
}

json fq_to_json(const FieldTower& t, const std::optional<Fq>& a) {
  if (!a) return nullptr;
  return t.fq_to_string(*a);
}

json class_tree_to_json(const FieldTower& t, const ClassNode& node) {
  json children = json::array();
  for (const auto& c : node.children) children.push_back(class_tree_to_json(t, c));
  return {{"depth", node.depth},         {"shift", scalar_to_json(node.shift)},
          {"normalizer", node.normalizer}, {"label", fq_to_json(t, node.label)},
          {"dimension", node.dimension}, {"scalar_leaf", node.scalar_leaf},
          {"children", std::move(children)}};
}

json certificate_to_json(const FieldTower& t, const FailureCertificate& c) {
  json trail = json::array();
  for (const auto& s : c.trail)
    trail.push_back({{"shift", scalar_to_json(s.shift)}, {"normalizer", s.normalizer}, {"label", fq_to_json(t, s.label)}});
  return {{"reason", std::string(failure_name(c.reason))},
          {"depth", c.depth},
          {"input_normalizer", c.input_normalizer},
          {"trail", std::move(trail)},
          {"reduction", residue_to_json(c.offending)},
          {"witness", c.witness.to_string()}};
}

LocallyConstantFn function_from_json(const json& j, const TowerRef& tower) {
  const json& pieces = field(j, "pieces");
  if (!pieces.is_array()) format_error("\"pieces\" must be an array");
  std::vector<Piece> out;
  for (const auto& pc : pieces) out.push_back({disc_from_json(pc, tower), scalar_from_json(field(pc, "value"), tower)});
  return LocallyConstantFn(std::move(out));
}

StateVector state_from_json(const json& j, const TowerRef& tower) {
  const json& coords = field(j, "coords");
  if (!coords.is_array()) format_error("\"coords\" must be an array");
  std::vector<PadicScalar> c;
  for (const auto& x : coords) c.push_back(scalar_from_json(x, tower));
  return StateVector(tower, std::move(c));
}

MeasurableSet set_from_json(const json& j, const TowerRef& tower) {
  const json& discs = j.is_array() ? j : field(j, "discs");
  if (!discs.is_array()) format_error("\"discs\" must be an array");
  std::vector<PDisc> out;
  for (const auto& d : discs) out.push_back(disc_from_json(d, tower));
  return MeasurableSet(std::move(out));
}

TateSeries series_from_json(const json& j, const TowerRef& tower) {
  const json& coeffs = field(j, "coeffs");
  std::map<long long, PadicScalar> c;
  auto put = [&](long long n, const json& v) {
    if (!c.emplace(n, scalar_from_json(v, tower)).second) format_error("exponent " + std::to_string(n) + " repeated");
  };
  if (coeffs.is_object()) {
    for (const auto& [k, v] : coeffs.items()) {
      long long n = 0;
      try {
        std::size_t used = 0;
        n = std::stoll(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        format_error("exponent \"" + k + "\" is not an integer");
      }
      put(n, v);
    }
  } else if (coeffs.is_array()) {
    for (const auto& e : coeffs) {
      if (!e.is_array() || e.size() != 2) format_error("series entries are [exponent, literal]");
      put(get_as<long long>(e[0], "exponent"), e[1]);
    }
  } else {
    format_error("\"coeffs\" must be an object or an array");
  }
  return TateSeries(tower, std::move(c));
}

json masked_to_json(const MaskedMatrix& m) {
  json out = matrix_to_json(m.value);
  out["margin"] = m.margin;
  json flagged = json::array();
  for (std::size_t i = 0; i < m.value.rows(); ++i)
    for (std::size_t k = 0; k < m.value.cols(); ++k)
      if (m.is_flagged(i, k)) {
        // withheld: the value lost too many digits to k!
        out["rows"][i][k] = nullptr;
        flagged.push_back({i, k});
      }
  out["flagged"] = std::move(flagged);
  return out;
}

}  // namespace padspec::io
