#include "fcs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fcs/errors.hpp"
#include "fcs/models.hpp"

namespace fcs {

namespace {

using nlohmann::json;

complexd parse_pair(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json dump_pair(complexd z) { return json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: empty row");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError("matrix: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_pair(j[i][k]);
  }
  return m;
}

json dump_matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(dump_pair(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

// Flat row-major [re,im] list into a fixed-shape matrix.
Matrix parse_flat(const json& j, std::size_t rows, std::size_t cols,
                  const std::string& what) {
  if (!j.is_array() || j.size() != rows * cols)
    throw ParseError(what + ": expected " + std::to_string(rows * cols) +
                     " [re, im] pairs");
  Matrix m(rows, cols);
  for (std::size_t idx = 0; idx < rows * cols; ++idx)
    m(idx / cols, idx % cols) = parse_pair(j[idx]);
  return m;
}

json dump_flat(const Matrix& m) {
  json flat = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) flat.push_back(dump_pair(m(i, k)));
  return flat;
}

std::size_t require_size(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_unsigned())
    throw ParseError(std::string("model: missing or invalid \"") + field + "\"");
  const std::size_t v = j[field].get<std::size_t>();
  if (v == 0) throw ParseError(std::string("model: \"") + field + "\" must be ≥ 1");
  return v;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

LoadedModel from_spec_json(const json& j, const std::string& source) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("model: missing \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  LoadedModel out;
  out.kind = kind;
  out.source = source;

  if (kind == "aklt") {
    out.cp = aklt_model().cp;
  } else if (kind == "product") {
    if (!j.contains("psi0")) throw ParseError("model: product needs \"psi0\"");
    const json& p = j["psi0"];
    if (!p.is_array() || p.empty()) throw ParseError("model: invalid \"psi0\"");
    Matrix psi(p.size(), 1);
    for (std::size_t i = 0; i < p.size(); ++i) psi(i, 0) = parse_pair(p[i]);
    out.cp = product_model(psi).cp;
  } else if (kind == "isometry") {
    const std::size_t d = require_size(j, "d");
    const std::size_t r = require_size(j, "r");
    if (j.contains("V")) {
      out.cp = cp_from_isometry(parse_flat(j["V"], d * r, r, "V"), d, r);
    } else if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw ParseError("model: invalid \"seed\"");
      out.cp = random_model(d, r, j["seed"].get<std::uint64_t>());
    } else {
      throw ParseError("model: isometry needs \"V\" or \"seed\"");
    }
  } else if (kind == "superop") {
    const std::size_t d = require_size(j, "d");
    const std::size_t r = require_size(j, "r");
    if (!j.contains("superop") || !j["superop"].is_array())
      throw ParseError("model: superop needs \"superop\" rows");
    Matrix s = parse_matrix(j["superop"]);
    if (s.rows() != r * r || s.cols() != d * d * r * r)
      throw ParseError("model: superop must be r² x (d²r²)");
    out.cp.d = d;
    out.cp.r = r;
    out.cp.superop = s;
  } else {
    throw ParseError("model: unknown kind \"" + kind + "\"");
  }
  return out;
}

}  // namespace

LoadedModel resolve_model(const std::string& spec) {
  if (spec == "aklt") {
    LoadedModel out;
    out.cp = aklt_model().cp;
    out.kind = "aklt";
    out.source = spec;
    return out;
  }
  if (spec.rfind("product:", 0) == 0) {
    std::size_t d = 0, index = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "product:%zu:%zu%c", &d, &index, &extra) != 2 ||
        d == 0 || index >= d)
      throw ParseError("builtin product model: expected product:<d>:<index> with index < d");
    Matrix psi(d, 1);
    psi(index, 0) = 1.0;
    LoadedModel out;
    out.cp = product_model(psi).cp;
    out.kind = "product";
    out.source = spec;
    return out;
  }
  return from_spec_json(parse_file(spec), spec);
}

std::string model_to_json(const CpMap& cp, const std::string& kind) {
  json j;
  if (kind == "aklt") {
    j["kind"] = "aklt";
  } else if (kind == "superop" || !cp.has_stinespring()) {
    j["kind"] = "superop";
    j["d"] = cp.d;
    j["r"] = cp.r;
    j["superop"] = dump_matrix(cp.superop);
  } else if (kind == "product" && cp.r == 1 && cp.multiplicity == 1 &&
             cp.has_stinespring()) {
    j["kind"] = "product";
    j["d"] = cp.d;
    json psi = json::array();
    for (std::size_t i = 0; i < cp.d; ++i) psi.push_back(dump_pair(cp.stinespring(i, 0)));
    j["psi0"] = psi;
  } else if (cp.multiplicity == 1) {
    j["kind"] = "isometry";
    j["d"] = cp.d;
    j["r"] = cp.r;
    j["V"] = dump_flat(cp.stinespring);
  } else {
    // dilations with multiplicity > 1 do not fit the (d·r) x r V layout
    j["kind"] = "superop";
    j["d"] = cp.d;
    j["r"] = cp.r;
    j["superop"] = dump_matrix(cp.superop);
  }
  return j.dump(2);
}

void write_model_file(const CpMap& cp, const std::string& kind, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << model_to_json(cp, kind) << "\n";
}

Word load_word_file(const std::string& path) {
  json j = parse_file(path);
  if (!j.is_array()) throw ParseError(path + ": word file must be an array of matrices");
  Word word;
  for (const json& entry : j) word.push_back(parse_matrix(entry));
  return word;
}

Matrix load_matrix_file(const std::string& path) { return parse_matrix(parse_file(path)); }

Matrix matrix_from_json_text(const std::string& text) {
  try {
    return parse_matrix(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

std::string matrix_to_json(const Matrix& m) { return dump_matrix(m).dump(); }

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace fcs
