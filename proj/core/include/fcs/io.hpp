#pragma once

#include <string>

#include "fcs/cpmap.hpp"
#include "fcs/matrix.hpp"

namespace fcs {

// A model plus how it was obtained; kind is one of
// "aklt" | "product" | "isometry" | "superop".
struct LoadedModel {
  CpMap cp;
  std::string kind;
  std::string source;  // builtin name or file path
};

// Resolves builtin names ("aklt", "product:<d>:<index>") or reads a ModelSpec
// JSON file: {"kind": ..., "d":, "r":, "V": [[re,im],...] row-major,
// "psi0": [[re,im],...], "superop": [[[re,im],...],...], "seed": int}.
// Structural problems raise ParseError; semantic ones (bad isometry, non-CP
// data) surface as their own error types.
LoadedModel resolve_model(const std::string& spec);

std::string model_to_json(const CpMap& cp, const std::string& kind);
void write_model_file(const CpMap& cp, const std::string& kind, const std::string& path);

// Word file: JSON array of matrices; matrix = array of rows of [re,im] pairs.
Word load_word_file(const std::string& path);
Matrix load_matrix_file(const std::string& path);
Matrix matrix_from_json_text(const std::string& text);
std::string matrix_to_json(const Matrix& m);

// 17-significant-digit decimal, enough to round-trip an IEEE double.
std::string format_real(double x);

}  // namespace fcs
