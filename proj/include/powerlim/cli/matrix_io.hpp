#pragma once

// Matrix and vector files.
//
//   JSON:  {"rows": m, "cols": m, "data": [[re, im], ...]}   (row-major)
//   text:  "m m" on the first line, then m lines of 2m reals (re im pairs)
//   vectors: [{"data": [[re, im], ...]}, ...]

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "powerlim/matcore.hpp"

namespace powerlim::cli {

/// Unreadable or malformed input. `offset` is the byte position of the problem when known.
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::optional<std::size_t> offset = std::nullopt);
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  std::optional<std::size_t> offset_;
};

std::string read_file(const std::string& path);

/// Detects the format from the first non-blank character ('{' means JSON).
ComplexMatrix parse_matrix(std::string_view content);
ComplexMatrix load_matrix(const std::string& path);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
std::string save_matrix(const ComplexMatrix& m);

nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

/// Entries may be zero vectors; callers decide how to report them.
std::vector<ComplexVector> parse_vectors(std::string_view content);
std::vector<ComplexVector> load_vectors(const std::string& path);

/// FNV-1a over the dimensions and the bit patterns of all entries, as 16 hex digits.
std::string matrix_digest(const ComplexMatrix& m);

}  // namespace powerlim::cli
