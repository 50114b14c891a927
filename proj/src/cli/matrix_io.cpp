#include "powerlim/cli/matrix_io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace powerlim::cli {

using nlohmann::json;

namespace {

std::string with_offset(const std::string& what, std::optional<std::size_t> offset) {
  if (!offset) return what;
  return what + " (byte offset " + std::to_string(*offset) + ")";
}

class TextScanner {
 public:
  explicit TextScanner(std::string_view s) : s_(s) {}

  std::size_t offset() const noexcept { return pos_; }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  double number(const char* what) {
    skip_space();
    if (pos_ >= s_.size()) throw LoadError(std::string("unexpected end of input, expected ") + what, pos_);
    double v = 0.0;
    const char* begin = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == begin) throw LoadError(std::string("expected ") + what, pos_);
    const std::size_t start = pos_;
    pos_ += static_cast<std::size_t>(ptr - begin);
    if (!std::isfinite(v)) throw LoadError("non-finite entry", start);
    return v;
  }

  Index count(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    const double v = number(what);
    if (v < 1.0 || v != std::floor(v) || v > 1e6) throw LoadError(std::string("invalid ") + what, start);
    return static_cast<Index>(v);
  }

  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

ComplexMatrix parse_text(std::string_view content) {
  TextScanner scan(content);
  const Index rows = scan.count("row count");
  const std::size_t cols_at = scan.offset();
  const Index cols = scan.count("column count");
  if (rows != cols) throw LoadError("matrix must be square", cols_at);
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double re = scan.number("real part");
      const double im = scan.number("imaginary part");
      m(i, j) = Complex(re, im);
    }
  }
  if (!scan.at_end()) throw LoadError("trailing data after matrix", scan.offset());
  return m;
}

Complex entry_from_json(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw LoadError("each entry must be a [re, im] pair of numbers");
  }
  const Complex z(e[0].get<double>(), e[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw LoadError("non-finite entry");
  return z;
}

json parse_json_text(std::string_view content) {
  try {
    return json::parse(content.begin(), content.end());
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("JSON parse error: ") + e.what(), e.byte);
  }
}

}  // namespace

LoadError::LoadError(const std::string& what, std::optional<std::size_t> offset)
    : Error(with_offset(what, offset)), offset_(offset) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ComplexMatrix parse_matrix(std::string_view content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw LoadError("empty matrix file", content.size());
  if (content[first] == '{') return matrix_from_json(parse_json_text(content));
  return parse_text(content);
}

ComplexMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw LoadError("matrix JSON needs rows, cols and data");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw LoadError("rows and cols must be integers");
  }
  const auto rows = j["rows"].get<long long>();
  const auto cols = j["cols"].get<long long>();
  if (rows < 1 || cols < 1) throw LoadError("rows and cols must be positive");
  if (rows != cols) throw LoadError("matrix must be square");
  const json& data = j["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw LoadError("data must hold rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) m(i, c) = entry_from_json(data[k++]);
  }
  return m;
}

std::string save_matrix(const ComplexMatrix& m) { return matrix_to_json(m).dump() + "\n"; }

json vector_to_json(const ComplexVector& v) {
  json data = json::array();
  for (Index i = 0; i < v.size(); ++i) data.push_back({v(i).real(), v(i).imag()});
  return {{"data", std::move(data)}};
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("data") || !j["data"].is_array() || j["data"].empty()) {
    throw LoadError("each vector needs a non-empty data array");
  }
  const json& data = j["data"];
  ComplexVector v(static_cast<Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) v(static_cast<Index>(i)) = entry_from_json(data[i]);
  return v;
}

std::vector<ComplexVector> parse_vectors(std::string_view content) {
  const json j = parse_json_text(content);
  if (!j.is_array()) throw LoadError("vectors file must hold a JSON list");
  std::vector<ComplexVector> out;
  for (const auto& e : j) out.push_back(vector_from_json(e));
  return out;
}

std::vector<ComplexVector> load_vectors(const std::string& path) {
  return parse_vectors(read_file(path));
}

std::string matrix_digest(const ComplexMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(m.rows()));
  mix(static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      mix(std::bit_cast<std::uint64_t>(m(i, j).real()));
      mix(std::bit_cast<std::uint64_t>(m(i, j).imag()));
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace powerlim::cli
