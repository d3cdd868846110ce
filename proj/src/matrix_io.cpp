#include "sfnorm/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "sfnorm/errors.hpp"

namespace sfnorm {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) { return fmt::format("{:016x}", h); }

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

/// Splits text into lines, remembering 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++number_;
    return true;
  }
  std::size_t number() const noexcept { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

std::vector<Token> split(std::string_view line, std::size_t line_no, char sep) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (sep == ' ') {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({line.substr(start, i - start), line_no, start + 1});
    } else {
      const std::size_t end = std::min(line.find(sep, i), line.size());
      std::size_t a = i;
      std::size_t b = end;
      while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
      while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
      out.push_back({line.substr(a, b - a), line_no, a + 1});
      i = end + 1;
      if (end == line.size()) break;
    }
  }
  return out;
}

double parse_real(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.text.empty() || ec != std::errc() || ptr != last)
    throw IngestionError("cannot parse real value '" + std::string(t.text) + "'", t.line, t.column);
  if (!std::isfinite(v)) throw IngestionError("non-finite entry", t.line, t.column);
  return v;
}

Index parse_dim(const Token& t) {
  Index v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.text.empty() || ec != std::errc() || ptr != last || v == 0)
    throw IngestionError("invalid dimension '" + std::string(t.text) + "'", t.line, t.column);
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MatrixFormat guess_format(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".csv" ? MatrixFormat::Csv : MatrixFormat::MatrixMarket;
}

}  // namespace

RowMatrix parse_matrix_market(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw IngestionError("empty MatrixMarket file");
  const auto banner = split(line, reader.number(), ' ');
  if (banner.size() != 5 || lower(banner[0].text) != "%%matrixmarket")
    throw IngestionError("missing %%MatrixMarket banner", reader.number(), 1);
  if (lower(banner[1].text) != "matrix") throw IngestionError("unsupported object", banner[1].line, banner[1].column);
  if (lower(banner[2].text) != "array")
    throw IngestionError("only the dense array format is supported", banner[2].line, banner[2].column);
  if (lower(banner[3].text) != "real" && lower(banner[3].text) != "integer")
    throw IngestionError("only real fields are supported", banner[3].line, banner[3].column);
  if (lower(banner[4].text) != "general")
    throw IngestionError("only general symmetry is supported", banner[4].line, banner[4].column);

  Index m = 0;
  Index n = 0;
  RowMatrix out;
  Index filled = 0;
  while (reader.next(line)) {
    if (line.empty() || line.front() == '%') continue;
    for (const auto& tok : split(line, reader.number(), ' ')) {
      if (m == 0) {
        m = parse_dim(tok);
        continue;
      }
      if (n == 0) {
        n = parse_dim(tok);
        out.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        continue;
      }
      if (filled >= m * n) throw IngestionError("more entries than m*n", tok.line, tok.column);
      out(static_cast<Eigen::Index>(filled % m), static_cast<Eigen::Index>(filled / m)) = parse_real(tok);
      ++filled;
    }
  }
  if (n == 0) throw IngestionError("missing size line", reader.number(), 1);
  if (filled != m * n)
    throw IngestionError(fmt::format("expected {} entries, found {}", m * n, filled), reader.number(), 1);
  return out;
}

RowMatrix parse_csv_matrix(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  while (reader.next(line) && line.empty()) {
  }
  if (line.empty()) throw IngestionError("empty CSV file");
  const auto header = split(line, reader.number(), ',');
  if (header.size() != 2) throw IngestionError("header must be 'm,n'", reader.number(), 1);
  const Index m = parse_dim(header[0]);
  const Index n = parse_dim(header[1]);
  RowMatrix out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Index row = 0;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (row >= m) throw IngestionError("more than m rows", reader.number(), 1);
    const auto cells = split(line, reader.number(), ',');
    if (cells.size() != n)
      throw IngestionError(fmt::format("expected {} values, found {}", n, cells.size()), reader.number(), 1);
    for (Index j = 0; j < n; ++j) out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = parse_real(cells[j]);
    ++row;
  }
  if (row != m) throw IngestionError(fmt::format("expected {} rows, found {}", m, row), reader.number(), 1);
  return out;
}

std::string format_matrix_market(const RowMatrix& m) {
  std::string out = "%%MatrixMarket matrix array real general\n";
  out += fmt::format("{} {}\n", m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out += fmt::format("{:.17g}\n", m(i, j));
  return out;
}

std::string format_csv_matrix(const RowMatrix& m) {
  std::string out = fmt::format("{},{}\n", m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt::format("{:.17g}", m(i, j));
    }
    out += '\n';
  }
  return out;
}

IngestedMatrix ingest_matrix(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
  const std::string text = read_all(path);
  IngestedMatrix out;
  out.path = path.string();
  out.provenance = hex64(fnv1a64(text));
  try {
    out.data = format.value_or(guess_format(path)) == MatrixFormat::Csv ? parse_csv_matrix(text)
                                                                        : parse_matrix_market(text);
  } catch (const IngestionError& e) {
    throw IngestionError(path.string() + ": " + e.what());
  }
  return out;
}

MatrixOracle ingest_oracle(const std::filesystem::path& path, std::optional<MatrixFormat> format) {
  return MatrixOracle::dense(ingest_matrix(path, format).data);
}

void export_matrix(const std::filesystem::path& path, const RowMatrix& m, std::optional<MatrixFormat> format) {
  const bool csv = format.value_or(guess_format(path)) == MatrixFormat::Csv;
  write_file_atomic(path, csv ? format_csv_matrix(m) : format_matrix_market(m));
}

std::optional<MatrixOracle> load_real_world(MatrixClass cls, const std::filesystem::path& dir, Index n) {
  if (!is_file_class(cls)) throw ParameterError("load_real_world: not a file-backed class");
  const auto path = dir / (std::string(to_string(cls)) + ".mtx");
  if (!std::filesystem::exists(path)) return std::nullopt;
  auto oracle = ingest_oracle(path);
  if (oracle.rows() > n || oracle.cols() > n)
    throw IngestionError(fmt::format("{} is {}x{}, larger than n = {}", path.string(), oracle.rows(), oracle.cols(), n));
  return pad_to(oracle, n, n);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sfnorm
