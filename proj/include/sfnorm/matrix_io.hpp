#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "sfnorm/matrix_source.hpp"
#include "sfnorm/matrixgen.hpp"
#include "sfnorm/oracle.hpp"

namespace sfnorm {

enum class MatrixFormat { MatrixMarket, Csv };

/// 64-bit FNV-1a, rendered as 16 hex digits. Used as the provenance tag of
/// ingested files.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string hex64(std::uint64_t h);

struct IngestedMatrix {
  RowMatrix data;
  std::string path;
  std::string provenance;  // fnv1a64 of the raw file bytes
};

/// Dense "matrix array real general" MatrixMarket, entries column-major.
RowMatrix parse_matrix_market(std::string_view text);
/// First line "m,n", then m rows of n comma-separated values.
RowMatrix parse_csv_matrix(std::string_view text);

std::string format_matrix_market(const RowMatrix& m);
std::string format_csv_matrix(const RowMatrix& m);

/// Format chosen from the extension when not given (.csv is CSV, anything
/// else MatrixMarket).
IngestedMatrix ingest_matrix(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt);
MatrixOracle ingest_oracle(const std::filesystem::path& path, std::optional<MatrixFormat> format = std::nullopt);
void export_matrix(const std::filesystem::path& path, const RowMatrix& m,
                   std::optional<MatrixFormat> format = std::nullopt);

/// `<dir>/<class>.mtx` zero-padded to n x n, or nullopt when the file is absent.
std::optional<MatrixOracle> load_real_world(MatrixClass cls, const std::filesystem::path& dir, Index n);

/// Write `contents` to a sibling temporary and rename it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace sfnorm
