#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace farebench {

// Per-column z-score statistics. `scaled == false` marks a column whose
// variance was below the normalization floor; it passes through unchanged.
struct NormStat {
  double mean = 0.0;
  double stddev = 1.0;
  bool scaled = true;
};

// Columnar numeric dataset. Missing entries are flagged in `missing`
// (1 = missing); the stored double for a missing cell is meaningless and
// must never be read as data.
struct ColumnTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::vector<char>> missing;
  std::optional<std::vector<NormStat>> norm_stats;

  static ColumnTable with_columns(std::vector<std::string> column_names, std::size_t rows);

  std::size_t row_count() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t col_count() const { return names.size(); }

  // Index of `name`, or -1.
  int find(std::string_view name) const;
  // Index of `name`; throws ContractError if absent.
  std::size_t index_of(std::string_view name) const;

  bool is_missing(std::size_t col, std::size_t row) const {
    return missing[col][row] != 0;
  }
  bool column_fully_present(std::size_t col) const;

  // Keeps only the listed rows, in the given order.
  ColumnTable select_rows(std::span<const int> rows) const;
  // Keeps only the listed columns, in the given order.
  ColumnTable select_columns(std::span<const std::string> column_names) const;

  // Throws ContractError on any shape inconsistency.
  void check_consistent() const;
};

// Plain numeric CSV round-trip used for cached pipeline artifacts.
// Missing cells serialize as empty fields; doubles round-trip bit-exactly.
void write_table_csv(const ColumnTable& table, const std::filesystem::path& path);
ColumnTable read_table_csv(const std::filesystem::path& path);

}  // namespace farebench
