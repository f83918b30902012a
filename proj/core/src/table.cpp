#include "farebench/table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "farebench/errors.hpp"

namespace farebench {

ColumnTable ColumnTable::with_columns(std::vector<std::string> column_names, std::size_t rows) {
  ColumnTable t;
  t.names = std::move(column_names);
  t.columns.assign(t.names.size(), std::vector<double>(rows, 0.0));
  t.missing.assign(t.names.size(), std::vector<char>(rows, 0));
  return t;
}

int ColumnTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t ColumnTable::index_of(std::string_view name) const {
  const int idx = find(name);
  if (idx < 0) throw ContractError("unknown column: " + std::string(name));
  return static_cast<std::size_t>(idx);
}

bool ColumnTable::column_fully_present(std::size_t col) const {
  for (char m : missing[col]) {
    if (m) return false;
  }
  return true;
}

ColumnTable ColumnTable::select_rows(std::span<const int> rows) const {
  ColumnTable out = with_columns(names, rows.size());
  out.norm_stats = norm_stats;
  for (std::size_t c = 0; c < col_count(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto src = static_cast<std::size_t>(rows[r]);
      out.columns[c][r] = columns[c][src];
      out.missing[c][r] = missing[c][src];
    }
  }
  return out;
}

ColumnTable ColumnTable::select_columns(std::span<const std::string> column_names) const {
  ColumnTable out;
  out.names.assign(column_names.begin(), column_names.end());
  for (const auto& name : column_names) {
    const std::size_t c = index_of(name);
    out.columns.push_back(columns[c]);
    out.missing.push_back(missing[c]);
  }
  return out;
}

void ColumnTable::check_consistent() const {
  if (columns.size() != names.size() || missing.size() != names.size()) {
    throw ContractError("column table: names/columns/missing size mismatch");
  }
  const std::size_t rows = row_count();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows || missing[c].size() != rows) {
      throw ContractError("column table: ragged column " + names[c]);
    }
  }
  if (norm_stats) {
    if (norm_stats->size() != names.size()) {
      throw ContractError("column table: norm_stats size mismatch");
    }
    for (std::size_t c = 0; c < norm_stats->size(); ++c) {
      if ((*norm_stats)[c].scaled && (*norm_stats)[c].stddev <= 0.0) {
        throw ContractError("column table: non-positive std for scaled column " + names[c]);
      }
    }
  }
}

namespace {

void format_double(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

void write_table_csv(const ColumnTable& table, const std::filesystem::path& path) {
  table.check_consistent();
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  std::string line;
  for (std::size_t c = 0; c < table.col_count(); ++c) {
    if (c) line += ',';
    line += table.names[c];
  }
  line += '\n';
  out << line;
  const std::size_t rows = table.row_count();
  for (std::size_t r = 0; r < rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < table.col_count(); ++c) {
      if (c) line += ',';
      if (!table.is_missing(c, r)) format_double(line, table.columns[c][r]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw DataError("write failed: " + path.string());
}

ColumnTable read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw DataError("empty table file: " + path.string());
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::vector<std::string> names;
  {
    std::stringstream ss(header);
    std::string field;
    while (std::getline(ss, field, ',')) names.push_back(field);
  }
  ColumnTable table = ColumnTable::with_columns(std::move(names), 0);

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t col = 0;
    std::size_t start = 0;
    while (col < table.col_count()) {
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const std::string_view field(line.data() + start, end - start);
      double value = 0.0;
      char present = 0;
      if (!field.empty()) {
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
          throw DataError("bad numeric field in " + path.string() + ": " + std::string(field));
        }
        present = 1;
      }
      table.columns[col].push_back(value);
      table.missing[col].push_back(present ? 0 : 1);
      ++col;
      start = end + 1;
      if (end == line.size()) break;
    }
    if (col != table.col_count()) throw DataError("short row in " + path.string());
  }
  table.check_consistent();
  return table;
}

}  // namespace farebench
