#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "farebench/table.hpp"

namespace farebench::dataset {

// One taxi trip. Missingness is explicit via std::optional; no sentinel
// values. Timestamps are UTC seconds since the Unix epoch.
struct TripRecord {
  std::optional<std::int64_t> pickup_datetime;
  std::optional<double> pickup_longitude;
  std::optional<double> pickup_latitude;
  std::optional<double> dropoff_longitude;
  std::optional<double> dropoff_latitude;
  std::optional<std::int64_t> passenger_count;
  std::optional<double> fare_amount;
};

// Fixed column order used by to_column_table and everything downstream.
inline constexpr std::array<std::string_view, 7> kTripColumns = {
    "pickup_datetime",  "pickup_longitude",  "pickup_latitude",
    "dropoff_longitude", "dropoff_latitude", "passenger_count",
    "fare_amount"};

struct IngestSummary {
  std::uint64_t rows_read = 0;
  std::uint64_t rows_rejected = 0;
  std::map<std::string, std::uint64_t> rejects_by_reason;

  std::string to_json_string() const;
};

inline constexpr std::size_t kDefaultChunkRows = 100000;

using ChunkConsumer = std::function<void(std::span<const TripRecord>)>;

// Streams the file in bounded-memory chunks: every accepted row is
// delivered to exactly one chunk, in file order; malformed rows are counted
// and skipped. Header must contain exactly the kTripColumns names
// (case-insensitive, any order). Peak resident row count <= chunk_rows.
IngestSummary parse_csv_chunked(const std::filesystem::path& path, std::size_t chunk_rows,
                                const ChunkConsumer& on_chunk);

// Strict "YYYY-MM-DD HH:MM:SS" with optional trailing "Z" or " UTC".
// Returns UTC epoch seconds, or nullopt on any deviation.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

struct SplitIndex {
  std::vector<int> train_rows;
  std::vector<int> test_rows;
  std::uint64_t seed = 0;
};

// Deterministic seeded shuffle of 0..n_rows-1; the first 80% (rounded
// down) become train rows. Requires n_rows >= 5.
SplitIndex split_80_20(std::size_t n_rows, std::uint64_t seed);

// Columns in kTripColumns order; pickup_datetime stored as epoch seconds.
ColumnTable to_column_table(std::span<const TripRecord> records);

// Inverse of to_column_table for a single row.
TripRecord record_at(const ColumnTable& table, std::size_t row);

}  // namespace farebench::dataset
