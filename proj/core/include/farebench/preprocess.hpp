#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "farebench/table.hpp"

namespace farebench::preprocess {

struct KnnImputeConfig {
  int k = 5;
  // When more complete rows are available, donors are subsampled to this
  // cap with the seeded generator (invoked per missing row, ascending).
  int donor_cap = 10000;
  std::uint64_t seed = 0;
};

struct LatLonBounds {
  double lat_lo = 40.5;
  double lat_hi = 41.0;
  double lon_lo = -74.3;
  double lon_hi = -73.7;
};

struct IqrFilterConfig {
  double multiplier = 1.5;
  LatLonBounds spatial_bounds;  // five boroughs plus airports
  double min_fare = 0.01;
};

// A removed row increments every criterion it violates.
struct RemovalReport {
  std::size_t iqr_removed = 0;
  std::size_t bounds_removed = 0;
  std::size_t fare_removed = 0;
  std::size_t rows_remaining = 0;

  std::string to_json_string() const;
};

struct TemporalFeatures {
  int hour_of_day;   // 0-23
  int day_of_week;   // Monday = 0
  int month;         // 1-12
};

// Fills every missing entry of target_column with the mean target of its k
// nearest donors (rows with the target present) under Euclidean distance in
// z-scored feature space over the other columns. Missing feature entries
// contribute zero in z-space; distance ties break by ascending row index.
ColumnTable knn_impute(const ColumnTable& table, std::string_view target_column,
                       const KnnImputeConfig& cfg);

// Removes rows falling outside [Q1 - m*IQR, Q3 + m*IQR] on any listed
// column (type-7 quantiles on pre-filter data), outside the NYC rectangle
// on any coordinate, or below min_fare.
std::pair<ColumnTable, RemovalReport> iqr_filter(const ColumnTable& table,
                                                 std::span<const std::string> columns,
                                                 const IqrFilterConfig& cfg);

// Linear-interpolation (type-7) quantile of unsorted values, q in [0, 1].
double quantile_type7(std::span<const double> values, double q);

inline constexpr double kEarthRadiusKm = 6371.0088;

// Great-circle distance between two (lat, lon) points in degrees.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

// Hour / weekday / month of a UTC epoch-seconds timestamp.
TemporalFeatures extract_temporal(std::int64_t epoch_seconds);

// Population-convention z-score statistics over the training rows only.
// Columns with std below 1e-12 are flagged unscaled and pass through.
std::vector<NormStat> fit_normalizer(const ColumnTable& table, std::span<const int> train_rows);
ColumnTable apply_normalizer(const ColumnTable& table, const std::vector<NormStat>& stats);
ColumnTable apply_denormalizer(const ColumnTable& table, const std::vector<NormStat>& stats);

}  // namespace farebench::preprocess
