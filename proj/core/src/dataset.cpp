#include "farebench/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "farebench/errors.hpp"
#include "farebench/rng.hpp"

namespace farebench::dataset {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_missing_token(std::string_view field) {
  return field.empty() || field == "NA";
}

bool parse_fixed_uint(std::string_view s, std::size_t offset, std::size_t len, int& out) {
  if (offset + len > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const unsigned char ch = static_cast<unsigned char>(s[offset + i]);
    if (ch < '0' || ch > '9') return false;
    value = value * 10 + (ch - '0');
  }
  out = value;
  return true;
}

std::optional<double> parse_double(std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(start));
      return;
    }
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

// Result of parsing one data row: a record, or the reason it was rejected.
struct RowParse {
  bool ok = false;
  TripRecord record;
  std::string_view reason;
};

// Column positions within the file, in kTripColumns order.
RowParse parse_row(const std::vector<std::string_view>& fields,
                   const std::array<std::size_t, 7>& positions) {
  RowParse out;
  if (fields.size() != positions.size()) {
    out.reason = "bad field count";
    return out;
  }

  const auto field = [&](std::size_t schema_idx) {
    return trim(fields[positions[schema_idx]]);
  };

  if (auto f = field(0); !is_missing_token(f)) {
    const auto ts = parse_timestamp(f);
    if (!ts) {
      out.reason = "bad timestamp";
      return out;
    }
    out.record.pickup_datetime = *ts;
  }

  const auto parse_coord = [&](std::size_t idx, std::optional<double>& slot, bool is_latitude,
                               std::string_view& reason) {
    const auto f = field(idx);
    if (is_missing_token(f)) return true;
    const auto v = parse_double(f);
    if (!v || !std::isfinite(*v)) {
      reason = "bad number";
      return false;
    }
    const double limit = is_latitude ? 90.0 : 180.0;
    if (*v < -limit || *v > limit) {
      reason = is_latitude ? "latitude out of range" : "longitude out of range";
      return false;
    }
    slot = *v;
    return true;
  };

  if (!parse_coord(1, out.record.pickup_longitude, false, out.reason)) return out;
  if (!parse_coord(2, out.record.pickup_latitude, true, out.reason)) return out;
  if (!parse_coord(3, out.record.dropoff_longitude, false, out.reason)) return out;
  if (!parse_coord(4, out.record.dropoff_latitude, true, out.reason)) return out;

  if (auto f = field(5); !is_missing_token(f)) {
    const auto v = parse_double(f);
    if (!v || !std::isfinite(*v) || *v != std::floor(*v)) {
      out.reason = "bad passenger count";
      return out;
    }
    if (*v < 0) {
      out.reason = "negative passenger count";
      return out;
    }
    out.record.passenger_count = static_cast<std::int64_t>(*v);
  }

  if (auto f = field(6); !is_missing_token(f)) {
    const auto v = parse_double(f);
    if (!v) {
      out.reason = "bad number";
      return out;
    }
    if (!std::isfinite(*v)) {
      out.reason = "non-finite fare";
      return out;
    }
    out.record.fare_amount = *v;
  }

  // (0,0) is the TLC artifact for an unrecorded GPS fix, not a location.
  if (out.record.pickup_longitude == 0.0 && out.record.pickup_latitude == 0.0) {
    out.record.pickup_longitude.reset();
    out.record.pickup_latitude.reset();
  }
  if (out.record.dropoff_longitude == 0.0 && out.record.dropoff_latitude == 0.0) {
    out.record.dropoff_longitude.reset();
    out.record.dropoff_latitude.reset();
  }

  out.ok = true;
  return out;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  // Accept "YYYY-MM-DD HH:MM:SS", "...Z", or "... UTC".
  if (text.size() > 19) {
    const auto suffix = text.substr(19);
    if (suffix != "Z" && suffix != " UTC") return std::nullopt;
    text = text.substr(0, 19);
  }
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != ' ' ||
      text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  int year, month, day, hour, minute, second;
  if (!parse_fixed_uint(text, 0, 4, year) || !parse_fixed_uint(text, 5, 2, month) ||
      !parse_fixed_uint(text, 8, 2, day) || !parse_fixed_uint(text, 11, 2, hour) ||
      !parse_fixed_uint(text, 14, 2, minute) || !parse_fixed_uint(text, 17, 2, second)) {
    return std::nullopt;
  }
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  const std::chrono::sys_days days{ymd};
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(days.time_since_epoch()) +
                       std::chrono::hours{hour} + std::chrono::minutes{minute} +
                       std::chrono::seconds{second};
  return seconds.count();
}

IngestSummary parse_csv_chunked(const std::filesystem::path& path, std::size_t chunk_rows,
                                const ChunkConsumer& on_chunk) {
  if (chunk_rows < 1) throw ContractError("chunk_rows must be >= 1");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path.string());

  std::string header;
  if (!std::getline(in, header)) throw DataError("input file has no header: " + path.string());
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::vector<std::string_view> raw_names;
  split_fields(header, raw_names);
  std::array<std::size_t, 7> positions{};
  std::vector<bool> claimed(raw_names.size(), false);
  std::vector<std::string> missing_cols;
  for (std::size_t s = 0; s < kTripColumns.size(); ++s) {
    bool found = false;
    for (std::size_t c = 0; c < raw_names.size(); ++c) {
      if (!claimed[c] && lower(trim(raw_names[c])) == kTripColumns[s]) {
        positions[s] = c;
        claimed[c] = true;
        found = true;
        break;
      }
    }
    if (!found) missing_cols.emplace_back(kTripColumns[s]);
  }
  std::vector<std::string> unknown_cols;
  for (std::size_t c = 0; c < raw_names.size(); ++c) {
    if (!claimed[c]) unknown_cols.emplace_back(trim(raw_names[c]));
  }
  if (!missing_cols.empty() || !unknown_cols.empty()) {
    std::string msg = "header mismatch in " + path.string();
    if (!missing_cols.empty()) {
      msg += "; missing:";
      for (const auto& c : missing_cols) msg += " " + c;
    }
    if (!unknown_cols.empty()) {
      msg += "; unknown:";
      for (const auto& c : unknown_cols) msg += " " + c;
    }
    throw DataError(msg);
  }

  IngestSummary summary;
  std::vector<TripRecord> chunk;
  chunk.reserve(std::min<std::size_t>(chunk_rows, 1 << 16));
  std::vector<std::string_view> fields;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++summary.rows_read;
    split_fields(line, fields);
    RowParse parsed = parse_row(fields, positions);
    if (!parsed.ok) {
      ++summary.rows_rejected;
      ++summary.rejects_by_reason[std::string(parsed.reason)];
      continue;
    }
    chunk.push_back(parsed.record);
    if (chunk.size() == chunk_rows) {
      on_chunk(chunk);
      chunk.clear();
    }
  }
  if (!chunk.empty()) on_chunk(chunk);
  return summary;
}

std::string IngestSummary::to_json_string() const {
  nlohmann::ordered_json j;
  j["rows_read"] = rows_read;
  j["rows_rejected"] = rows_rejected;
  j["rejects_by_reason"] = rejects_by_reason;
  return j.dump(2);
}

SplitIndex split_80_20(std::size_t n_rows, std::uint64_t seed) {
  if (n_rows < 5) throw DataError("degenerate split: need at least 5 rows");
  std::vector<int> perm(n_rows);
  std::iota(perm.begin(), perm.end(), 0);
  rng::SplitMix gen(seed);
  rng::shuffle(perm, gen);
  const std::size_t n_train = n_rows * 8 / 10;
  SplitIndex split;
  split.seed = seed;
  split.train_rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test_rows.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return split;
}

ColumnTable to_column_table(std::span<const TripRecord> records) {
  if (records.empty()) throw DataError("empty record list");
  std::vector<std::string> names(kTripColumns.begin(), kTripColumns.end());
  ColumnTable table = ColumnTable::with_columns(std::move(names), records.size());

  const auto put = [&](std::size_t col, std::size_t row, const std::optional<double>& v) {
    if (v) {
      table.columns[col][row] = *v;
    } else {
      table.missing[col][row] = 1;
    }
  };
  for (std::size_t r = 0; r < records.size(); ++r) {
    const TripRecord& rec = records[r];
    put(0, r,
        rec.pickup_datetime ? std::optional<double>(static_cast<double>(*rec.pickup_datetime))
                            : std::nullopt);
    put(1, r, rec.pickup_longitude);
    put(2, r, rec.pickup_latitude);
    put(3, r, rec.dropoff_longitude);
    put(4, r, rec.dropoff_latitude);
    put(5, r,
        rec.passenger_count ? std::optional<double>(static_cast<double>(*rec.passenger_count))
                            : std::nullopt);
    put(6, r, rec.fare_amount);
  }
  return table;
}

TripRecord record_at(const ColumnTable& table, std::size_t row) {
  TripRecord rec;
  const auto get = [&](std::string_view name) -> std::optional<double> {
    const std::size_t c = table.index_of(name);
    if (table.is_missing(c, row)) return std::nullopt;
    return table.columns[c][row];
  };
  if (auto v = get("pickup_datetime")) rec.pickup_datetime = static_cast<std::int64_t>(*v);
  rec.pickup_longitude = get("pickup_longitude");
  rec.pickup_latitude = get("pickup_latitude");
  rec.dropoff_longitude = get("dropoff_longitude");
  rec.dropoff_latitude = get("dropoff_latitude");
  if (auto v = get("passenger_count")) rec.passenger_count = static_cast<std::int64_t>(*v);
  rec.fare_amount = get("fare_amount");
  return rec;
}

}  // namespace farebench::dataset
