#include "powersindy/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "powersindy/csv.hpp"
#include "powersindy/errors.hpp"

namespace powersindy {

namespace {

bool parse_int64(const std::string& s, std::int64_t& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{}) return false;
    while (ptr < e && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    return ptr == e;
}

bool parse_finite_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{}) return false;
    while (ptr < e && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    return ptr == e && std::isfinite(out);
}

}  // namespace

void FrequencyChunk::validate() const {
    if (samples.size() < 2) throw DataError("chunk " + chunk_id + ": too short");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].timestamp - samples[i - 1].timestamp != 1)
            throw DataError("chunk " + chunk_id + ": timestamp gap at index " +
                            std::to_string(i));
    }
    for (const auto& s : samples)
        if (!std::isfinite(s.frequency))
            throw DataError("chunk " + chunk_id + ": non-finite frequency");
}

ParseResult parse_frequency_csv(const std::string& text, const ColumnSpec& columns) {
    csv::Table table = csv::parse(text);
    if (table.header.empty()) throw DataError("frequency csv: empty input");

    std::size_t ts_col = 0, f_col = 0;
    try {
        ts_col = table.column(columns.timestamp_column);
        f_col = table.column(columns.frequency_column);
    } catch (const DataError&) {
        throw DataError("frequency csv: header must contain '" + columns.timestamp_column +
                        "' and '" + columns.frequency_column + "'");
    }

    ParseResult result;
    result.rows_read = table.rows.size();
    result.samples.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row.size() <= std::max(ts_col, f_col)) {
            ++result.rows_dropped;
            continue;
        }
        std::int64_t ts = 0;
        double f = 0.0;
        if (!parse_int64(row[ts_col], ts) || row[f_col].empty() ||
            !parse_finite_double(row[f_col], f)) {
            ++result.rows_dropped;
            continue;
        }
        result.samples.push_back({ts, f});
    }
    if (result.samples.empty()) throw DataError("frequency csv: no valid rows");

    std::stable_sort(result.samples.begin(), result.samples.end(),
                     [](const FrequencySample& a, const FrequencySample& b) {
                         return a.timestamp < b.timestamp;
                     });
    // Duplicated timestamps: keep the first occurrence.
    std::vector<FrequencySample> deduped;
    deduped.reserve(result.samples.size());
    for (const auto& s : result.samples) {
        if (!deduped.empty() && deduped.back().timestamp == s.timestamp) {
            ++result.duplicates_dropped;
            continue;
        }
        deduped.push_back(s);
    }
    result.samples = std::move(deduped);
    return result;
}

std::string format_chunk_id(std::int64_t timestamp) {
    // Civil-from-days (Howard Hinnant's algorithm), UTC.
    std::int64_t days = timestamp / 86400;
    std::int64_t rem = timestamp % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    const std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t year = m <= 2 ? y + 1 : y;

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lldT%02lld%02lld%02lld",
                  static_cast<long long>(year * 10000 + m * 100 + d),
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

SegmentResult segment_chunks(const std::vector<FrequencySample>& samples,
                             std::size_t chunk_len, double f_ref) {
    if (chunk_len < 2) throw ConfigError("segment_chunks: chunk_len must be >= 2");
    SegmentResult result;
    if (samples.empty()) return result;

    const std::int64_t len = static_cast<std::int64_t>(chunk_len);
    std::int64_t day_start = samples.front().timestamp / 86400 * 86400;
    if (samples.front().timestamp < 0 && samples.front().timestamp % 86400 != 0)
        day_start -= 86400;

    // Window index of a timestamp, relative to day_start.
    auto window_of = [&](std::int64_t ts) {
        std::int64_t w = (ts - day_start) / len;
        if (ts - day_start < 0 && (ts - day_start) % len != 0) --w;
        return w;
    };

    const std::int64_t w_first = window_of(samples.front().timestamp);
    const std::int64_t w_last = window_of(samples.back().timestamp);

    std::size_t i = 0;  // first sample index not yet behind the current window
    for (std::int64_t w = w_first; w <= w_last; ++w) {
        const std::int64_t start = day_start + w * len;
        const std::int64_t end = start + len;  // exclusive
        while (i < samples.size() && samples[i].timestamp < start) ++i;
        if (i >= samples.size()) break;
        if (samples[i].timestamp >= end) continue;  // window has no samples
        // Timestamps are strictly increasing, so a full window is equivalent
        // to sample i sitting at `start` with sample i+len-1 at `end - 1`.
        if (samples[i].timestamp == start && i + chunk_len <= samples.size() &&
            samples[i + chunk_len - 1].timestamp == end - 1) {
            FrequencyChunk chunk;
            chunk.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(i),
                                 samples.begin() + static_cast<std::ptrdiff_t>(i + chunk_len));
            chunk.f_ref = f_ref;
            chunk.chunk_id = format_chunk_id(start);
            result.chunks.push_back(std::move(chunk));
            i += chunk_len;
        } else {
            ++result.chunks_skipped;
        }
    }
    return result;
}

AngularSeries to_angular(const FrequencyChunk& chunk) {
    chunk.validate();
    AngularSeries series;
    series.dt = 1.0;
    series.omega.resize(static_cast<Eigen::Index>(chunk.samples.size()));
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (Eigen::Index i = 0; i < series.omega.size(); ++i)
        series.omega[i] = two_pi * (chunk.samples[static_cast<std::size_t>(i)].frequency -
                                    chunk.f_ref);
    return series;
}

}  // namespace powersindy
