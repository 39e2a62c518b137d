#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace powersindy {

struct FrequencySample {
    std::int64_t timestamp = 0;  // seconds since epoch, 1 s grid
    double frequency = 0.0;      // Hz, always finite
};

// One contiguous fixed-length segment of 1 Hz frequency measurements.
struct FrequencyChunk {
    std::vector<FrequencySample> samples;  // strictly +1 s spacing
    double f_ref = 50.0;                   // nominal frequency, Hz
    std::string chunk_id;                  // date + start time, e.g. 20240101T090000

    std::size_t size() const { return samples.size(); }
    void validate() const;  // throws DataError on violated invariants
};

// Angular deviation omega = 2*pi*(f - f_ref).
struct AngularSeries {
    Eigen::VectorXd omega;  // rad/s
    double dt = 1.0;        // s
};

struct ColumnSpec {
    std::string timestamp_column = "timestamp";
    std::string frequency_column = "frequency";
};

struct ParseResult {
    std::vector<FrequencySample> samples;  // sorted by timestamp, deduplicated
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;       // unparseable or missing frequency
    std::size_t duplicates_dropped = 0; // repeated timestamps (first kept)
};

struct SegmentResult {
    std::vector<FrequencyChunk> chunks;
    std::size_t chunks_skipped = 0;  // windows with samples but incomplete
};

struct IngestSummary {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::size_t chunks_emitted = 0;
    std::size_t chunks_skipped = 0;
};

// Parses CSV text with a header row; rows whose frequency cell is missing or
// unparseable are dropped and counted. Throws DataError on a malformed header
// or when no valid rows remain.
ParseResult parse_frequency_csv(const std::string& text, const ColumnSpec& columns = {});

// Partitions the timeline into windows of chunk_len seconds aligned to
// multiples of chunk_len from midnight (UTC) of the first sample's day.
// A chunk is emitted only when all chunk_len samples of a window are present.
SegmentResult segment_chunks(const std::vector<FrequencySample>& samples,
                             std::size_t chunk_len, double f_ref);

AngularSeries to_angular(const FrequencyChunk& chunk);

// UTC label YYYYMMDDTHHMMSS for a timestamp.
std::string format_chunk_id(std::int64_t timestamp);

}  // namespace powersindy
