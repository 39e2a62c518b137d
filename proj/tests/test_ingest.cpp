#include <doctest.h>

#include <cmath>

#include "powersindy/errors.hpp"
#include "powersindy/ingest.hpp"

using namespace powersindy;

namespace {

std::vector<FrequencySample> contiguous(std::int64_t t0, std::size_t n, double f = 50.0) {
    std::vector<FrequencySample> samples(n);
    for (std::size_t i = 0; i < n; ++i)
        samples[i] = {t0 + static_cast<std::int64_t>(i), f};
    return samples;
}

}  // namespace

TEST_CASE("parse_frequency_csv reads simple rows") {
    const auto result = parse_frequency_csv("ts,f\n0,50.01\n1,50.00\n2,49.99", {"ts", "f"});
    REQUIRE(result.samples.size() == 3);
    CHECK(result.samples[0].frequency == doctest::Approx(50.01));
    CHECK(result.samples[1].frequency == doctest::Approx(50.00));
    CHECK(result.samples[2].frequency == doctest::Approx(49.99));
    CHECK(result.rows_dropped == 0);
}

TEST_CASE("parse_frequency_csv drops rows with missing frequency") {
    std::string text = "timestamp,frequency\n";
    for (int i = 0; i < 900; ++i) {
        text += std::to_string(i) + ",";
        text += i == 450 ? "" : "50.0";
        text += "\n";
    }
    const auto result = parse_frequency_csv(text);
    CHECK(result.samples.size() == 899);
    CHECK(result.rows_dropped == 1);
}

TEST_CASE("parse_frequency_csv sorts by timestamp") {
    const auto result =
        parse_frequency_csv("timestamp,frequency\n5,50.5\n1,50.1\n3,50.3\n");
    REQUIRE(result.samples.size() == 3);
    CHECK(result.samples[0].timestamp == 1);
    CHECK(result.samples[1].timestamp == 3);
    CHECK(result.samples[2].timestamp == 5);
    CHECK(result.samples[0].frequency == doctest::Approx(50.1));
}

TEST_CASE("parse_frequency_csv keeps the first duplicate") {
    const auto result =
        parse_frequency_csv("timestamp,frequency\n1,50.1\n1,50.9\n2,50.2\n");
    REQUIRE(result.samples.size() == 2);
    CHECK(result.samples[0].frequency == doctest::Approx(50.1));
    CHECK(result.duplicates_dropped == 1);
}

TEST_CASE("parse_frequency_csv error paths") {
    CHECK_THROWS_AS(parse_frequency_csv("a,b\n1,2\n"), DataError);       // bad header
    CHECK_THROWS_AS(parse_frequency_csv("timestamp,frequency\nx,y\n"), DataError);
    CHECK_THROWS_AS(parse_frequency_csv("timestamp,frequency\n1,nan\n"), DataError);
}

TEST_CASE("segment_chunks partitions contiguous data exactly") {
    const auto result = segment_chunks(contiguous(0, 1800), 900, 50.0);
    CHECK(result.chunks.size() == 2);
    CHECK(result.chunks_skipped == 0);
    CHECK(result.chunks[0].chunk_id == "19700101T000000");
    CHECK(result.chunks[1].chunk_id == "19700101T001500");
}

TEST_CASE("segment_chunks skips windows with a missing sample") {
    auto samples = contiguous(0, 1800);
    samples.erase(samples.begin() + 400);
    const auto result = segment_chunks(samples, 900, 50.0);
    REQUIRE(result.chunks.size() == 1);
    CHECK(result.chunks[0].samples.front().timestamp == 900);
    CHECK(result.chunks_skipped == 1);
}

TEST_CASE("segment_chunks needs a full window") {
    CHECK(segment_chunks(contiguous(0, 899), 900, 50.0).chunks.empty());
}

TEST_CASE("segment_chunks aligns windows to the day boundary") {
    // Start mid-window: 09:07:30 on 2024-01-01; first full aligned window
    // begins at 09:15:00.
    const std::int64_t start = 19723 * 86400 + 9 * 3600 + 7 * 60 + 30;
    const auto result = segment_chunks(contiguous(start, 2000), 900, 50.0);
    REQUIRE(!result.chunks.empty());
    CHECK(result.chunks[0].chunk_id == "20240101T091500");
    CHECK(result.chunks[0].samples.front().timestamp % 900 == 0);
}

TEST_CASE("segment_chunks never emits a gap") {
    std::mt19937_64 rng(7);
    auto samples = contiguous(0, 5000);
    // Punch random holes.
    for (int k = 0; k < 40; ++k)
        samples.erase(samples.begin() +
                      static_cast<std::ptrdiff_t>(rng() % samples.size()));
    const auto result = segment_chunks(samples, 900, 50.0);
    for (const auto& chunk : result.chunks) {
        REQUIRE(chunk.samples.size() == 900);
        for (std::size_t i = 1; i < chunk.samples.size(); ++i)
            CHECK(chunk.samples[i].timestamp - chunk.samples[i - 1].timestamp == 1);
    }
}

TEST_CASE("to_angular converts deviations") {
    FrequencyChunk chunk{contiguous(0, 10, 50.0), 50.0, "c"};
    CHECK(to_angular(chunk).omega.cwiseAbs().maxCoeff() == 0.0);

    for (auto& s : chunk.samples) s.frequency = 50.1;
    const auto up = to_angular(chunk);
    CHECK(up.omega[0] == doctest::Approx(0.6283185307).epsilon(1e-9));

    FrequencyChunk sk{contiguous(0, 10, 59.9), 60.0, "c"};
    const auto down = to_angular(sk);
    CHECK(down.omega[0] == doctest::Approx(-0.6283185307).epsilon(1e-9));
    CHECK(down.omega[0] == doctest::Approx(-up.omega[0]));
}

TEST_CASE("to_angular is affine: omega of the mean is the mean of omegas") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    FrequencyChunk a{contiguous(0, 64), 50.0, "a"};
    FrequencyChunk b{contiguous(0, 64), 50.0, "b"};
    FrequencyChunk mean{contiguous(0, 64), 50.0, "m"};
    for (std::size_t i = 0; i < 64; ++i) {
        a.samples[i].frequency = 50.0 + jitter(rng);
        b.samples[i].frequency = 50.0 + jitter(rng);
        mean.samples[i].frequency =
            0.5 * (a.samples[i].frequency + b.samples[i].frequency);
    }
    const auto oa = to_angular(a).omega;
    const auto ob = to_angular(b).omega;
    const auto om = to_angular(mean).omega;
    CHECK((om - 0.5 * (oa + ob)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frequency round-trips through omega at machine precision") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    FrequencyChunk chunk{contiguous(0, 128), 60.0, "c"};
    for (auto& s : chunk.samples) s.frequency = 60.0 + jitter(rng);
    const auto ang = to_angular(chunk);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < chunk.samples.size(); ++i) {
        const double f = chunk.f_ref + ang.omega[static_cast<Eigen::Index>(i)] / two_pi;
        CHECK(f == doctest::Approx(chunk.samples[i].frequency).epsilon(1e-15));
    }
}

TEST_CASE("chunk validation catches gaps and non-finite values") {
    FrequencyChunk chunk{contiguous(0, 10), 50.0, "c"};
    chunk.samples[5].timestamp = 99;
    CHECK_THROWS_AS(chunk.validate(), DataError);
    chunk = {contiguous(0, 10), 50.0, "c"};
    chunk.samples[3].frequency = std::nan("");
    CHECK_THROWS_AS(chunk.validate(), DataError);
}
