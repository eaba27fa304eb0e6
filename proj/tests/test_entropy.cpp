#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "wavebench/entropy.hpp"
#include "wavebench/ingest.hpp"
#include "wavebench/wav.hpp"

#include "test_support.hpp"

using namespace wavebench;
using testsupport::TempDir;

TEST_CASE("histogram counts occurrences over the code range", "[entropy]") {
    ChannelBuffer ch{"x", {0, 0, 5}, std::nullopt};
    const Histogram h = histogram(ch, 16);
    REQUIRE(h.total == 3);
    REQUIRE(h.count_of(0) == 2);
    REQUIRE(h.count_of(5) == 1);
    REQUIRE(h.count_of(1) == 0);
    REQUIRE(h.counts.size() == 65536);
}

TEST_CASE("empty channel yields the zero histogram", "[entropy]") {
    ChannelBuffer ch{"x", {}, std::nullopt};
    const Histogram h = histogram(ch, 16);
    REQUIRE(h.total == 0);
    for (auto c : h.counts) REQUIRE(c == 0);
}

TEST_CASE("merge is commutative with the zero histogram as identity", "[entropy]") {
    const Histogram a = histogram(ChannelBuffer{"a", {1, 2, 2, -7}, std::nullopt}, 16);
    const Histogram b = histogram(ChannelBuffer{"b", {2, 3}, std::nullopt}, 16);
    const Histogram zero = Histogram::zero(16);

    const Histogram az = merge(a, zero);
    REQUIRE(az.counts == a.counts);
    REQUIRE(az.total == a.total);

    const Histogram ab = merge(a, b);
    const Histogram ba = merge(b, a);
    REQUIRE(ab.counts == ba.counts);
    REQUIRE(ab.total == ba.total);
}

TEST_CASE("merge rejects mismatched bit depths", "[entropy]") {
    REQUIRE_THROWS_AS(merge(Histogram::zero(16), Histogram::zero(24)), MergeError);
}

TEST_CASE("histogram of concatenation equals merge of histograms", "[entropy][property]") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int32_t> dist(-32768, 32767);
    std::uniform_int_distribution<std::size_t> len(0, 400);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::int32_t> x(len(rng));
        std::vector<std::int32_t> y(len(rng));
        for (auto& v : x) v = dist(rng);
        for (auto& v : y) v = dist(rng);
        std::vector<std::int32_t> xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        const Histogram merged = merge(histogram(std::span<const std::int32_t>(x), 16),
                                       histogram(std::span<const std::int32_t>(y), 16));
        const Histogram whole = histogram(std::span<const std::int32_t>(xy), 16);
        REQUIRE(merged.counts == whole.counts);
        REQUIRE(merged.total == whole.total);
    }
}

TEST_CASE("entropy of known distributions", "[entropy]") {
    // constant signal: single outcome, zero bits
    Histogram constant = Histogram::zero(16);
    constant.add(42, 1000);
    REQUIRE(entropy(constant) == 0.0);

    // exactly uniform over all 2^16 codes: 16 bits
    Histogram uniform = Histogram::zero(16);
    for (auto& c : uniform.counts) c = 3;
    uniform.total = 3ull * 65536;
    REQUIRE(entropy(uniform) == 16.0);

    // counts {a:1, b:1, c:2} -> -(1/4 log 1/4 + 1/4 log 1/4 + 1/2 log 1/2) = 1.5
    Histogram mixed = Histogram::zero(16);
    mixed.add(-5, 1);
    mixed.add(0, 1);
    mixed.add(9, 2);
    REQUIRE(entropy(mixed) == 1.5);
}

TEST_CASE("entropy of an empty histogram is an error", "[entropy]") {
    REQUIRE_THROWS_AS(entropy(Histogram::zero(16)), UndefinedEntropyError);
    REQUIRE_THROWS_AS(channel_report("x", Histogram::zero(16)), UndefinedEntropyError);
}

TEST_CASE("uniform random counts stay within 5 sigma of the Poisson mean", "[entropy]") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int32_t> dist(-32768, 32767);
    std::vector<std::int32_t> samples(1000000);
    for (auto& v : samples) v = dist(rng);
    const Histogram h = histogram(std::span<const std::int32_t>(samples), 16);
    const double lambda = 1000000.0 / 65536.0;
    const double bound = 5.0 * std::sqrt(lambda);
    for (const auto c : h.counts) {
        REQUIRE(std::abs(static_cast<double>(c) - lambda) <= bound);
    }
}

TEST_CASE("channel_report derives usage/range from observed codes", "[entropy]") {
    Histogram h = Histogram::zero(16);
    h.add(-2);
    h.add(0);
    h.add(3);
    const ChannelReport r = channel_report("x", h);
    REQUIRE(r.unique_values == 3);
    REQUIRE(r.min_observed == -2);
    REQUIRE(r.max_observed == 3);
    REQUIRE(r.usage_pct == Catch::Approx(3.0 / 65536.0 * 100.0));
    REQUIRE(r.range_pct == Catch::Approx(6.0 / 65536.0 * 100.0));
    REQUIRE(r.usage_pct <= r.range_pct);
}

TEST_CASE("full-range uniform reports 100/100 and 16 bits", "[entropy]") {
    Histogram h = Histogram::zero(16);
    for (auto& c : h.counts) c = 1;
    h.total = 65536;
    const ChannelReport r = channel_report("u", h);
    REQUIRE(r.usage_pct == 100.0);
    REQUIRE(r.range_pct == 100.0);
    REQUIRE(r.entropy_bits == 16.0);
    REQUIRE_FALSE(r.under_calibrated());
}

TEST_CASE("usage never exceeds range", "[entropy][property]") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::int32_t> dist(-500, 500);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::int32_t> samples(200);
        for (auto& v : samples) v = dist(rng);
        const Histogram h = histogram(std::span<const std::int32_t>(samples), 16);
        const ChannelReport r = channel_report("x", h);
        REQUIRE(r.usage_pct <= r.range_pct);
        REQUIRE(r.range_pct <= 100.0);
        REQUIRE(r.entropy_bits >= 0.0);
        REQUIRE(r.entropy_bits <= std::log2(static_cast<double>(r.unique_values)) + 1e-9);
    }
}

TEST_CASE("analyze_corpus equals direct analysis for one file", "[entropy]") {
    TempDir tmp;
    const Dataset d = testsupport::random_dataset(4, 500, 2, 16, 1000);
    const auto path = tmp / "one.wav";
    write_pcm_wav(d, path.string());

    const auto loader = [](const std::string& p) { return load_dataset(p); };
    const auto reports = analyze_corpus({path.string()}, loader, 1);
    REQUIRE(reports.size() == 2);
    const Histogram direct = histogram(d.channels[0], 16);
    const ChannelReport expected = channel_report("ch0", direct);
    REQUIRE(reports[0].entropy_bits == expected.entropy_bits);
    REQUIRE(reports[0].unique_values == expected.unique_values);
}

TEST_CASE("analyze_corpus is deterministic across parallelism degrees", "[entropy]") {
    TempDir tmp;
    std::vector<std::string> files;
    for (int i = 0; i < 4; ++i) {
        const Dataset d = testsupport::random_dataset(100 + i, 400, 2, 16, 1000);
        const auto path = tmp / ("f" + std::to_string(i) + ".wav");
        write_pcm_wav(d, path.string());
        files.push_back(path.string());
    }
    const auto loader = [](const std::string& p) { return load_dataset(p); };
    const auto serial = analyze_corpus(files, loader, 1);
    const auto parallel = analyze_corpus(files, loader, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].entropy_bits == parallel[i].entropy_bits);
        REQUIRE(serial[i].unique_values == parallel[i].unique_values);
        REQUIRE(serial[i].usage_pct == parallel[i].usage_pct);
        REQUIRE(serial[i].range_pct == parallel[i].range_pct);
    }
}

TEST_CASE("splitting a stream into files does not change the report", "[entropy]") {
    TempDir tmp;
    const Dataset whole = testsupport::random_dataset(77, 1600, 1, 16, 1000);
    const auto whole_path = tmp / "whole.wav";
    write_pcm_wav(whole, whole_path.string());

    std::vector<std::string> parts;
    for (int i = 0; i < 16; ++i) {
        Dataset part;
        part.bit_depth = 16;
        part.sampling_rate = 1000;
        ChannelBuffer ch;
        ch.name = "ch0";
        ch.samples.assign(whole.channels[0].samples.begin() + i * 100,
                          whole.channels[0].samples.begin() + (i + 1) * 100);
        part.channels.push_back(ch);
        const auto path = tmp / ("part" + std::to_string(i) + ".wav");
        write_pcm_wav(part, path.string());
        parts.push_back(path.string());
    }
    const auto loader = [](const std::string& p) { return load_dataset(p); };
    const auto split_reports = analyze_corpus(parts, loader, 4);
    const auto whole_reports = analyze_corpus({whole_path.string()}, loader, 1);
    REQUIRE(split_reports[0].entropy_bits == whole_reports[0].entropy_bits);
    REQUIRE(split_reports[0].unique_values == whole_reports[0].unique_values);
    REQUIRE(split_reports[0].min_observed == whole_reports[0].min_observed);
    REQUIRE(split_reports[0].max_observed == whole_reports[0].max_observed);
}

TEST_CASE("analyze_corpus names the mismatching file", "[entropy]") {
    TempDir tmp;
    const Dataset a = testsupport::random_dataset(1, 64, 2, 16);
    const Dataset b = testsupport::random_dataset(2, 64, 3, 16);
    const auto pa = tmp / "a.wav";
    const auto pb = tmp / "b.wav";
    write_pcm_wav(a, pa.string());
    write_pcm_wav(b, pb.string());
    const auto loader = [](const std::string& p) { return load_dataset(p); };
    try {
        analyze_corpus({pa.string(), pb.string()}, loader, 2);
        FAIL("expected CorpusError");
    } catch (const CorpusError& e) {
        REQUIRE(std::string(e.what()).find("b.wav") != std::string::npos);
    }
}

TEST_CASE("report csv follows the documented schema", "[entropy]") {
    Histogram h = Histogram::zero(16);
    h.add(0, 7);
    std::ostringstream os;
    write_report_csv(os, "ds", {channel_report("voltage", h)});
    const std::string out = os.str();
    REQUIRE(out.rfind("dataset,channel,values,usage_pct,range_pct,entropy_bits\n", 0) == 0);
    REQUIRE(out.find("ds,voltage,1,") != std::string::npos);
}

TEST_CASE("table output rounds half up and flags under-calibration", "[entropy]") {
    REQUIRE(round_half_up(4.5) == 5);
    REQUIRE(round_half_up(4.49) == 4);
    REQUIRE(round_half_up(-0.5) == 0);

    Histogram h = Histogram::zero(16);
    h.add(0, 5);
    h.add(100, 5);
    const auto table = format_report_table("ds", {channel_report("narrow", h)});
    REQUIRE(table.find("under-calibrated") != std::string::npos);
}

TEST_CASE("histogram dump lists nonzero bins in gnuplot form", "[entropy]") {
    Histogram h = Histogram::zero(16);
    h.add(-3, 2);
    h.add(10, 1);
    std::ostringstream os;
    write_histogram_dump(os, h);
    REQUIRE(os.str() == "-3 2\n10 1\n");
}
