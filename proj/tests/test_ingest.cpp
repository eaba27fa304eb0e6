#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>

#include "wavebench/ingest.hpp"
#include "wavebench/wav.hpp"

#include "test_support.hpp"

using namespace wavebench;
using testsupport::TempDir;

namespace {

void write_bytes(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("read_raw_binary decodes two's complement little-endian", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.raw";
    write_bytes(path, {0x05, 0x00, 0xFB, 0xFF, 0x00, 0x80});
    RawLayout layout;
    layout.sample_width = 2;
    layout.channel_count = 1;
    const Dataset d = read_raw_binary(path.string(), layout, 16, 1000);
    REQUIRE(d.channels.size() == 1);
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{5, -5, -32768});
}

TEST_CASE("read_raw_binary sign-extends 24-bit maxima", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.raw";
    write_bytes(path, {0xFF, 0xFF, 0x7F});
    RawLayout layout;
    layout.sample_width = 3;
    layout.channel_count = 1;
    const Dataset d = read_raw_binary(path.string(), layout, 24, 1000);
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{8388607});
}

TEST_CASE("read_raw_binary rejects misaligned files with the remainder", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.raw";
    write_bytes(path, {1, 2, 3, 4, 5});
    RawLayout layout;
    layout.sample_width = 2;
    layout.channel_count = 1;
    try {
        read_raw_binary(path.string(), layout, 16, 1000);
        FAIL("expected AlignmentError");
    } catch (const AlignmentError& e) {
        REQUIRE(std::string(e.what()).find("1 remainder") != std::string::npos);
    }
}

TEST_CASE("read_raw_binary handles big-endian and column order", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.raw";
    // big-endian 16-bit, column-major, 2 channels x 2 frames:
    // ch0 = [0x0102, 0x0304], ch1 = [-2, 7]
    write_bytes(path, {0x01, 0x02, 0x03, 0x04, 0xFF, 0xFE, 0x00, 0x07});
    RawLayout layout;
    layout.sample_width = 2;
    layout.channel_count = 2;
    layout.byte_order = ByteOrder::big;
    layout.orientation = Orientation::column;
    const Dataset d = read_raw_binary(path.string(), layout, 16, 1000, {"a", "b"});
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{0x0102, 0x0304});
    REQUIRE(d.channels[1].samples == std::vector<std::int32_t>{-2, 7});
    REQUIRE(d.channels[0].name == "a");
}

TEST_CASE("raw binary write/read round-trips", "[ingest]") {
    TempDir tmp;
    const Dataset d = testsupport::random_dataset(11, 257, 3, 16);
    for (const auto orientation : {Orientation::row, Orientation::column}) {
        for (const auto order : {ByteOrder::little, ByteOrder::big}) {
            RawLayout layout;
            layout.sample_width = 2;
            layout.channel_count = 3;
            layout.orientation = orientation;
            layout.byte_order = order;
            const auto path = tmp / "x.raw";
            write_raw_binary(d, path.string(), layout);
            const Dataset back =
                read_raw_binary(path.string(), layout, 16, d.sampling_rate, {"ch0", "ch1", "ch2"});
            for (std::size_t c = 0; c < 3; ++c) {
                REQUIRE(back.channels[c].samples == d.channels[c].samples);
            }
        }
    }
}

TEST_CASE("24-bit sign extension is exact over all codes", "[ingest][exhaustive]") {
    // encode every 24-bit code into 3 bytes, read back through the raw
    // path, compare against the mathematical two's-complement value
    TempDir tmp;
    const auto path = tmp / "all24.raw";
    {
        std::ofstream out(path, std::ios::binary);
        std::vector<char> buf;
        buf.reserve(3 << 16);
        for (std::int64_t code = 0; code < (1 << 24); ++code) {
            buf.push_back(static_cast<char>(code & 0xFF));
            buf.push_back(static_cast<char>((code >> 8) & 0xFF));
            buf.push_back(static_cast<char>((code >> 16) & 0xFF));
            if (buf.size() == (3u << 16)) {
                out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
                buf.clear();
            }
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    RawLayout layout;
    layout.sample_width = 3;
    layout.channel_count = 1;
    const Dataset d = read_raw_binary(path.string(), layout, 24, 1000);
    REQUIRE(d.frames() == (1u << 24));
    bool all_ok = true;
    for (std::int64_t code = 0; code < (1 << 24); ++code) {
        const std::int32_t expected =
            static_cast<std::int32_t>((static_cast<std::uint32_t>(code) << 8)) >> 8;
        if (d.channels[0].samples[static_cast<std::size_t>(code)] != expected) {
            all_ok = false;
            break;
        }
    }
    REQUIRE(all_ok);
}

TEST_CASE("read_csv_waveform loads integer frames", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "1,100\n2,-100\n");
    CsvSpec spec;
    spec.columns = {{CsvColumn::Kind::timestamp, "", 0.0},
                    {CsvColumn::Kind::integer, "current", 0.0}};
    spec.bit_depth = 16;
    const Dataset d = read_csv_waveform(path.string(), spec);
    REQUIRE(d.channels.size() == 1); // timestamp column discarded
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{100, -100});
}

TEST_CASE("read_csv_waveform reports parse errors with the row number", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "abc,1\n");
    CsvSpec spec;
    spec.columns = {{CsvColumn::Kind::integer, "x", 0.0}, {CsvColumn::Kind::integer, "y", 0.0}};
    try {
        read_csv_waveform(path.string(), spec);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("row 1") != std::string::npos);
    }
}

TEST_CASE("read_csv_waveform flags reals in integer columns as type errors", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "5\n230.05\n");
    CsvSpec spec;
    spec.columns = {{CsvColumn::Kind::integer, "x", 0.0}};
    REQUIRE_THROWS_AS(read_csv_waveform(path.string(), spec), TypeError);
}

TEST_CASE("read_csv_waveform decalibrates real columns", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "230.05\n-12.34\n");
    CsvSpec spec;
    spec.columns = {{CsvColumn::Kind::real, "voltage", 0.01}};
    const Dataset d = read_csv_waveform(path.string(), spec);
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{23005, -1234});
    REQUIRE(d.channels[0].calibration == 0.01);
}

TEST_CASE("read_csv_waveform rejects ragged rows", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "1,2\n3\n");
    CsvSpec spec;
    spec.columns = {{CsvColumn::Kind::integer, "x", 0.0}, {CsvColumn::Kind::integer, "y", 0.0}};
    try {
        read_csv_waveform(path.string(), spec);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("csv header rows are skipped when declared", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "a.csv";
    write_text(path, "t,current\n1,5\n");
    CsvSpec spec;
    spec.has_header = true;
    spec.columns = {{CsvColumn::Kind::timestamp, "", 0.0},
                    {CsvColumn::Kind::integer, "current", 0.0}};
    const Dataset d = read_csv_waveform(path.string(), spec);
    REQUIRE(d.channels[0].samples == std::vector<std::int32_t>{5});
}

TEST_CASE("decalibrate rounds half away from zero", "[ingest]") {
    REQUIRE(decalibrate(std::vector<double>{0.0}, 0.1, 16) == std::vector<std::int32_t>{0});
    REQUIRE(decalibrate(std::vector<double>{2.5, -2.5}, 0.5, 16) ==
            std::vector<std::int32_t>{5, -5});
    // half-step cases
    REQUIRE(decalibrate(std::vector<double>{0.15, -0.15}, 0.1, 16) ==
            std::vector<std::int32_t>{2, -2});
}

TEST_CASE("decalibrate names the offending index on range errors", "[ingest]") {
    try {
        decalibrate(std::vector<double>{0.0, 1e9}, 0.001, 16);
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        REQUIRE(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("calibrate is the exact inverse of decalibrate on integers", "[ingest]") {
    REQUIRE(calibrate(std::vector<std::int32_t>{100}, 0.01) == std::vector<double>{1.0});
    const double cal = 0.037;
    std::vector<std::int32_t> codes;
    for (std::int32_t v = -32768; v <= 32767; v += 97) codes.push_back(v);
    REQUIRE(decalibrate(calibrate(codes, cal), cal, 16) == codes);

    const auto high = calibrate(std::vector<std::int32_t>{23005}, 0.01);
    REQUIRE(std::abs(high[0] - 230.05) < 1e-9);
}

TEST_CASE("calibrate-decalibrate round trip stays within half a step", "[ingest][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(-300.0, 300.0);
    std::uniform_real_distribution<double> cal(0.001, 0.5);
    for (int i = 0; i < 100000; ++i) {
        const double c = cal(rng);
        const double v = value(rng);
        const auto codes = decalibrate(std::vector<double>{v}, c, 24);
        const auto back = calibrate(codes, c);
        REQUIRE(std::abs(back[0] - v) <= c / 2 * (1.0 + 1e-12));
    }
}

TEST_CASE("calibration sidecar loads and applies factors", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "cal.json";
    write_text(path, R"({"channels": {"voltage": {"calibration": 0.01, "units": "V/step"},
                                      "current": {"calibration": 0.005, "units": "A/step"}}})");
    const auto factors = read_calibration_sidecar(path.string());
    REQUIRE(factors.at("voltage") == 0.01);
    REQUIRE(factors.at("current") == 0.005);

    Dataset d = testsupport::constant_dataset(1, 4, 1, 16);
    d.channels[0].name = "voltage";
    apply_calibration_sidecar(d, factors);
    REQUIRE(d.channels[0].calibration == 0.01);
}

TEST_CASE("calibration sidecar rejects non-positive factors", "[ingest]") {
    TempDir tmp;
    const auto path = tmp / "cal.json";
    write_text(path, R"({"channels": {"voltage": {"calibration": -1.0}}})");
    REQUIRE_THROWS_AS(read_calibration_sidecar(path.string()), RangeError);
}

TEST_CASE("raw meta sidecar round-trips", "[ingest]") {
    TempDir tmp;
    const auto raw = tmp / "d.raw";
    RawMeta meta;
    meta.layout.sample_width = 3;
    meta.layout.channel_count = 2;
    meta.layout.orientation = Orientation::column;
    meta.bit_depth = 24;
    meta.sampling_rate = 16000;
    meta.channel_names = {"voltage", "current"};
    meta.calibration["voltage"] = 0.02;
    write_raw_meta(raw.string(), meta);
    const RawMeta back = read_raw_meta(raw_meta_path(raw.string()));
    REQUIRE(back.layout.sample_width == 3);
    REQUIRE(back.layout.channel_count == 2);
    REQUIRE(back.layout.orientation == Orientation::column);
    REQUIRE(back.bit_depth == 24);
    REQUIRE(back.sampling_rate == 16000);
    REQUIRE(back.channel_names == meta.channel_names);
    REQUIRE(back.calibration.at("voltage") == 0.02);
}

TEST_CASE("load_dataset dispatches by extension and sidecar", "[ingest]") {
    TempDir tmp;
    const Dataset d = testsupport::random_dataset(3, 64, 2, 16, 8000);

    const auto wav = tmp / "a.wav";
    write_pcm_wav(d, wav.string());
    const Dataset from_wav = load_dataset(wav.string());
    REQUIRE(from_wav.channels[0].samples == d.channels[0].samples);

    const auto raw = tmp / "a.raw";
    RawLayout layout;
    layout.sample_width = 2;
    layout.channel_count = 2;
    write_raw_binary(d, raw.string(), layout);
    RawMeta meta;
    meta.layout = layout;
    meta.bit_depth = 16;
    meta.sampling_rate = 8000;
    meta.channel_names = {"ch0", "ch1"};
    write_raw_meta(raw.string(), meta);
    const Dataset from_raw = load_dataset(raw.string());
    REQUIRE(from_raw.channels[1].samples == d.channels[1].samples);
    REQUIRE(from_raw.sampling_rate == 8000);

    REQUIRE_THROWS_AS(load_dataset((tmp / "missing.raw").string()), Error);
}

TEST_CASE("frame windows match whole-file loads", "[ingest]") {
    TempDir tmp;
    const Dataset d = testsupport::random_dataset(5, 301, 2, 16, 8000);

    const auto wav = tmp / "w.wav";
    write_pcm_wav(d, wav.string());
    const auto probe = probe_file(wav.string());
    REQUIRE(probe.frames == 301);
    REQUIRE(probe.channel_names.size() == 2);

    const Dataset window = read_frame_window(wav.string(), {}, 100, 50);
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t f = 0; f < 50; ++f) {
            REQUIRE(window.channels[c].samples[f] == d.channels[c].samples[100 + f]);
        }
    }

    for (const auto orientation : {Orientation::row, Orientation::column}) {
        const auto raw = tmp / "w.raw";
        RawLayout layout;
        layout.sample_width = 2;
        layout.channel_count = 2;
        layout.orientation = orientation;
        write_raw_binary(d, raw.string(), layout);
        RawMeta meta;
        meta.layout = layout;
        meta.bit_depth = 16;
        meta.sampling_rate = 8000;
        write_raw_meta(raw.string(), meta);
        const Dataset rw = read_frame_window(raw.string(), {}, 37, 99);
        for (std::size_t c = 0; c < 2; ++c) {
            for (std::size_t f = 0; f < 99; ++f) {
                REQUIRE(rw.channels[c].samples[f] == d.channels[c].samples[37 + f]);
            }
        }
    }

    REQUIRE_THROWS_AS(read_frame_window(wav.string(), {}, 300, 2), RangeError);
}
