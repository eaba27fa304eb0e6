#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"
#include "wavebench/wav.hpp"

namespace wavebench {

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

/// Physical reals -> raw ADC codes: v_i = round(values_i / calibration),
/// rounded half away from zero (symmetric around zero for bipolar ADCs).
/// Every result must fit the bit-depth range.
inline std::vector<std::int32_t> decalibrate(std::span<const double> values, double calibration,
                                             int bit_depth) {
    if (!(calibration > 0.0) || !std::isfinite(calibration)) {
        throw RangeError("calibration factor must be positive and finite");
    }
    const std::int64_t lo = code_min(bit_depth);
    const std::int64_t hi = code_max(bit_depth);
    std::vector<std::int32_t> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double scaled = values[i] / calibration;
        if (!std::isfinite(scaled)) {
            throw RangeError("value at index " + std::to_string(i) + " is not finite");
        }
        const auto code = std::llround(scaled); // rounds half away from zero
        if (code < lo || code > hi) {
            throw RangeError("value at index " + std::to_string(i) + " decalibrates to " +
                             std::to_string(code) + ", outside the " + std::to_string(bit_depth) +
                             "-bit ADC range");
        }
        out.push_back(static_cast<std::int32_t>(code));
    }
    return out;
}

/// Raw ADC codes -> physical reals: v_i * calibration. Exact inverse of
/// decalibrate on integer inputs.
inline std::vector<double> calibrate(std::span<const std::int32_t> values, double calibration) {
    if (!(calibration > 0.0) || !std::isfinite(calibration)) {
        throw RangeError("calibration factor must be positive and finite");
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (std::int32_t v : values) {
        const double r = static_cast<double>(v) * calibration;
        if (!std::isfinite(r)) {
            throw RangeError("calibrated value is not representable");
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Raw binary
// ---------------------------------------------------------------------------

/// Reads a headerless raw binary file of signed two's-complement samples.
/// 24-bit values stored in 3 bytes are sign-extended into int32.
inline Dataset read_raw_binary(const std::string& path, const RawLayout& layout, int bit_depth,
                               std::uint32_t sampling_rate,
                               const std::vector<std::string>& channel_names = {}) {
    if (!valid_bit_depth(bit_depth)) throw RangeError("bit depth must be 16 or 24");
    layout.validate(bit_depth);
    const std::vector<std::uint8_t> bytes = read_file_bytes(path);
    const std::size_t frame_bytes =
        static_cast<std::size_t>(layout.sample_width) * layout.channel_count;
    const std::size_t remainder = bytes.size() % frame_bytes;
    if (remainder != 0) {
        throw AlignmentError("file '" + path + "' is not frame-aligned: " +
                             std::to_string(remainder) + " remainder bytes after " +
                             std::to_string(bytes.size() / frame_bytes) + " frames");
    }
    const std::size_t frames = bytes.size() / frame_bytes;
    const std::size_t nch = layout.channel_count;

    Dataset d;
    d.bit_depth = bit_depth;
    d.sampling_rate = sampling_rate;
    d.source_id = path;
    d.channels.resize(nch);
    for (std::size_t c = 0; c < nch; ++c) {
        d.channels[c].name =
            c < channel_names.size() ? channel_names[c] : "ch" + std::to_string(c);
        d.channels[c].samples.resize(frames);
    }

    const int width = layout.sample_width;
    auto decode_at = [&](std::size_t off) -> std::int32_t {
        std::uint32_t u = 0;
        for (int b = 0; b < width; ++b) {
            const int shift = layout.byte_order == ByteOrder::little ? 8 * b : 8 * (width - 1 - b);
            u |= static_cast<std::uint32_t>(bytes[off + static_cast<std::size_t>(b)]) << shift;
        }
        const std::uint32_t sign_bit = 1u << (width * 8 - 1);
        if (u & sign_bit) u |= ~((sign_bit << 1) - 1);
        return static_cast<std::int32_t>(u);
    };

    if (layout.orientation == Orientation::row) {
        std::size_t off = 0;
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t c = 0; c < nch; ++c) {
                d.channels[c].samples[f] = decode_at(off);
                off += static_cast<std::size_t>(width);
            }
        }
    } else {
        std::size_t off = 0;
        for (std::size_t c = 0; c < nch; ++c) {
            for (std::size_t f = 0; f < frames; ++f) {
                d.channels[c].samples[f] = decode_at(off);
                off += static_cast<std::size_t>(width);
            }
        }
    }
    return d;
}

inline void write_raw_binary(const Dataset& d, const std::string& path, const RawLayout& layout) {
    layout.validate(d.bit_depth);
    if (layout.channel_count != d.channels.size()) {
        throw LayoutError("layout channel count does not match the dataset");
    }
    const int width = layout.sample_width;
    const std::size_t frames = d.frames();
    const std::size_t nch = d.channels.size();
    std::vector<std::uint8_t> bytes;
    bytes.reserve(frames * nch * static_cast<std::size_t>(width));
    auto emit = [&](std::int32_t v) {
        const auto u = static_cast<std::uint32_t>(v);
        for (int b = 0; b < width; ++b) {
            const int shift = layout.byte_order == ByteOrder::little ? 8 * b : 8 * (width - 1 - b);
            bytes.push_back(static_cast<std::uint8_t>(u >> shift));
        }
    };
    if (layout.orientation == Orientation::row) {
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t c = 0; c < nch; ++c) emit(d.channels[c].samples[f]);
        }
    } else {
        for (std::size_t c = 0; c < nch; ++c) {
            for (std::size_t f = 0; f < frames; ++f) emit(d.channels[c].samples[f]);
        }
    }
    write_file_bytes(path, bytes);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// What one CSV column holds. Timestamp columns are parsed and discarded
/// (observed real-world time does not affect any algorithm under test).
struct CsvColumn {
    enum class Kind { timestamp, integer, real };
    Kind kind = Kind::integer;
    std::string name;          // channel name for integer/real columns
    double calibration = 0.0;  // required for real columns (units per step)
};

struct CsvSpec {
    std::vector<CsvColumn> columns;
    int bit_depth = 16;
    std::uint32_t sampling_rate = 0;
    bool has_header = false;
};

namespace ingest_detail {

inline bool looks_integer(const std::string& tok) {
    std::size_t i = (tok.size() > 0 && (tok[0] == '+' || tok[0] == '-')) ? 1 : 0;
    if (i >= tok.size()) return false;
    for (; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    }
    return true;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace ingest_detail

/// Reads a one-frame-per-line CSV per the declared column mapping. Integer
/// columns load directly as ADC codes; real columns are decalibrated with
/// their column calibration factor.
inline Dataset read_csv_waveform(const std::string& path, const CsvSpec& spec) {
    if (!valid_bit_depth(spec.bit_depth)) throw RangeError("bit depth must be 16 or 24");
    for (const auto& col : spec.columns) {
        if (col.kind == CsvColumn::Kind::real &&
            (!(col.calibration > 0.0) || !std::isfinite(col.calibration))) {
            throw RangeError("real column '" + col.name + "' requires a positive calibration factor");
        }
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    std::vector<std::vector<std::int64_t>> int_cols(spec.columns.size());
    std::vector<std::vector<double>> real_cols(spec.columns.size());

    std::string line;
    std::size_t row = 0;
    bool header_pending = spec.has_header;
    while (std::getline(in, line)) {
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (line.empty() || line == "\r") continue;
        ++row;
        const auto tokens = ingest_detail::split_csv_line(line);
        if (tokens.size() != spec.columns.size()) {
            throw ParseError("row " + std::to_string(row) + " has " +
                             std::to_string(tokens.size()) + " columns, expected " +
                             std::to_string(spec.columns.size()));
        }
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            const auto& col = spec.columns[c];
            const std::string& tok = tokens[c];
            if (col.kind == CsvColumn::Kind::timestamp) {
                if (tok.empty()) {
                    throw ParseError("empty timestamp at row " + std::to_string(row));
                }
                continue; // discarded
            }
            if (col.kind == CsvColumn::Kind::integer) {
                if (!ingest_detail::looks_integer(tok)) {
                    // a parseable real in an integer column is a schema violation
                    double probe = 0.0;
                    const auto* first = tok.data();
                    const auto* last = tok.data() + tok.size();
                    const auto rc = std::from_chars(first, last, probe);
                    if (rc.ec == std::errc() && rc.ptr == last) {
                        throw TypeError("column '" + col.name + "' is declared integer but row " +
                                        std::to_string(row) + " holds the real value '" + tok + "'");
                    }
                    throw ParseError("cannot parse '" + tok + "' at row " + std::to_string(row));
                }
                std::int64_t v = 0;
                const auto rc = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (rc.ec != std::errc()) {
                    throw ParseError("cannot parse '" + tok + "' at row " + std::to_string(row));
                }
                if (v < code_min(spec.bit_depth) || v > code_max(spec.bit_depth)) {
                    throw RangeError("value " + tok + " at row " + std::to_string(row) +
                                     " is outside the " + std::to_string(spec.bit_depth) +
                                     "-bit ADC range");
                }
                int_cols[c].push_back(v);
            } else {
                double v = 0.0;
                const auto* first = tok.data();
                const auto* last = tok.data() + tok.size();
                const auto rc = std::from_chars(first, last, v);
                if (rc.ec != std::errc() || rc.ptr != last) {
                    throw ParseError("cannot parse '" + tok + "' at row " + std::to_string(row));
                }
                real_cols[c].push_back(v);
            }
        }
    }

    Dataset d;
    d.bit_depth = spec.bit_depth;
    d.sampling_rate = spec.sampling_rate;
    d.source_id = path;
    for (std::size_t c = 0; c < spec.columns.size(); ++c) {
        const auto& col = spec.columns[c];
        if (col.kind == CsvColumn::Kind::timestamp) continue;
        ChannelBuffer ch;
        ch.name = col.name;
        if (col.kind == CsvColumn::Kind::integer) {
            ch.samples.reserve(int_cols[c].size());
            for (std::int64_t v : int_cols[c]) ch.samples.push_back(static_cast<std::int32_t>(v));
        } else {
            ch.samples = decalibrate(real_cols[c], col.calibration, spec.bit_depth);
            ch.calibration = col.calibration;
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Sidecar files
// ---------------------------------------------------------------------------

/// Calibration sidecar schema (JSON): {"channels": {"<name>": {"calibration":
/// <units per step>, "units": "<unit string>"}}}. Units are informational.
inline std::map<std::string, double> read_calibration_sidecar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open calibration sidecar '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("calibration sidecar '" + path + "': " + e.what());
    }
    std::map<std::string, double> out;
    if (!j.contains("channels") || !j["channels"].is_object()) {
        throw ParseError("calibration sidecar '" + path + "' lacks a channels object");
    }
    for (auto& [name, entry] : j["channels"].items()) {
        if (!entry.contains("calibration")) {
            throw ParseError("calibration sidecar entry '" + name + "' lacks a calibration factor");
        }
        const double cal = entry["calibration"].get<double>();
        if (!(cal > 0.0) || !std::isfinite(cal)) {
            throw RangeError("calibration for channel '" + name + "' must be positive and finite");
        }
        out[name] = cal;
    }
    return out;
}

inline void apply_calibration_sidecar(Dataset& d, const std::map<std::string, double>& factors) {
    for (auto& ch : d.channels) {
        const auto it = factors.find(ch.name);
        if (it != factors.end()) ch.calibration = it->second;
    }
}

/// Raw files are headerless; `<file>.meta.json` describes them:
/// {"byte_order","sample_width","orientation","channel_count",
///  "channel_names","sampling_rate","bit_depth","calibration"}.
struct RawMeta {
    RawLayout layout;
    int bit_depth = 16;
    std::uint32_t sampling_rate = 0;
    std::vector<std::string> channel_names;
    std::map<std::string, double> calibration;
};

inline std::string raw_meta_path(const std::string& raw_path) { return raw_path + ".meta.json"; }

inline void write_raw_meta(const std::string& raw_path, const RawMeta& meta) {
    nlohmann::json j;
    j["byte_order"] = meta.layout.byte_order == ByteOrder::little ? "little" : "big";
    j["sample_width"] = meta.layout.sample_width;
    j["orientation"] = to_string(meta.layout.orientation);
    j["channel_count"] = meta.layout.channel_count;
    j["channel_names"] = meta.channel_names;
    j["sampling_rate"] = meta.sampling_rate;
    j["bit_depth"] = meta.bit_depth;
    if (!meta.calibration.empty()) j["calibration"] = meta.calibration;
    std::ofstream out(raw_meta_path(raw_path), std::ios::trunc);
    if (!out) throw IoError("cannot write '" + raw_meta_path(raw_path) + "'");
    out << j.dump(2) << '\n';
}

inline RawMeta read_raw_meta(const std::string& meta_path) {
    std::ifstream in(meta_path);
    if (!in) throw IoError("cannot open raw meta sidecar '" + meta_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("raw meta sidecar '" + meta_path + "': " + e.what());
    }
    RawMeta m;
    try {
        m.layout.byte_order =
            j.value("byte_order", "little") == std::string("big") ? ByteOrder::big : ByteOrder::little;
        m.layout.sample_width = j.value("sample_width", 2);
        m.layout.orientation = orientation_from_string(j.value("orientation", "row"));
        m.layout.channel_count = j.value("channel_count", std::size_t{1});
        m.channel_names = j.value("channel_names", std::vector<std::string>{});
        m.sampling_rate = j.value("sampling_rate", 0u);
        m.bit_depth = j.value("bit_depth", m.layout.sample_width * 8);
        if (j.contains("calibration")) {
            m.calibration = j["calibration"].get<std::map<std::string, double>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("raw meta sidecar '" + meta_path + "': " + e.what());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Format dispatch
// ---------------------------------------------------------------------------

enum class FileFormat { autodetect, wav, raw, csv };

/// Everything needed to load any supported on-disk format. Raw parameters
/// may come from flags or from the meta sidecar; CSV needs a column spec.
struct LoadOptions {
    FileFormat format = FileFormat::autodetect;
    std::optional<RawMeta> raw;
    std::optional<CsvSpec> csv;
    std::optional<std::string> calibration_sidecar;
};

inline Dataset load_dataset(const std::string& path, const LoadOptions& options = {}) {
    FileFormat fmt = options.format;
    if (fmt == FileFormat::autodetect) {
        const std::string ext = std::filesystem::path(path).extension().string();
        if (ext == ".wav") {
            fmt = FileFormat::wav;
        } else if (ext == ".csv") {
            fmt = FileFormat::csv;
        } else {
            fmt = FileFormat::raw;
        }
    }
    Dataset d;
    switch (fmt) {
        case FileFormat::wav:
            d = read_pcm_wav(path);
            break;
        case FileFormat::csv: {
            if (!options.csv) throw ParseError("CSV ingestion requires a column spec");
            d = read_csv_waveform(path, *options.csv);
            break;
        }
        case FileFormat::raw: {
            RawMeta meta;
            if (options.raw) {
                meta = *options.raw;
            } else if (std::filesystem::exists(raw_meta_path(path))) {
                meta = read_raw_meta(raw_meta_path(path));
            } else {
                throw ParseError("raw file '" + path +
                                 "' has no meta sidecar and no layout was given");
            }
            d = read_raw_binary(path, meta.layout, meta.bit_depth, meta.sampling_rate,
                                meta.channel_names);
            if (!meta.calibration.empty()) apply_calibration_sidecar(d, meta.calibration);
            break;
        }
        case FileFormat::autodetect:
            break; // unreachable
    }
    if (options.calibration_sidecar) {
        apply_calibration_sidecar(d, read_calibration_sidecar(*options.calibration_sidecar));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Frame-window access (for chunked processing without whole-file loads)
// ---------------------------------------------------------------------------

/// Cheap per-file facts: frame count and channel schema, read from headers
/// and file sizes only (CSV needs a full parse).
struct FileProbe {
    std::size_t frames = 0;
    std::vector<std::string> channel_names;
    int bit_depth = 16;
    std::uint32_t sampling_rate = 0;
};

namespace ingest_detail {

inline FileFormat resolve_format(const std::string& path, const LoadOptions& options) {
    if (options.format != FileFormat::autodetect) return options.format;
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".wav") return FileFormat::wav;
    if (ext == ".csv") return FileFormat::csv;
    return FileFormat::raw;
}

inline RawMeta resolve_raw_meta(const std::string& path, const LoadOptions& options) {
    if (options.raw) return *options.raw;
    if (std::filesystem::exists(raw_meta_path(path))) return read_raw_meta(raw_meta_path(path));
    throw ParseError("raw file '" + path + "' has no meta sidecar and no layout was given");
}

} // namespace ingest_detail

inline FileProbe probe_file(const std::string& path, const LoadOptions& options = {}) {
    const FileFormat fmt = ingest_detail::resolve_format(path, options);
    FileProbe probe;
    switch (fmt) {
        case FileFormat::wav: {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw IoError("cannot open '" + path + "' for reading");
            const WavInfo info = scan_wav_header(in, path);
            probe.frames = static_cast<std::size_t>(info.frames);
            probe.bit_depth = info.bits_per_sample;
            probe.sampling_rate = info.sample_rate;
            for (std::size_t c = 0; c < info.channels; ++c) {
                probe.channel_names.push_back("ch" + std::to_string(c));
            }
            break;
        }
        case FileFormat::raw: {
            const RawMeta meta = ingest_detail::resolve_raw_meta(path, options);
            meta.layout.validate(meta.bit_depth);
            const auto size = std::filesystem::file_size(path);
            const std::size_t frame_bytes =
                static_cast<std::size_t>(meta.layout.sample_width) * meta.layout.channel_count;
            if (size % frame_bytes != 0) {
                throw AlignmentError("file '" + path + "' is not frame-aligned: " +
                                     std::to_string(size % frame_bytes) + " remainder bytes");
            }
            probe.frames = static_cast<std::size_t>(size / frame_bytes);
            probe.bit_depth = meta.bit_depth;
            probe.sampling_rate = meta.sampling_rate;
            for (std::size_t c = 0; c < meta.layout.channel_count; ++c) {
                probe.channel_names.push_back(c < meta.channel_names.size()
                                                  ? meta.channel_names[c]
                                                  : "ch" + std::to_string(c));
            }
            break;
        }
        case FileFormat::csv: {
            const Dataset d = load_dataset(path, options);
            probe.frames = d.frames();
            probe.bit_depth = d.bit_depth;
            probe.sampling_rate = d.sampling_rate;
            for (const auto& ch : d.channels) probe.channel_names.push_back(ch.name);
            break;
        }
        case FileFormat::autodetect:
            break; // unreachable
    }
    return probe;
}

/// Loads frames [start, start+count) of a file, reading only the touched
/// byte range for wav and raw inputs. CSV falls back to a full parse.
inline Dataset read_frame_window(const std::string& path, const LoadOptions& options,
                                 std::size_t start, std::size_t count) {
    const FileFormat fmt = ingest_detail::resolve_format(path, options);

    if (fmt == FileFormat::csv) {
        Dataset d = load_dataset(path, options);
        if (start + count > d.frames()) throw RangeError("frame window exceeds file length");
        for (auto& ch : d.channels) {
            std::vector<std::int32_t> slice(
                ch.samples.begin() + static_cast<std::ptrdiff_t>(start),
                ch.samples.begin() + static_cast<std::ptrdiff_t>(start + count));
            ch.samples = std::move(slice);
        }
        return d;
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    auto read_block = [&](std::uint64_t offset, std::size_t bytes) {
        std::vector<std::uint8_t> buf(bytes);
        in.seekg(static_cast<std::streamoff>(offset), std::ios::beg);
        if (bytes > 0 && !in.read(reinterpret_cast<char*>(buf.data()),
                                  static_cast<std::streamsize>(bytes))) {
            throw IoError("failed to read " + std::to_string(bytes) + " bytes from '" + path + "'");
        }
        return buf;
    };

    auto decode_block = [](const std::vector<std::uint8_t>& buf, int width, ByteOrder order,
                           std::vector<std::int32_t>& out) {
        const std::size_t n = buf.size() / static_cast<std::size_t>(width);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t u = 0;
            for (int b = 0; b < width; ++b) {
                const int shift = order == ByteOrder::little ? 8 * b : 8 * (width - 1 - b);
                u |= static_cast<std::uint32_t>(buf[i * static_cast<std::size_t>(width) +
                                                    static_cast<std::size_t>(b)])
                     << shift;
            }
            const std::uint32_t sign_bit = 1u << (width * 8 - 1);
            if (u & sign_bit) u |= ~((sign_bit << 1) - 1);
            out[i] = static_cast<std::int32_t>(u);
        }
    };

    Dataset d;
    if (fmt == FileFormat::wav) {
        const WavInfo info = scan_wav_header(in, path);
        if (start + count > info.frames) throw RangeError("frame window exceeds file length");
        d.bit_depth = info.bits_per_sample;
        d.sampling_rate = info.sample_rate;
        d.source_id = path;
        const int width = info.bits_per_sample / 8;
        const auto buf = read_block(info.data_pos + static_cast<std::uint64_t>(start) * info.block_align,
                                    count * info.block_align);
        std::vector<std::int32_t> flat;
        decode_block(buf, width, ByteOrder::little, flat);
        d.channels.resize(info.channels);
        for (std::size_t c = 0; c < info.channels; ++c) {
            d.channels[c].name = "ch" + std::to_string(c);
            d.channels[c].samples.resize(count);
            for (std::size_t f = 0; f < count; ++f) {
                d.channels[c].samples[f] = flat[f * info.channels + c];
            }
        }
        return d;
    }

    const RawMeta meta = ingest_detail::resolve_raw_meta(path, options);
    meta.layout.validate(meta.bit_depth);
    const std::size_t width = static_cast<std::size_t>(meta.layout.sample_width);
    const std::size_t nch = meta.layout.channel_count;
    const auto file_size = static_cast<std::uint64_t>(std::filesystem::file_size(path));
    const std::uint64_t total_frames = file_size / (width * nch);
    if (start + count > total_frames) throw RangeError("frame window exceeds file length");

    d.bit_depth = meta.bit_depth;
    d.sampling_rate = meta.sampling_rate;
    d.source_id = path;
    d.channels.resize(nch);
    for (std::size_t c = 0; c < nch; ++c) {
        d.channels[c].name =
            c < meta.channel_names.size() ? meta.channel_names[c] : "ch" + std::to_string(c);
    }
    if (meta.layout.orientation == Orientation::row) {
        const auto buf = read_block(static_cast<std::uint64_t>(start) * width * nch,
                                    count * width * nch);
        std::vector<std::int32_t> flat;
        decode_block(buf, static_cast<int>(width), meta.layout.byte_order, flat);
        for (std::size_t c = 0; c < nch; ++c) {
            d.channels[c].samples.resize(count);
            for (std::size_t f = 0; f < count; ++f) {
                d.channels[c].samples[f] = flat[f * nch + c];
            }
        }
    } else {
        for (std::size_t c = 0; c < nch; ++c) {
            const std::uint64_t offset = (c * total_frames + start) * width;
            const auto buf = read_block(offset, count * width);
            decode_block(buf, static_cast<int>(width), meta.layout.byte_order,
                         d.channels[c].samples);
        }
    }
    if (!meta.calibration.empty()) apply_calibration_sidecar(d, meta.calibration);
    return d;
}

} // namespace wavebench
