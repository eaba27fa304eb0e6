#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavebench/errors.hpp"

namespace wavebench {

/// Bipolar ADC code range helpers. Codes live in [-2^(b-1), 2^(b-1) - 1].
constexpr std::int64_t code_min(int bit_depth) {
    return -(std::int64_t{1} << (bit_depth - 1));
}

constexpr std::int64_t code_max(int bit_depth) {
    return (std::int64_t{1} << (bit_depth - 1)) - 1;
}

constexpr std::size_t code_count(int bit_depth) {
    return std::size_t{1} << bit_depth;
}

constexpr bool valid_bit_depth(int bit_depth) {
    return bit_depth == 16 || bit_depth == 24;
}

/// Bytes per sample in the dataset-native raw encoding (2 or 3).
constexpr int native_width(int bit_depth) {
    return bit_depth / 8;
}

enum class ByteOrder { little, big };
enum class Orientation { row, column };

inline std::string to_string(Orientation o) {
    return o == Orientation::row ? "row" : "col";
}

inline Orientation orientation_from_string(const std::string& s) {
    if (s == "row") return Orientation::row;
    if (s == "col" || s == "column") return Orientation::column;
    throw ParseError("unknown orientation: " + s);
}

/// One measurement channel: raw ADC codes plus the optional physical
/// calibration factor (units per ADC step).
struct ChannelBuffer {
    std::string name;
    std::vector<std::int32_t> samples;
    std::optional<double> calibration;
};

/// Multi-channel LPCM sample store. 24-bit samples are widened to int32 in
/// memory; only serialization uses 3 bytes. Immutable by convention after
/// construction.
struct Dataset {
    std::vector<ChannelBuffer> channels;
    std::uint32_t sampling_rate = 0;
    int bit_depth = 16;
    std::string source_id;

    std::size_t frames() const {
        return channels.empty() ? 0 : channels.front().samples.size();
    }

    /// Checks frame alignment, bit depth, sample bounds, and calibration
    /// positivity. Throws on violation.
    void validate() const {
        if (!valid_bit_depth(bit_depth)) {
            throw RangeError("bit depth must be 16 or 24, got " + std::to_string(bit_depth));
        }
        const auto lo = code_min(bit_depth);
        const auto hi = code_max(bit_depth);
        const std::size_t n = frames();
        for (const auto& ch : channels) {
            if (ch.samples.size() != n) {
                throw AlignmentError("channel '" + ch.name + "' has " +
                                     std::to_string(ch.samples.size()) + " samples, expected " +
                                     std::to_string(n));
            }
            if (ch.calibration && (!(*ch.calibration > 0.0) || !std::isfinite(*ch.calibration))) {
                throw RangeError("channel '" + ch.name + "' calibration must be positive and finite");
            }
            for (std::int32_t v : ch.samples) {
                if (v < lo || v > hi) {
                    throw RangeError("channel '" + ch.name + "' sample " + std::to_string(v) +
                                     " outside " + std::to_string(bit_depth) + "-bit range");
                }
            }
        }
    }

    /// Size of the dataset-native raw serialization in bytes.
    std::uint64_t native_bytes() const {
        return static_cast<std::uint64_t>(frames()) * channels.size() *
               static_cast<std::uint64_t>(native_width(bit_depth));
    }
};

/// Parameters of a headerless raw binary file.
struct RawLayout {
    ByteOrder byte_order = ByteOrder::little;
    int sample_width = 2; // bytes per sample, 2 or 3
    Orientation orientation = Orientation::row;
    std::size_t channel_count = 1;

    void validate(int bit_depth) const {
        if (sample_width != 2 && sample_width != 3) {
            throw LayoutError("raw sample width must be 2 or 3 bytes");
        }
        if (sample_width * 8 != bit_depth) {
            throw LayoutError("sample width " + std::to_string(sample_width) +
                              " does not match bit depth " + std::to_string(bit_depth));
        }
        if (channel_count == 0) {
            throw LayoutError("channel count must be positive");
        }
    }
};

} // namespace wavebench
