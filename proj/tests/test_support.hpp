#pragma once

// Shared helpers for the test suites. The LEB128S reference here is an
// independent second implementation (bit-length + group masking) used as an
// oracle against the library's shift-loop encoder.

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <stdlib.h>

#include "wavebench/dataset.hpp"

namespace testsupport {

/// Minimal signed bit width of v, then ceil(bits/7) little-endian 7-bit
/// groups of the two's-complement image, continuation bit on all but the
/// last group.
inline std::vector<std::uint8_t> leb128s_reference_encode_value(std::int64_t v) {
    const std::uint64_t u = static_cast<std::uint64_t>(v);
    int bits = 64;
    while (bits > 1) {
        const std::uint64_t top = (u >> (bits - 1)) & 1u;
        const std::uint64_t next = (u >> (bits - 2)) & 1u;
        if (top != next) break;
        --bits;
    }
    const int groups = (bits + 6) / 7;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(groups));
    for (int g = 0; g < groups; ++g) {
        std::uint8_t byte = static_cast<std::uint8_t>((u >> (7 * g)) & 0x7F);
        if (g + 1 < groups) byte |= 0x80;
        out.push_back(byte);
    }
    return out;
}

inline std::vector<std::uint8_t> leb128s_reference_encode(std::span<const std::int64_t> values) {
    std::vector<std::uint8_t> out;
    for (std::int64_t v : values) {
        const auto one = leb128s_reference_encode_value(v);
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

inline std::int64_t leb128s_reference_decode_value(std::span<const std::uint8_t> bytes,
                                                   std::size_t& pos) {
    std::uint64_t u = 0;
    int groups = 0;
    for (;;) {
        const std::uint8_t byte = bytes[pos++];
        u |= static_cast<std::uint64_t>(byte & 0x7F) << (7 * groups);
        ++groups;
        if ((byte & 0x80) == 0) break;
    }
    const int bits = 7 * groups;
    if (bits < 64 && ((u >> (bits - 1)) & 1u)) {
        u |= ~std::uint64_t{0} << bits;
    }
    return static_cast<std::int64_t>(u);
}

/// Self-cleaning temporary directory for test artifacts.
class TempDir {
public:
    TempDir() {
        std::string tmpl =
            (std::filesystem::temp_directory_path() / "wavebench-test-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (mkdtemp(buf.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
        path_ = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Uniform random dataset over the full code range.
inline wavebench::Dataset random_dataset(std::uint64_t seed, std::size_t frames,
                                         std::size_t channels, int bit_depth,
                                         std::uint32_t rate = 1000) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(wavebench::code_min(bit_depth),
                                                     wavebench::code_max(bit_depth));
    wavebench::Dataset d;
    d.bit_depth = bit_depth;
    d.sampling_rate = rate;
    d.source_id = "random";
    for (std::size_t c = 0; c < channels; ++c) {
        wavebench::ChannelBuffer ch;
        ch.name = "ch" + std::to_string(c);
        ch.samples.reserve(frames);
        for (std::size_t f = 0; f < frames; ++f) {
            ch.samples.push_back(static_cast<std::int32_t>(dist(rng)));
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

inline wavebench::Dataset constant_dataset(std::int32_t value, std::size_t frames,
                                           std::size_t channels, int bit_depth) {
    wavebench::Dataset d;
    d.bit_depth = bit_depth;
    d.sampling_rate = 1000;
    d.source_id = "constant";
    for (std::size_t c = 0; c < channels; ++c) {
        wavebench::ChannelBuffer ch;
        ch.name = "ch" + std::to_string(c);
        ch.samples.assign(frames, value);
        d.channels.push_back(std::move(ch));
    }
    return d;
}

} // namespace testsupport
