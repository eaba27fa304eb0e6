#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"

namespace wavebench {

// ---------------------------------------------------------------------------
// Delta coding
// ---------------------------------------------------------------------------

/// d_0 = v_0, d_i = v_i - v_{i-1}. Differences of b-bit values need b+1
/// bits, so the output domain is int64 regardless of input width.
inline std::vector<std::int64_t> delta_encode(std::span<const std::int64_t> v) {
    std::vector<std::int64_t> d(v.size());
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        d[i] = i == 0 ? v[0] : v[i] - prev;
        prev = v[i];
    }
    return d;
}

/// v_0 = d_0, v_i = v_{i-1} + d_i. Exact inverse of delta_encode.
inline std::vector<std::int64_t> delta_decode(std::span<const std::int64_t> d) {
    std::vector<std::int64_t> v(d.size());
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        acc = i == 0 ? d[0] : acc + d[i];
        v[i] = acc;
    }
    return v;
}

/// delta_decode plus a domain check: every reconstructed value must lie in
/// the declared bit-depth range, otherwise the stream is corrupt.
inline std::vector<std::int64_t> delta_decode_checked(std::span<const std::int64_t> d,
                                                      int bit_depth) {
    std::vector<std::int64_t> v = delta_decode(d);
    const std::int64_t lo = code_min(bit_depth);
    const std::int64_t hi = code_max(bit_depth);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < lo || v[i] > hi) {
            throw CorruptionError("delta stream reconstructs value " + std::to_string(v[i]) +
                                  " at index " + std::to_string(i) + ", outside " +
                                  std::to_string(bit_depth) + "-bit range");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Signed LEB128 (DWARF SLEB128): 7 value bits per byte, 0x80 continuation,
// sign extension from the final byte's bit 6.
// ---------------------------------------------------------------------------

inline void leb128s_encode_value(std::int64_t value, std::vector<std::uint8_t>& out) {
    for (;;) {
        std::uint8_t byte = static_cast<std::uint8_t>(value & 0x7F);
        value >>= 7; // arithmetic shift keeps the sign
        const bool done = (value == 0 && (byte & 0x40) == 0) || (value == -1 && (byte & 0x40) != 0);
        if (!done) byte |= 0x80;
        out.push_back(byte);
        if (done) return;
    }
}

inline std::vector<std::uint8_t> leb128s_encode(std::span<const std::int64_t> v) {
    std::vector<std::uint8_t> out;
    out.reserve(v.size() * 2);
    for (std::int64_t x : v) {
        leb128s_encode_value(x, out);
    }
    return out;
}

/// Decodes exactly expected_count values. A value truncated by the end of
/// the buffer is a DecodeError; bytes left over afterwards are a
/// LengthError.
inline std::vector<std::int64_t> leb128s_decode(std::span<const std::uint8_t> b,
                                                std::size_t expected_count) {
    std::vector<std::int64_t> out;
    out.reserve(expected_count);
    std::size_t pos = 0;
    while (out.size() < expected_count) {
        std::uint64_t result = 0;
        unsigned shift = 0;
        for (;;) {
            if (pos >= b.size()) {
                throw DecodeError("truncated LEB128S value at byte offset " + std::to_string(pos));
            }
            if (shift >= 64) {
                throw DecodeError("LEB128S value exceeds 64 bits at byte offset " +
                                  std::to_string(pos));
            }
            const std::uint8_t byte = b[pos++];
            result |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
            shift += 7;
            if ((byte & 0x80) == 0) {
                if (shift < 64 && (byte & 0x40) != 0) {
                    result |= ~std::uint64_t{0} << shift; // sign extend
                }
                break;
            }
        }
        out.push_back(static_cast<std::int64_t>(result));
    }
    if (pos != b.size()) {
        throw LengthError(std::to_string(b.size() - pos) + " trailing bytes after " +
                          std::to_string(expected_count) + " LEB128S values");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixed-width little-endian two's-complement packing
// ---------------------------------------------------------------------------

constexpr std::int64_t fixed_width_min(int width) {
    return -(std::int64_t{1} << (width * 8 - 1));
}

constexpr std::int64_t fixed_width_max(int width) {
    return (std::int64_t{1} << (width * 8 - 1)) - 1;
}

inline std::vector<std::uint8_t> pack_fixed(std::span<const std::int64_t> v, int width,
                                            ByteOrder order = ByteOrder::little) {
    if (width < 1 || width > 4) throw LayoutError("fixed width must be 1..4 bytes");
    const std::int64_t lo = fixed_width_min(width);
    const std::int64_t hi = fixed_width_max(width);
    std::vector<std::uint8_t> out(v.size() * static_cast<std::size_t>(width));
    std::size_t o = 0;
    for (std::int64_t x : v) {
        if (x < lo || x > hi) {
            throw LayoutError("value " + std::to_string(x) + " does not fit in " +
                              std::to_string(width) + " bytes");
        }
        const auto u = static_cast<std::uint64_t>(x);
        for (int b = 0; b < width; ++b) {
            const int shift = order == ByteOrder::little ? 8 * b : 8 * (width - 1 - b);
            out[o++] = static_cast<std::uint8_t>(u >> shift);
        }
    }
    return out;
}

inline std::vector<std::int64_t> unpack_fixed(std::span<const std::uint8_t> bytes, int width,
                                              ByteOrder order = ByteOrder::little) {
    if (width < 1 || width > 4) throw LayoutError("fixed width must be 1..4 bytes");
    if (bytes.size() % static_cast<std::size_t>(width) != 0) {
        throw AlignmentError("byte count " + std::to_string(bytes.size()) +
                             " is not a multiple of width " + std::to_string(width));
    }
    std::vector<std::int64_t> out(bytes.size() / static_cast<std::size_t>(width));
    const unsigned top = static_cast<unsigned>(width * 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t u = 0;
        for (int b = 0; b < width; ++b) {
            const int shift = order == ByteOrder::little ? 8 * b : 8 * (width - 1 - b);
            u |= static_cast<std::uint64_t>(bytes[i * width + b]) << shift;
        }
        // sign extend from bit (width*8 - 1)
        if (u & (std::uint64_t{1} << (top - 1))) {
            u |= ~std::uint64_t{0} << top;
        }
        out[i] = static_cast<std::int64_t>(u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset serialization
// ---------------------------------------------------------------------------

/// Flattens channel streams into a single sample order: row emits
/// frame-interleaved samples (s0c0, s0c1, ..., s1c0, ...), column emits each
/// channel's full stream consecutively.
inline std::vector<std::int64_t> flatten(const std::vector<std::vector<std::int64_t>>& channels,
                                         Orientation orientation) {
    const std::size_t nch = channels.size();
    std::size_t frames = nch == 0 ? 0 : channels.front().size();
    for (const auto& ch : channels) {
        if (ch.size() != frames) throw AlignmentError("channels are not frame-aligned");
    }
    std::vector<std::int64_t> out;
    out.reserve(frames * nch);
    if (orientation == Orientation::row) {
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t c = 0; c < nch; ++c) out.push_back(channels[c][f]);
        }
    } else {
        for (std::size_t c = 0; c < nch; ++c) {
            out.insert(out.end(), channels[c].begin(), channels[c].end());
        }
    }
    return out;
}

inline std::vector<std::vector<std::int64_t>> unflatten(std::span<const std::int64_t> stream,
                                                        Orientation orientation,
                                                        std::size_t channel_count) {
    if (channel_count == 0) throw LayoutError("channel count must be positive");
    if (stream.size() % channel_count != 0) {
        throw AlignmentError("stream length is not a multiple of the channel count");
    }
    const std::size_t frames = stream.size() / channel_count;
    std::vector<std::vector<std::int64_t>> channels(channel_count);
    for (auto& ch : channels) ch.resize(frames);
    if (orientation == Orientation::row) {
        for (std::size_t f = 0; f < frames; ++f) {
            for (std::size_t c = 0; c < channel_count; ++c) {
                channels[c][f] = stream[f * channel_count + c];
            }
        }
    } else {
        for (std::size_t c = 0; c < channel_count; ++c) {
            for (std::size_t f = 0; f < frames; ++f) {
                channels[c][f] = stream[c * frames + f];
            }
        }
    }
    return channels;
}

inline std::vector<std::int64_t> widen(std::span<const std::int32_t> v) {
    return std::vector<std::int64_t>(v.begin(), v.end());
}

/// Serializes a dataset to little-endian two's-complement bytes at the
/// stated width in the stated sample order.
inline std::vector<std::uint8_t> serialize(const Dataset& d, Orientation orientation, int width) {
    if (width != 2 && width != 3 && width != 4) {
        throw LayoutError("serialization width must be 2, 3, or 4 bytes");
    }
    if (width * 8 < d.bit_depth) {
        throw LayoutError("width " + std::to_string(width) + " cannot hold " +
                          std::to_string(d.bit_depth) + "-bit samples");
    }
    std::vector<std::vector<std::int64_t>> chans;
    chans.reserve(d.channels.size());
    for (const auto& ch : d.channels) chans.push_back(widen(ch.samples));
    return pack_fixed(flatten(chans, orientation), width);
}

/// Inverse of serialize for a known channel count. Sample values are
/// range-checked against the declared bit depth.
inline Dataset deserialize(std::span<const std::uint8_t> bytes, Orientation orientation, int width,
                           std::size_t channel_count, int bit_depth,
                           std::uint32_t sampling_rate = 0) {
    const std::vector<std::int64_t> stream = unpack_fixed(bytes, width);
    const auto chans = unflatten(stream, orientation, channel_count);
    const std::int64_t lo = code_min(bit_depth);
    const std::int64_t hi = code_max(bit_depth);
    Dataset d;
    d.bit_depth = bit_depth;
    d.sampling_rate = sampling_rate;
    for (std::size_t c = 0; c < chans.size(); ++c) {
        ChannelBuffer ch;
        ch.name = "ch" + std::to_string(c);
        ch.samples.reserve(chans[c].size());
        for (std::int64_t v : chans[c]) {
            if (v < lo || v > hi) {
                throw CorruptionError("deserialized value " + std::to_string(v) + " outside " +
                                      std::to_string(bit_depth) + "-bit range");
            }
            ch.samples.push_back(static_cast<std::int32_t>(v));
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Shuffle filters: byte-plane / bit-plane transposition. Both are pure
// permutations of the input (length- and content-preserving).
// ---------------------------------------------------------------------------

inline std::vector<std::uint8_t> byte_shuffle(std::span<const std::uint8_t> b, std::size_t stride) {
    if (stride == 0) throw LayoutError("shuffle stride must be positive");
    if (b.size() % stride != 0) {
        throw AlignmentError("buffer length " + std::to_string(b.size()) +
                             " is not a multiple of stride " + std::to_string(stride));
    }
    const std::size_t n = b.size() / stride;
    std::vector<std::uint8_t> out(b.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < stride; ++k) {
            out[k * n + i] = b[i * stride + k];
        }
    }
    return out;
}

inline std::vector<std::uint8_t> byte_unshuffle(std::span<const std::uint8_t> b,
                                                std::size_t stride) {
    if (stride == 0) throw LayoutError("shuffle stride must be positive");
    if (b.size() % stride != 0) {
        throw AlignmentError("buffer length " + std::to_string(b.size()) +
                             " is not a multiple of stride " + std::to_string(stride));
    }
    const std::size_t n = b.size() / stride;
    std::vector<std::uint8_t> out(b.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < stride; ++k) {
            out[i * stride + k] = b[k * n + i];
        }
    }
    return out;
}

/// Bit-plane transpose: bit k of every element is grouped consecutively.
/// Elements are little-endian groups of elem_bits/8 bytes; bit k of an
/// element is (value >> k) & 1; plane bits pack LSB-first. Requires the
/// element count to be divisible by 8 so every plane is whole bytes.
inline std::vector<std::uint8_t> bit_shuffle(std::span<const std::uint8_t> b, int elem_bits) {
    if (elem_bits <= 0 || elem_bits % 8 != 0) {
        throw LayoutError("bitshuffle element size must be a positive multiple of 8 bits");
    }
    const std::size_t elem_bytes = static_cast<std::size_t>(elem_bits) / 8;
    if (b.size() % elem_bytes != 0) {
        throw AlignmentError("buffer bit length is not a multiple of the element size");
    }
    const std::size_t n = b.size() / elem_bytes;
    if (n % 8 != 0) {
        throw AlignmentError("bitshuffle element count " + std::to_string(n) +
                             " is not a multiple of 8");
    }
    std::vector<std::uint8_t> out(b.size(), 0);
    const std::size_t plane_bytes = n / 8;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < elem_bits; ++k) {
            const std::uint8_t bit = (b[i * elem_bytes + static_cast<std::size_t>(k / 8)] >> (k % 8)) & 1;
            if (bit) {
                out[static_cast<std::size_t>(k) * plane_bytes + i / 8] |=
                    static_cast<std::uint8_t>(1u << (i % 8));
            }
        }
    }
    return out;
}

inline std::vector<std::uint8_t> bit_unshuffle(std::span<const std::uint8_t> b, int elem_bits) {
    if (elem_bits <= 0 || elem_bits % 8 != 0) {
        throw LayoutError("bitshuffle element size must be a positive multiple of 8 bits");
    }
    const std::size_t elem_bytes = static_cast<std::size_t>(elem_bits) / 8;
    if (b.size() % elem_bytes != 0) {
        throw AlignmentError("buffer bit length is not a multiple of the element size");
    }
    const std::size_t n = b.size() / elem_bytes;
    if (n % 8 != 0) {
        throw AlignmentError("bitshuffle element count " + std::to_string(n) +
                             " is not a multiple of 8");
    }
    std::vector<std::uint8_t> out(b.size(), 0);
    const std::size_t plane_bytes = n / 8;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < elem_bits; ++k) {
            const std::uint8_t bit =
                (b[static_cast<std::size_t>(k) * plane_bytes + i / 8] >> (i % 8)) & 1;
            if (bit) {
                out[i * elem_bytes + static_cast<std::size_t>(k / 8)] |=
                    static_cast<std::uint8_t>(1u << (k % 8));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transform chains
// ---------------------------------------------------------------------------

/// A reversible pipeline stage list applied between channel streams and the
/// compressor: optional per-channel delta, then either LEB128S or
/// fixed-width packing, optionally followed by a shuffle filter.
/// Decoding applies the exact inverses in reverse order.
struct TransformChain {
    enum class Encoding { fixed, leb128s };
    enum class Filter { none, shuffle, bitshuffle };

    bool delta = false;
    Encoding encoding = Encoding::fixed;
    Filter filter = Filter::none;

    /// Fixed-width packing width for a given source depth. Delta output is
    /// widened to 4 bytes; otherwise the dataset-native width is used.
    int fixed_width(int bit_depth) const { return delta ? 4 : native_width(bit_depth); }

    void validate() const {
        if (encoding == Encoding::leb128s && filter != Filter::none) {
            throw EnumerationError(
                "shuffle filters require fixed-width input and cannot follow leb128s");
        }
    }

    /// Canonical chain name fragment, e.g. "delta+leb128s" or "shuffle:2";
    /// empty for the plain native-width serialization.
    std::string name(int bit_depth) const {
        std::string s;
        auto append = [&s](const std::string& part) {
            if (!s.empty()) s += '+';
            s += part;
        };
        if (delta) append("delta");
        if (encoding == Encoding::leb128s) {
            append("leb128s");
        } else if (filter == Filter::shuffle) {
            append("shuffle:" + std::to_string(fixed_width(bit_depth)));
        } else if (filter == Filter::bitshuffle) {
            append("bitshuffle:" + std::to_string(fixed_width(bit_depth) * 8));
        }
        return s;
    }
};

} // namespace wavebench
