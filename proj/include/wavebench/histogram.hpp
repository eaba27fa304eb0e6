#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"

namespace wavebench {

/// Dense occurrence counts over the full ADC code range. Index 0 maps to
/// code -2^(bit_depth-1). Merging is element-wise summation, which forms a
/// commutative monoid with the all-zero histogram as identity.
struct Histogram {
    int bit_depth = 16;
    std::vector<std::uint64_t> counts; // length 2^bit_depth
    std::uint64_t total = 0;

    static Histogram zero(int bit_depth) {
        if (!valid_bit_depth(bit_depth)) {
            throw RangeError("histogram bit depth must be 16 or 24");
        }
        Histogram h;
        h.bit_depth = bit_depth;
        h.counts.assign(code_count(bit_depth), 0);
        return h;
    }

    std::size_t index_of(std::int64_t code) const {
        return static_cast<std::size_t>(code - code_min(bit_depth));
    }

    std::int64_t code_at(std::size_t index) const {
        return static_cast<std::int64_t>(index) + code_min(bit_depth);
    }

    std::uint64_t count_of(std::int64_t code) const { return counts[index_of(code)]; }

    void add(std::int64_t code, std::uint64_t n = 1) {
        counts[index_of(code)] += n;
        total += n;
    }
};

/// Counts occurrences of every sample value in a channel.
inline Histogram histogram(std::span<const std::int32_t> samples, int bit_depth) {
    Histogram h = Histogram::zero(bit_depth);
    const std::int64_t offset = -code_min(bit_depth);
    for (std::int32_t v : samples) {
        ++h.counts[static_cast<std::size_t>(v + offset)];
    }
    h.total = samples.size();
    return h;
}

inline Histogram histogram(const ChannelBuffer& channel, int bit_depth) {
    return histogram(std::span<const std::int32_t>(channel.samples), bit_depth);
}

/// In-place merge by summation. Throws MergeError on bit-depth mismatch.
inline void merge_into(Histogram& acc, const Histogram& b) {
    if (acc.bit_depth != b.bit_depth) {
        throw MergeError("cannot merge histograms of bit depth " +
                         std::to_string(acc.bit_depth) + " and " + std::to_string(b.bit_depth));
    }
    for (std::size_t i = 0; i < acc.counts.size(); ++i) {
        acc.counts[i] += b.counts[i];
    }
    acc.total += b.total;
}

inline Histogram merge(const Histogram& a, const Histogram& b) {
    Histogram out = a;
    merge_into(out, b);
    return out;
}

} // namespace wavebench
