#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "wavebench/transforms.hpp"

#include "test_support.hpp"

using namespace wavebench;

TEST_CASE("delta encoding follows the difference formula", "[transforms]") {
    REQUIRE(delta_encode(std::vector<std::int64_t>{}).empty());
    REQUIRE(delta_encode(std::vector<std::int64_t>{3, 5, 4}) ==
            std::vector<std::int64_t>{3, 2, -1});
    REQUIRE(delta_decode(std::vector<std::int64_t>{3, 2, -1}) ==
            std::vector<std::int64_t>{3, 5, 4});
    REQUIRE(delta_decode(std::vector<std::int64_t>{42}) == std::vector<std::int64_t>{42});
}

TEST_CASE("delta of a constant sequence is the head plus zeros", "[transforms]") {
    const std::vector<std::int64_t> constant(100, 1234);
    const auto d = delta_encode(constant);
    REQUIRE(d[0] == 1234);
    REQUIRE(std::all_of(d.begin() + 1, d.end(), [](std::int64_t v) { return v == 0; }));
}

TEST_CASE("delta round-trips random 16-bit sequences", "[transforms][property]") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> dist(-32768, 32767);
    std::uniform_int_distribution<std::size_t> len(0, 300);
    for (int round = 0; round < 1000; ++round) {
        std::vector<std::int64_t> v(len(rng));
        for (auto& x : v) x = dist(rng);
        REQUIRE(delta_decode(delta_encode(v)) == v);
    }
}

TEST_CASE("checked delta decode rejects out-of-range reconstructions", "[transforms]") {
    // 32760 + 100 exceeds the 16-bit range
    REQUIRE_THROWS_AS(delta_decode_checked(std::vector<std::int64_t>{32760, 100}, 16),
                      CorruptionError);
    REQUIRE(delta_decode_checked(std::vector<std::int64_t>{32760, 7}, 16) ==
            std::vector<std::int64_t>{32760, 32767});
}

TEST_CASE("leb128s encodes the documented vectors", "[transforms]") {
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{0}) == std::vector<std::uint8_t>{0x00});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{-1}) == std::vector<std::uint8_t>{0x7F});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{127}) ==
            std::vector<std::uint8_t>{0xFF, 0x00});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{63}) == std::vector<std::uint8_t>{0x3F});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{64}) ==
            std::vector<std::uint8_t>{0xC0, 0x00});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{-64}) == std::vector<std::uint8_t>{0x40});
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{-65}) ==
            std::vector<std::uint8_t>{0xBF, 0x7F});
}

TEST_CASE("leb128s agrees with the independent reference oracle", "[transforms][property]") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> dist(-(1 << 24), (1 << 24) - 1);
    for (int round = 0; round < 20000; ++round) {
        const std::int64_t v = dist(rng);
        REQUIRE(leb128s_encode(std::vector<std::int64_t>{v}) ==
                testsupport::leb128s_reference_encode_value(v));
    }
}

TEST_CASE("values in [-64, 63] occupy exactly one byte", "[transforms][property]") {
    for (std::int64_t v = -64; v <= 63; ++v) {
        REQUIRE(leb128s_encode(std::vector<std::int64_t>{v}).size() == 1);
    }
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{-65}).size() == 2);
    REQUIRE(leb128s_encode(std::vector<std::int64_t>{64}).size() == 2);
}

TEST_CASE("leb128s round-trips 17-bit signed streams", "[transforms][property]") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<std::int64_t> dist(-(1 << 16), (1 << 16) - 1);
    std::uniform_int_distribution<std::size_t> len(0, 200);
    for (int round = 0; round < 1000; ++round) {
        std::vector<std::int64_t> v(len(rng));
        for (auto& x : v) x = dist(rng);
        const auto bytes = leb128s_encode(v);
        REQUIRE(leb128s_decode(bytes, v.size()) == v);
    }
}

TEST_CASE("leb128s decode distinguishes truncation from trailing bytes", "[transforms]") {
    REQUIRE_THROWS_AS(leb128s_decode(std::vector<std::uint8_t>{0x80}, 1), DecodeError);
    REQUIRE(leb128s_decode(std::vector<std::uint8_t>{0x00, 0x00}, 2) ==
            std::vector<std::int64_t>{0, 0});
    REQUIRE_THROWS_AS(leb128s_decode(std::vector<std::uint8_t>{0x00, 0x00}, 1), LengthError);
    REQUIRE_THROWS_AS(leb128s_decode(std::vector<std::uint8_t>{0x00}, 2), DecodeError);
}

TEST_CASE("serialize emits the declared sample order", "[transforms]") {
    Dataset d;
    d.bit_depth = 16;
    d.sampling_rate = 1;
    d.channels = {{"a", {1, 2}, std::nullopt}, {"b", {3, 4}, std::nullopt}};

    const auto row = serialize(d, Orientation::row, 2);
    REQUIRE(row == std::vector<std::uint8_t>{1, 0, 3, 0, 2, 0, 4, 0});
    const auto col = serialize(d, Orientation::column, 2);
    REQUIRE(col == std::vector<std::uint8_t>{1, 0, 2, 0, 3, 0, 4, 0});
}

TEST_CASE("serialize rejects widths below the bit depth", "[transforms]") {
    Dataset d = testsupport::constant_dataset(0, 4, 1, 24);
    REQUIRE_THROWS_AS(serialize(d, Orientation::row, 2), LayoutError);
    REQUIRE_NOTHROW(serialize(d, Orientation::row, 3));
    REQUIRE_NOTHROW(serialize(d, Orientation::row, 4));
}

TEST_CASE("deserialize inverts serialize for both orientations", "[transforms][property]") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 50; ++round) {
        const std::size_t frames = 1 + static_cast<std::size_t>(rng() % 100);
        const std::size_t channels = 1 + static_cast<std::size_t>(rng() % 4);
        const int bit_depth = (rng() & 1) ? 16 : 24;
        const int width = (rng() & 1) ? native_width(bit_depth) : 4;
        const Dataset d = testsupport::random_dataset(rng(), frames, channels, bit_depth);
        for (const auto orientation : {Orientation::row, Orientation::column}) {
            const auto bytes = serialize(d, orientation, width);
            REQUIRE(bytes.size() == frames * channels * static_cast<std::size_t>(width));
            const Dataset back = deserialize(bytes, orientation, width, channels, bit_depth);
            for (std::size_t c = 0; c < channels; ++c) {
                REQUIRE(back.channels[c].samples == d.channels[c].samples);
            }
        }
    }
}

TEST_CASE("byte shuffle groups byte planes", "[transforms]") {
    // elements 0x0102, 0x0304 as LE bytes: 02 01 04 03
    const std::vector<std::uint8_t> b{0x02, 0x01, 0x04, 0x03};
    REQUIRE(byte_shuffle(b, 2) == std::vector<std::uint8_t>{0x02, 0x04, 0x01, 0x03});
    REQUIRE(byte_shuffle(b, 1) == b); // stride 1 is the identity
    REQUIRE_THROWS_AS(byte_shuffle(std::vector<std::uint8_t>{1, 2, 3}, 2), AlignmentError);
}

TEST_CASE("byte shuffle round-trips and preserves the byte multiset", "[transforms][property]") {
    std::mt19937_64 rng(29);
    for (int round = 0; round < 200; ++round) {
        const std::size_t stride = 1 + rng() % 4;
        const std::size_t n = (rng() % 100) * stride;
        std::vector<std::uint8_t> b(n);
        for (auto& x : b) x = static_cast<std::uint8_t>(rng());
        const auto shuffled = byte_shuffle(b, stride);
        REQUIRE(byte_unshuffle(shuffled, stride) == b);
        auto sorted_in = b;
        auto sorted_out = shuffled;
        std::sort(sorted_in.begin(), sorted_in.end());
        std::sort(sorted_out.begin(), sorted_out.end());
        REQUIRE(sorted_in == sorted_out);
    }
}

TEST_CASE("bit shuffle groups bit planes", "[transforms]") {
    const std::vector<std::uint8_t> ones(8, 0x01);
    const auto out = bit_shuffle(ones, 8);
    REQUIRE(out[0] == 0xFF);
    REQUIRE(std::all_of(out.begin() + 1, out.end(), [](std::uint8_t v) { return v == 0; }));

    const std::vector<std::uint8_t> zeros(32, 0x00);
    REQUIRE(bit_shuffle(zeros, 16) == zeros);
}

TEST_CASE("bit shuffle round-trips random buffers", "[transforms][property]") {
    std::mt19937_64 rng(37);
    for (const int elem_bits : {8, 16, 24, 32}) {
        for (int round = 0; round < 50; ++round) {
            const std::size_t elems = 8 * (1 + rng() % 40);
            std::vector<std::uint8_t> b(elems * static_cast<std::size_t>(elem_bits / 8));
            for (auto& x : b) x = static_cast<std::uint8_t>(rng());
            const auto shuffled = bit_shuffle(b, elem_bits);
            REQUIRE(shuffled.size() == b.size());
            REQUIRE(bit_unshuffle(shuffled, elem_bits) == b);
        }
    }
}

TEST_CASE("bit shuffle rejects misaligned element counts", "[transforms]") {
    REQUIRE_THROWS_AS(bit_shuffle(std::vector<std::uint8_t>(10, 0), 16), AlignmentError);
    REQUIRE_THROWS_AS(bit_shuffle(std::vector<std::uint8_t>(12, 0), 16), AlignmentError);
    REQUIRE_THROWS_AS(bit_shuffle(std::vector<std::uint8_t>(8, 0), 12), LayoutError);
}

TEST_CASE("pack_fixed range-checks values against the width", "[transforms]") {
    REQUIRE(pack_fixed(std::vector<std::int64_t>{-1}, 3) ==
            std::vector<std::uint8_t>{0xFF, 0xFF, 0xFF});
    REQUIRE_THROWS_AS(pack_fixed(std::vector<std::int64_t>{40000}, 2), LayoutError);
    REQUIRE_THROWS_AS(unpack_fixed(std::vector<std::uint8_t>{1, 2, 3}, 2), AlignmentError);
}

TEST_CASE("transform chains have canonical names", "[transforms]") {
    TransformChain plain;
    REQUIRE(plain.name(16).empty());

    TransformChain delta_leb;
    delta_leb.delta = true;
    delta_leb.encoding = TransformChain::Encoding::leb128s;
    REQUIRE(delta_leb.name(16) == "delta+leb128s");

    TransformChain shuffled;
    shuffled.filter = TransformChain::Filter::shuffle;
    REQUIRE(shuffled.name(16) == "shuffle:2");
    REQUIRE(shuffled.name(24) == "shuffle:3");

    TransformChain delta_shuffled;
    delta_shuffled.delta = true;
    delta_shuffled.filter = TransformChain::Filter::shuffle;
    REQUIRE(delta_shuffled.name(16) == "delta+shuffle:4"); // delta widens to 4 bytes

    TransformChain bitshuffled;
    bitshuffled.filter = TransformChain::Filter::bitshuffle;
    REQUIRE(bitshuffled.name(24) == "bitshuffle:24");

    TransformChain invalid;
    invalid.encoding = TransformChain::Encoding::leb128s;
    invalid.filter = TransformChain::Filter::shuffle;
    REQUIRE_THROWS_AS(invalid.validate(), EnumerationError);
}
