#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <span>

#include <stdlib.h> // mkdtemp
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <lzma.h>
#include <zlib.h>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"
#include "wavebench/wav.hpp"

// libzstd, liblz4, and libbz2 ship as runtime libraries on this platform
// without development headers. Only the stable one-shot entry points are
// declared here (no library structs), matching the canonical signatures.
extern "C" {
size_t ZSTD_compressBound(size_t srcSize);
unsigned ZSTD_isError(size_t code);
size_t ZSTD_compress(void* dst, size_t dstCapacity, const void* src, size_t srcSize,
                     int compressionLevel);
size_t ZSTD_decompress(void* dst, size_t dstCapacity, const void* src, size_t srcSize);
unsigned long long ZSTD_getFrameContentSize(const void* src, size_t srcSize);
int ZSTD_maxCLevel(void);

int LZ4_compressBound(int inputSize);
int LZ4_compress_default(const char* src, char* dst, int srcSize, int dstCapacity);
int LZ4_compress_HC(const char* src, char* dst, int srcSize, int dstCapacity,
                    int compressionLevel);
int LZ4_decompress_safe(const char* src, char* dst, int compressedSize, int dstCapacity);

int BZ2_bzBuffToBuffCompress(char* dest, unsigned int* destLen, char* source,
                             unsigned int sourceLen, int blockSize100k, int verbosity,
                             int workFactor);
int BZ2_bzBuffToBuffDecompress(char* dest, unsigned int* destLen, char* source,
                               unsigned int sourceLen, int small, int verbosity);
}

namespace wavebench {

enum class CodecFamily { store, deflate, bzip2, lzma, zstd, lz4, flac };

/// A general-purpose lossless compressor with its parameter point.
/// Canonical names: store, deflate:N, bzip2:N, lzma:N, zstd:N, lz4:fast,
/// lz4:hc, flac.
struct CompressorSpec {
    CodecFamily family = CodecFamily::store;
    int level = 0;
    std::string variant; // lz4 only: "fast" or "hc"

    std::string name() const {
        switch (family) {
            case CodecFamily::store: return "store";
            case CodecFamily::deflate: return "deflate:" + std::to_string(level);
            case CodecFamily::bzip2: return "bzip2:" + std::to_string(level);
            case CodecFamily::lzma: return "lzma:" + std::to_string(level);
            case CodecFamily::zstd: return "zstd:" + std::to_string(level);
            case CodecFamily::lz4: return "lz4:" + variant;
            case CodecFamily::flac: return "flac";
        }
        return "?";
    }

    void validate() const {
        switch (family) {
            case CodecFamily::store:
            case CodecFamily::flac:
                break; // no tune-able parameters
            case CodecFamily::deflate:
                if (level < 1 || level > 9) throw RangeError("deflate level must be 1..9");
                break;
            case CodecFamily::bzip2:
                if (level < 1 || level > 9) throw RangeError("bzip2 level must be 1..9");
                break;
            case CodecFamily::lzma:
                if (level < 0 || level > 9) throw RangeError("lzma preset must be 0..9");
                break;
            case CodecFamily::zstd:
                if (level < 1 || level > ZSTD_maxCLevel())
                    throw RangeError("zstd level must be 1.." + std::to_string(ZSTD_maxCLevel()));
                break;
            case CodecFamily::lz4:
                if (variant != "fast" && variant != "hc")
                    throw RangeError("lz4 variant must be 'fast' or 'hc'");
                break;
        }
    }

    static CompressorSpec parse(std::string_view s) {
        CompressorSpec spec;
        const auto colon = s.find(':');
        const std::string_view head = s.substr(0, colon);
        const std::string_view arg = colon == std::string_view::npos ? "" : s.substr(colon + 1);
        auto parse_level = [&](int fallback) {
            if (arg.empty()) return fallback;
            int v = 0;
            for (char c : arg) {
                if (c < '0' || c > '9') throw ParseError("bad codec level in '" + std::string(s) + "'");
                v = v * 10 + (c - '0');
            }
            return v;
        };
        if (head == "store") {
            spec.family = CodecFamily::store;
        } else if (head == "deflate") {
            spec.family = CodecFamily::deflate;
            spec.level = parse_level(6);
        } else if (head == "bzip2") {
            spec.family = CodecFamily::bzip2;
            spec.level = parse_level(9);
        } else if (head == "lzma") {
            spec.family = CodecFamily::lzma;
            spec.level = parse_level(6);
        } else if (head == "zstd") {
            spec.family = CodecFamily::zstd;
            spec.level = parse_level(3);
        } else if (head == "lz4") {
            spec.family = CodecFamily::lz4;
            spec.variant = arg.empty() ? "fast" : std::string(arg);
        } else if (head == "flac") {
            spec.family = CodecFamily::flac;
        } else {
            throw ParseError("unknown codec '" + std::string(s) + "'");
        }
        spec.validate();
        return spec;
    }
};

namespace codec_detail {

// bzlib return codes used here
constexpr int kBzOk = 0;
constexpr int kBzOutbuffFull = -8;

constexpr std::size_t kLz4BlockSize = 64u << 20; // framing block limit
constexpr std::uint64_t kMaxDecodedSize = std::uint64_t{1} << 40; // corrupt-size guard

// Some C APIs reject null pointers even for zero-length buffers.
inline const std::uint8_t* nonnull(std::span<const std::uint8_t> s) {
    static const std::uint8_t dummy = 0;
    return s.empty() ? &dummy : s.data();
}

inline std::vector<std::uint8_t> deflate_compress(std::span<const std::uint8_t> in, int level) {
    uLongf bound = compressBound(static_cast<uLong>(in.size()));
    std::vector<std::uint8_t> out(bound);
    const int rc = compress2(out.data(), &bound, nonnull(in), static_cast<uLong>(in.size()), level);
    if (rc != Z_OK) throw IntegrityError("zlib compress2 failed with code " + std::to_string(rc));
    out.resize(bound);
    return out;
}

inline std::vector<std::uint8_t> deflate_decompress(std::span<const std::uint8_t> in) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw IntegrityError("zlib inflateInit failed");
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> buf(256 * 1024);
    zs.next_in = const_cast<Bytef*>(nonnull(in));
    zs.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    do {
        zs.next_out = buf.data();
        zs.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw IntegrityError("zlib stream is corrupt (code " + std::to_string(rc) + ")");
        }
        out.insert(out.end(), buf.data(), buf.data() + (buf.size() - zs.avail_out));
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw IntegrityError("zlib stream is truncated");
    return out;
}

inline std::vector<std::uint8_t> lzma_compress_buf(std::span<const std::uint8_t> in,
                                                   std::uint32_t preset) {
    const std::size_t bound = lzma_stream_buffer_bound(in.size());
    std::vector<std::uint8_t> out(bound);
    std::size_t out_pos = 0;
    const lzma_ret rc = lzma_easy_buffer_encode(preset, LZMA_CHECK_CRC64, nullptr, nonnull(in),
                                                in.size(), out.data(), &out_pos, out.size());
    if (rc != LZMA_OK) throw IntegrityError("lzma encode failed with code " + std::to_string(rc));
    out.resize(out_pos);
    return out;
}

inline std::vector<std::uint8_t> lzma_decompress_buf(std::span<const std::uint8_t> in) {
    lzma_stream strm = LZMA_STREAM_INIT;
    if (lzma_stream_decoder(&strm, UINT64_MAX, 0) != LZMA_OK) {
        throw IntegrityError("lzma decoder init failed");
    }
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> buf(256 * 1024);
    strm.next_in = nonnull(in);
    strm.avail_in = in.size();
    lzma_ret rc = LZMA_OK;
    do {
        strm.next_out = buf.data();
        strm.avail_out = buf.size();
        rc = lzma_code(&strm, LZMA_FINISH);
        if (rc != LZMA_OK && rc != LZMA_STREAM_END) {
            lzma_end(&strm);
            throw IntegrityError("lzma stream is corrupt (code " + std::to_string(rc) + ")");
        }
        out.insert(out.end(), buf.data(), buf.data() + (buf.size() - strm.avail_out));
    } while (rc != LZMA_STREAM_END);
    lzma_end(&strm);
    return out;
}

inline std::vector<std::uint8_t> bzip2_compress(std::span<const std::uint8_t> in, int block100k) {
    // documented worst case: input + 1% + 600 bytes
    unsigned dest_len = static_cast<unsigned>(in.size() + in.size() / 100 + 600);
    std::vector<std::uint8_t> out(dest_len);
    const int rc = BZ2_bzBuffToBuffCompress(
        reinterpret_cast<char*>(out.data()), &dest_len,
        const_cast<char*>(reinterpret_cast<const char*>(nonnull(in))),
        static_cast<unsigned>(in.size()), block100k, 0, 0);
    if (rc != kBzOk) throw IntegrityError("bzip2 compress failed with code " + std::to_string(rc));
    out.resize(dest_len);
    return out;
}

inline std::vector<std::uint8_t> bzip2_decompress(std::span<const std::uint8_t> in) {
    std::size_t capacity = std::max<std::size_t>(in.size() * 4, 64 * 1024);
    for (;;) {
        if (capacity > kMaxDecodedSize) throw IntegrityError("bzip2 stream will not decompress");
        std::vector<std::uint8_t> out(capacity);
        unsigned dest_len = static_cast<unsigned>(out.size());
        const int rc = BZ2_bzBuffToBuffDecompress(
            reinterpret_cast<char*>(out.data()), &dest_len,
            const_cast<char*>(reinterpret_cast<const char*>(nonnull(in))),
            static_cast<unsigned>(in.size()), 0, 0);
        if (rc == kBzOk) {
            out.resize(dest_len);
            return out;
        }
        if (rc != kBzOutbuffFull) {
            throw IntegrityError("bzip2 stream is corrupt (code " + std::to_string(rc) + ")");
        }
        capacity *= 2;
    }
}

inline std::vector<std::uint8_t> zstd_compress(std::span<const std::uint8_t> in, int level) {
    const std::size_t bound = ZSTD_compressBound(in.size());
    std::vector<std::uint8_t> out(bound);
    const std::size_t written = ZSTD_compress(out.data(), out.size(), nonnull(in), in.size(), level);
    if (ZSTD_isError(written)) throw IntegrityError("zstd compression failed");
    out.resize(written);
    return out;
}

inline std::vector<std::uint8_t> zstd_decompress(std::span<const std::uint8_t> in) {
    const unsigned long long content = ZSTD_getFrameContentSize(nonnull(in), in.size());
    // -1ULL = unknown, -2ULL = not a zstd frame
    if (content + 1 == 0 || content + 2 == 0 || content > kMaxDecodedSize) {
        throw IntegrityError("zstd frame header is missing or corrupt");
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(content));
    std::uint8_t dummy = 0;
    const std::size_t got =
        ZSTD_decompress(out.empty() ? &dummy : out.data(), out.size(), nonnull(in), in.size());
    if (ZSTD_isError(got) || got != out.size()) {
        throw IntegrityError("zstd stream is corrupt or truncated");
    }
    return out;
}

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

inline std::uint32_t get_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

// LZ4 block format carries no framing of its own; output is a sequence of
// [u32 raw_len][u32 comp_len][comp bytes] blocks so the stream stays
// self-contained.
inline std::vector<std::uint8_t> lz4_compress(std::span<const std::uint8_t> in, bool high) {
    std::vector<std::uint8_t> out;
    std::size_t pos = 0;
    while (pos < in.size()) {
        const std::size_t raw = std::min(kLz4BlockSize, in.size() - pos);
        const int bound = LZ4_compressBound(static_cast<int>(raw));
        std::vector<char> block(static_cast<std::size_t>(bound));
        const char* src = reinterpret_cast<const char*>(in.data() + pos);
        const int written =
            high ? LZ4_compress_HC(src, block.data(), static_cast<int>(raw), bound, 9)
                 : LZ4_compress_default(src, block.data(), static_cast<int>(raw), bound);
        if (written <= 0) throw IntegrityError("lz4 compression failed");
        put_u32le(out, static_cast<std::uint32_t>(raw));
        put_u32le(out, static_cast<std::uint32_t>(written));
        out.insert(out.end(), block.data(), block.data() + written);
        pos += raw;
    }
    return out;
}

inline std::vector<std::uint8_t> lz4_decompress(std::span<const std::uint8_t> in) {
    std::vector<std::uint8_t> out;
    std::size_t pos = 0;
    while (pos < in.size()) {
        if (pos + 8 > in.size()) throw IntegrityError("lz4 block header is truncated");
        const std::uint32_t raw = get_u32le(in.data() + pos);
        const std::uint32_t comp = get_u32le(in.data() + pos + 4);
        pos += 8;
        if (raw > kLz4BlockSize || pos + comp > in.size()) {
            throw IntegrityError("lz4 block is truncated or corrupt");
        }
        const std::size_t old = out.size();
        out.resize(old + raw);
        const int got = LZ4_decompress_safe(reinterpret_cast<const char*>(in.data() + pos),
                                            reinterpret_cast<char*>(out.data() + old),
                                            static_cast<int>(comp), static_cast<int>(raw));
        if (got < 0 || static_cast<std::uint32_t>(got) != raw) {
            throw IntegrityError("lz4 block failed to decompress");
        }
        pos += comp;
    }
    return out;
}

} // namespace codec_detail

/// Compresses a byte sequence; the result is self-contained (decompress
/// needs only the same spec, never an external dictionary).
inline std::vector<std::uint8_t> compress(std::span<const std::uint8_t> data,
                                          const CompressorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case CodecFamily::store:
            return std::vector<std::uint8_t>(data.begin(), data.end());
        case CodecFamily::deflate:
            return codec_detail::deflate_compress(data, spec.level);
        case CodecFamily::bzip2:
            return codec_detail::bzip2_compress(data, spec.level);
        case CodecFamily::lzma:
            return codec_detail::lzma_compress_buf(data, static_cast<std::uint32_t>(spec.level));
        case CodecFamily::zstd:
            return codec_detail::zstd_compress(data, spec.level);
        case CodecFamily::lz4:
            return codec_detail::lz4_compress(data, spec.variant == "hc");
        case CodecFamily::flac:
            throw UnsupportedEncodingError(
                "the flac adapter consumes waveform datasets, not byte streams; use flac_compress");
    }
    throw Error("unreachable codec family");
}

inline std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> data,
                                            const CompressorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case CodecFamily::store:
            return std::vector<std::uint8_t>(data.begin(), data.end());
        case CodecFamily::deflate:
            return codec_detail::deflate_decompress(data);
        case CodecFamily::bzip2:
            return codec_detail::bzip2_decompress(data);
        case CodecFamily::lzma:
            return codec_detail::lzma_decompress_buf(data);
        case CodecFamily::zstd:
            return codec_detail::zstd_decompress(data);
        case CodecFamily::lz4:
            return codec_detail::lz4_decompress(data);
        case CodecFamily::flac:
            throw UnsupportedEncodingError(
                "the flac adapter consumes waveform datasets, not byte streams; use flac_decompress");
    }
    throw Error("unreachable codec family");
}

// ---------------------------------------------------------------------------
// FLAC adapter: shells out to a reference flac encoder, feeding PCM WAV.
// Compressed size is the container file size. Never falls back silently.
// ---------------------------------------------------------------------------

inline std::string flac_binary_path() {
    if (const char* env = std::getenv("WAVEBENCH_FLAC")) {
        if (std::filesystem::exists(env)) return env;
        return "";
    }
    const char* path_env = std::getenv("PATH");
    if (path_env == nullptr) return "";
    std::stringstream ss{std::string(path_env)};
    std::string dir;
    while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        const std::filesystem::path candidate = std::filesystem::path(dir) / "flac";
        std::error_code ec;
        if (std::filesystem::exists(candidate, ec) &&
            std::filesystem::is_regular_file(candidate, ec)) {
            return candidate.string();
        }
    }
    return "";
}

inline bool flac_adapter_available() { return !flac_binary_path().empty(); }

namespace codec_detail {

class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "wavebench-XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (mkdtemp(buf.data()) == nullptr) throw IoError("cannot create temporary directory");
        path_ = buf.data();
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void run_or_throw(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc != 0) throw IntegrityError("external command failed: " + cmd);
}

} // namespace codec_detail

/// Encodes a dataset as a FLAC container via the external encoder; the
/// returned bytes are the whole container file.
inline std::vector<std::uint8_t> flac_compress(const Dataset& d) {
    const std::string flac = flac_binary_path();
    if (flac.empty()) {
        throw AdapterUnavailableError(
            "flac adapter unavailable: no flac binary on PATH (set WAVEBENCH_FLAC to override)");
    }
    codec_detail::TempDir tmp;
    const auto wav_path = tmp.path() / "in.wav";
    const auto flac_path = tmp.path() / "out.flac";
    write_pcm_wav(d, wav_path.string());
    codec_detail::run_or_throw("'" + flac + "' --silent --best --force -o '" + flac_path.string() +
                               "' '" + wav_path.string() + "' >/dev/null 2>&1");
    return read_file_bytes(flac_path.string());
}

inline Dataset flac_decompress(std::span<const std::uint8_t> container) {
    const std::string flac = flac_binary_path();
    if (flac.empty()) {
        throw AdapterUnavailableError(
            "flac adapter unavailable: no flac binary on PATH (set WAVEBENCH_FLAC to override)");
    }
    codec_detail::TempDir tmp;
    const auto flac_path = tmp.path() / "in.flac";
    const auto wav_path = tmp.path() / "out.wav";
    write_file_bytes(flac_path.string(), container);
    codec_detail::run_or_throw("'" + flac + "' -d --silent --force -o '" + wav_path.string() +
                               "' '" + flac_path.string() + "' >/dev/null 2>&1");
    return read_pcm_wav(wav_path.string());
}

/// The documented, reproducible parameter sweep standing in for the paper's
/// unpublished per-format grids: deflate {1,6,9}, bzip2 {1,9}, lzma {0,6,9},
/// zstd {1,3,9,19}, lz4 {fast,hc}, store, plus adapters that are present.
/// Deterministic order and names.
inline std::vector<CompressorSpec> list_default_matrix() {
    std::vector<CompressorSpec> specs;
    for (int level : {1, 6, 9}) specs.push_back({CodecFamily::deflate, level, ""});
    for (int level : {1, 9}) specs.push_back({CodecFamily::bzip2, level, ""});
    for (int level : {0, 6, 9}) specs.push_back({CodecFamily::lzma, level, ""});
    for (int level : {1, 3, 9, 19}) specs.push_back({CodecFamily::zstd, level, ""});
    specs.push_back({CodecFamily::lz4, 0, "fast"});
    specs.push_back({CodecFamily::lz4, 0, "hc"});
    specs.push_back({CodecFamily::store, 0, ""});
    if (flac_adapter_available()) {
        specs.push_back({CodecFamily::flac, 0, ""});
    }
    return specs;
}

} // namespace wavebench
