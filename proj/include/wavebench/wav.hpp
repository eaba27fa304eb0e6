#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"

namespace wavebench {
namespace wav_detail {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

inline std::uint32_t read_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_u16le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

inline void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
    out.insert(out.end(), tag, tag + 4);
}

} // namespace wav_detail

/// Encodes a dataset as a canonical RIFF/WAVE file (format tag PCM, 16- or
/// 24-bit, frame-interleaved little-endian samples).
inline std::vector<std::uint8_t> encode_pcm_wav(const Dataset& d) {
    using namespace wav_detail;
    if (!valid_bit_depth(d.bit_depth)) {
        throw UnsupportedEncodingError("WAV writer supports 16- or 24-bit PCM only");
    }
    if (d.channels.empty()) {
        throw LayoutError("cannot write a WAV file with zero channels");
    }
    if (d.channels.size() > 0xFFFF) {
        throw LayoutError("channel count exceeds the WAV container limit");
    }
    d.validate();

    const int width = native_width(d.bit_depth);
    const std::size_t frames = d.frames();
    const std::size_t nch = d.channels.size();
    const std::uint64_t data_size64 =
        static_cast<std::uint64_t>(frames) * nch * static_cast<std::uint64_t>(width);
    if (data_size64 > 0xFFFFFFFFull - 44) {
        throw LayoutError("dataset too large for a RIFF container");
    }
    const auto data_size = static_cast<std::uint32_t>(data_size64);
    const std::uint32_t block_align = static_cast<std::uint32_t>(nch * width);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size + (data_size & 1));
    put_tag(out, "RIFF");
    put_u32le(out, 36 + data_size + (data_size & 1));
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32le(out, 16);
    put_u16le(out, kFormatPcm);
    put_u16le(out, static_cast<std::uint16_t>(nch));
    put_u32le(out, d.sampling_rate);
    put_u32le(out, d.sampling_rate * block_align);
    put_u16le(out, static_cast<std::uint16_t>(block_align));
    put_u16le(out, static_cast<std::uint16_t>(d.bit_depth));
    put_tag(out, "data");
    put_u32le(out, data_size);
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t c = 0; c < nch; ++c) {
            const auto u = static_cast<std::uint32_t>(d.channels[c].samples[f]);
            out.push_back(static_cast<std::uint8_t>(u));
            out.push_back(static_cast<std::uint8_t>(u >> 8));
            if (width == 3) out.push_back(static_cast<std::uint8_t>(u >> 16));
        }
    }
    if (data_size & 1) out.push_back(0); // RIFF chunks are 2-byte aligned
    return out;
}

/// Parses a canonical PCM WAV byte image. Channel count, sampling rate, and
/// bit depth come from the container header; channels are named "ch0"..
inline Dataset decode_pcm_wav(std::span<const std::uint8_t> bytes,
                              const std::string& source_id = "") {
    using namespace wav_detail;
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw ContainerError("not a RIFF/WAVE file");
    }

    bool have_fmt = false;
    std::uint16_t format_tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits_per_sample = 0;
    std::size_t data_pos = 0;
    std::size_t data_size = 0;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint8_t* hdr = bytes.data() + pos;
        const std::uint32_t chunk_size = read_u32le(hdr + 4);
        const std::size_t body = pos + 8;
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_size < 16 || body + 16 > bytes.size()) {
                throw ContainerError("malformed fmt chunk");
            }
            const std::uint8_t* f = bytes.data() + body;
            format_tag = read_u16le(f + 0);
            channels = read_u16le(f + 2);
            sample_rate = read_u32le(f + 4);
            block_align = read_u16le(f + 12);
            bits_per_sample = read_u16le(f + 14);
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            data_pos = body;
            data_size = chunk_size;
            have_data = true;
        }
        pos = body + chunk_size + (chunk_size & 1);
    }

    if (!have_fmt) throw ContainerError("missing fmt chunk");
    if (!have_data) throw ContainerError("missing data chunk");
    if (format_tag == kFormatIeeeFloat) {
        throw UnsupportedEncodingError("float PCM WAV is not supported");
    }
    if (format_tag != kFormatPcm) {
        throw UnsupportedEncodingError("WAV format tag " + std::to_string(format_tag) +
                                       " is not canonical integer PCM");
    }
    if (bits_per_sample != 16 && bits_per_sample != 24) {
        throw UnsupportedEncodingError("WAV bit depth " + std::to_string(bits_per_sample) +
                                       " is not supported (16 or 24 required)");
    }
    if (channels == 0) throw ContainerError("WAV header declares zero channels");
    const std::size_t width = bits_per_sample / 8;
    if (block_align != channels * width) {
        throw ContainerError("WAV block alignment disagrees with channel count and bit depth");
    }
    if (data_pos + data_size > bytes.size()) {
        throw ContainerError("WAV data chunk extends past end of file");
    }
    if (data_size % block_align != 0) {
        throw ContainerError("WAV data chunk holds a partial frame");
    }

    const std::size_t frames = data_size / block_align;
    Dataset d;
    d.bit_depth = bits_per_sample;
    d.sampling_rate = sample_rate;
    d.source_id = source_id;
    d.channels.resize(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        d.channels[c].name = "ch" + std::to_string(c);
        d.channels[c].samples.resize(frames);
    }
    const std::uint8_t* p = bytes.data() + data_pos;
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t c = 0; c < channels; ++c) {
            std::uint32_t u = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8);
            if (width == 3) {
                u |= static_cast<std::uint32_t>(p[2]) << 16;
                if (u & 0x800000u) u |= 0xFF000000u;
            } else {
                if (u & 0x8000u) u |= 0xFFFF0000u;
            }
            d.channels[c].samples[f] = static_cast<std::int32_t>(u);
            p += width;
        }
    }
    return d;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
        throw IoError("failed to read '" + path + "'");
    }
    return bytes;
}

inline void write_file_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    if (!bytes.empty() &&
        !out.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()))) {
        throw IoError("failed to write '" + path + "'");
    }
}

/// Header facts needed to slice a WAV without loading it whole.
struct WavInfo {
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits_per_sample = 0;
    std::uint64_t data_pos = 0;
    std::uint64_t frames = 0;
    std::size_t block_align = 0;
};

/// Streams through the chunk list of a PCM WAV file, validating the header
/// the same way decode_pcm_wav does but reading only chunk headers.
inline WavInfo scan_wav_header(std::istream& in, const std::string& source_id = "") {
    using namespace wav_detail;
    std::uint8_t pre[12];
    if (!in.read(reinterpret_cast<char*>(pre), 12) || std::memcmp(pre, "RIFF", 4) != 0 ||
        std::memcmp(pre + 8, "WAVE", 4) != 0) {
        throw ContainerError("'" + source_id + "' is not a RIFF/WAVE file");
    }
    WavInfo info;
    bool have_fmt = false;
    bool have_data = false;
    std::uint16_t format_tag = 0;
    std::uint64_t data_size = 0;
    std::uint64_t pos = 12;
    std::uint8_t hdr[8];
    while (in.read(reinterpret_cast<char*>(hdr), 8)) {
        const std::uint32_t chunk_size = read_u32le(hdr + 4);
        const std::uint64_t body = pos + 8;
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            std::uint8_t f[16];
            if (chunk_size < 16 || !in.read(reinterpret_cast<char*>(f), 16)) {
                throw ContainerError("malformed fmt chunk");
            }
            format_tag = read_u16le(f + 0);
            info.channels = read_u16le(f + 2);
            info.sample_rate = read_u32le(f + 4);
            info.bits_per_sample = read_u16le(f + 14);
            have_fmt = true;
            in.seekg(static_cast<std::streamoff>(body + chunk_size + (chunk_size & 1)),
                     std::ios::beg);
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            info.data_pos = body;
            data_size = chunk_size;
            have_data = true;
            in.seekg(static_cast<std::streamoff>(body + chunk_size + (chunk_size & 1)),
                     std::ios::beg);
        } else {
            in.seekg(static_cast<std::streamoff>(body + chunk_size + (chunk_size & 1)),
                     std::ios::beg);
        }
        pos = body + chunk_size + (chunk_size & 1);
        if (!in) break;
    }
    in.clear();
    if (!have_fmt) throw ContainerError("missing fmt chunk");
    if (!have_data) throw ContainerError("missing data chunk");
    if (format_tag == kFormatIeeeFloat) {
        throw UnsupportedEncodingError("float PCM WAV is not supported");
    }
    if (format_tag != kFormatPcm) {
        throw UnsupportedEncodingError("WAV format tag " + std::to_string(format_tag) +
                                       " is not canonical integer PCM");
    }
    if (info.bits_per_sample != 16 && info.bits_per_sample != 24) {
        throw UnsupportedEncodingError("WAV bit depth " + std::to_string(info.bits_per_sample) +
                                       " is not supported (16 or 24 required)");
    }
    if (info.channels == 0) throw ContainerError("WAV header declares zero channels");
    info.block_align = info.channels * (info.bits_per_sample / 8u);
    if (data_size % info.block_align != 0) {
        throw ContainerError("WAV data chunk holds a partial frame");
    }
    info.frames = data_size / info.block_align;
    return info;
}

inline Dataset read_pcm_wav(const std::string& path) {
    return decode_pcm_wav(read_file_bytes(path), path);
}

inline void write_pcm_wav(const Dataset& d, const std::string& path) {
    write_file_bytes(path, encode_pcm_wav(d));
}

} // namespace wavebench
