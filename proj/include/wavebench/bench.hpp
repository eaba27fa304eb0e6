#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavebench/codecs.hpp"
#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"
#include "wavebench/ingest.hpp"
#include "wavebench/parallel.hpp"
#include "wavebench/transforms.hpp"

namespace wavebench {

// ---------------------------------------------------------------------------
// Representation specs
// ---------------------------------------------------------------------------

/// One named data representation: serialization order + transform chain +
/// compressor. The name is a pure function of the components.
struct RepresentationSpec {
    Orientation orientation = Orientation::row;
    TransformChain chain;
    CompressorSpec codec;

    std::string name(int bit_depth) const {
        std::string s = to_string(orientation);
        const std::string chain_name = chain.name(bit_depth);
        if (!chain_name.empty()) s += '+' + chain_name;
        s += '+' + codec.name();
        return s;
    }

    bool is_flac() const { return codec.family == CodecFamily::flac; }
};

/// Pipeline metadata a decoder needs to reverse an encoded buffer.
struct DatasetShape {
    std::size_t frames = 0;
    std::vector<std::string> channel_names;
    int bit_depth = 16;
    std::uint32_t sampling_rate = 0;

    static DatasetShape of(const Dataset& d) {
        DatasetShape s;
        s.frames = d.frames();
        s.bit_depth = d.bit_depth;
        s.sampling_rate = d.sampling_rate;
        for (const auto& ch : d.channels) s.channel_names.push_back(ch.name);
        return s;
    }
};

namespace bench_detail {

/// Largest element count <= n that bitshuffle accepts (multiple of 8).
inline std::size_t bitshuffle_body(std::size_t n) { return n - n % 8; }

} // namespace bench_detail

/// Applies the transform chain (pre-compression stages) of a spec:
/// per-channel delta, row/column flattening, then LEB128S or fixed-width
/// packing with an optional shuffle filter.
///
/// For bitshuffle the stream is split into a body whose element count is a
/// multiple of 8 and a pass-through tail, which keeps the stage a pure
/// permutation on any input length.
inline std::vector<std::uint8_t> chain_encode(const Dataset& d, Orientation orientation,
                                              const TransformChain& chain) {
    chain.validate();
    std::vector<std::vector<std::int64_t>> streams;
    streams.reserve(d.channels.size());
    for (const auto& ch : d.channels) {
        std::vector<std::int64_t> s = widen(ch.samples);
        if (chain.delta) s = delta_encode(s);
        streams.push_back(std::move(s));
    }
    const std::vector<std::int64_t> flat = flatten(streams, orientation);
    if (chain.encoding == TransformChain::Encoding::leb128s) {
        return leb128s_encode(flat);
    }
    const int width = chain.fixed_width(d.bit_depth);
    std::vector<std::uint8_t> bytes = pack_fixed(flat, width);
    if (chain.filter == TransformChain::Filter::shuffle) {
        bytes = byte_shuffle(bytes, static_cast<std::size_t>(width));
    } else if (chain.filter == TransformChain::Filter::bitshuffle) {
        const std::size_t body_elems = bench_detail::bitshuffle_body(flat.size());
        const std::size_t body_bytes = body_elems * static_cast<std::size_t>(width);
        std::vector<std::uint8_t> shuffled =
            bit_shuffle(std::span(bytes).subspan(0, body_bytes), width * 8);
        shuffled.insert(shuffled.end(), bytes.begin() + static_cast<std::ptrdiff_t>(body_bytes),
                        bytes.end());
        bytes = std::move(shuffled);
    }
    return bytes;
}

/// Exact inverse of chain_encode for a known dataset shape. Reconstructed
/// samples are range-checked against the declared bit depth.
inline Dataset chain_decode(std::span<const std::uint8_t> bytes, Orientation orientation,
                            const TransformChain& chain, const DatasetShape& shape) {
    chain.validate();
    const std::size_t nch = shape.channel_names.size();
    const std::size_t count = shape.frames * nch;

    std::vector<std::int64_t> flat;
    if (chain.encoding == TransformChain::Encoding::leb128s) {
        flat = leb128s_decode(bytes, count);
    } else {
        const int width = chain.fixed_width(shape.bit_depth);
        std::vector<std::uint8_t> packed;
        if (chain.filter == TransformChain::Filter::shuffle) {
            packed = byte_unshuffle(bytes, static_cast<std::size_t>(width));
        } else if (chain.filter == TransformChain::Filter::bitshuffle) {
            const std::size_t body_elems = bench_detail::bitshuffle_body(count);
            const std::size_t body_bytes = body_elems * static_cast<std::size_t>(width);
            if (bytes.size() < body_bytes) {
                throw CorruptionError("bitshuffled stream is shorter than its body");
            }
            packed = bit_unshuffle(bytes.subspan(0, body_bytes), width * 8);
            packed.insert(packed.end(), bytes.begin() + static_cast<std::ptrdiff_t>(body_bytes),
                          bytes.end());
        } else {
            packed.assign(bytes.begin(), bytes.end());
        }
        flat = unpack_fixed(packed, width);
    }
    if (flat.size() != count) {
        throw LengthError("decoded stream holds " + std::to_string(flat.size()) +
                          " samples, expected " + std::to_string(count));
    }

    auto streams = unflatten(flat, orientation, nch);
    Dataset d;
    d.bit_depth = shape.bit_depth;
    d.sampling_rate = shape.sampling_rate;
    const std::int64_t lo = code_min(shape.bit_depth);
    const std::int64_t hi = code_max(shape.bit_depth);
    for (std::size_t c = 0; c < nch; ++c) {
        std::vector<std::int64_t> s = std::move(streams[c]);
        if (chain.delta) s = delta_decode_checked(s, shape.bit_depth);
        ChannelBuffer ch;
        ch.name = shape.channel_names[c];
        ch.samples.reserve(s.size());
        for (std::int64_t v : s) {
            if (v < lo || v > hi) {
                throw CorruptionError("decoded sample " + std::to_string(v) + " outside " +
                                      std::to_string(shape.bit_depth) + "-bit range");
            }
            ch.samples.push_back(static_cast<std::int32_t>(v));
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

/// Full pipeline: transform chain then compressor.
inline std::vector<std::uint8_t> encode_representation(const Dataset& d,
                                                       const RepresentationSpec& spec) {
    if (spec.is_flac()) return flac_compress(d);
    return compress(chain_encode(d, spec.orientation, spec.chain), spec.codec);
}

inline Dataset decode_representation(std::span<const std::uint8_t> encoded,
                                     const RepresentationSpec& spec, const DatasetShape& shape) {
    if (spec.is_flac()) return flac_decompress(encoded);
    const std::vector<std::uint8_t> bytes = decompress(encoded, spec.codec);
    return chain_decode(bytes, spec.orientation, spec.chain, shape);
}

/// Parses a canonical representation name such as "col+delta+leb128s+bzip2:9"
/// or "row+shuffle:2+zstd:19". Width suffixes on shuffle/bitshuffle are
/// accepted and ignored; the width is a function of bit depth and delta.
inline RepresentationSpec parse_representation(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == '+') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2) {
        throw ParseError("representation name '" + name + "' needs orientation and codec");
    }
    RepresentationSpec spec;
    spec.orientation = orientation_from_string(parts.front());
    spec.codec = CompressorSpec::parse(parts.back());
    for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
        const std::string& p = parts[i];
        const std::string head = p.substr(0, p.find(':'));
        if (head == "delta") {
            spec.chain.delta = true;
        } else if (head == "leb128s") {
            spec.chain.encoding = TransformChain::Encoding::leb128s;
        } else if (head == "shuffle") {
            spec.chain.filter = TransformChain::Filter::shuffle;
        } else if (head == "bitshuffle") {
            spec.chain.filter = TransformChain::Filter::bitshuffle;
        } else {
            throw ParseError("unknown transform '" + p + "' in '" + name + "'");
        }
    }
    spec.chain.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Matrix enumeration
// ---------------------------------------------------------------------------

struct MatrixConfig {
    std::vector<Orientation> orientations = {Orientation::row, Orientation::column};
    std::vector<bool> delta_options = {false, true};
    // encodings named: "raw" (native fixed width), "shuffle", "bitshuffle", "leb128s"
    std::vector<std::string> encodings = {"raw", "shuffle", "bitshuffle", "leb128s"};
    std::vector<CompressorSpec> codecs = list_default_matrix();
    bool probe_round_trip = true;

    static MatrixConfig defaults() { return {}; }
};

namespace bench_detail {

inline TransformChain chain_for(const std::string& encoding, bool delta) {
    TransformChain chain;
    chain.delta = delta;
    if (encoding == "raw") {
        chain.encoding = TransformChain::Encoding::fixed;
        chain.filter = TransformChain::Filter::none;
    } else if (encoding == "shuffle") {
        chain.encoding = TransformChain::Encoding::fixed;
        chain.filter = TransformChain::Filter::shuffle;
    } else if (encoding == "bitshuffle") {
        chain.encoding = TransformChain::Encoding::fixed;
        chain.filter = TransformChain::Filter::bitshuffle;
    } else if (encoding == "leb128s") {
        chain.encoding = TransformChain::Encoding::leb128s;
        chain.filter = TransformChain::Filter::none;
    } else {
        throw EnumerationError("unknown encoding '" + encoding + "'");
    }
    chain.validate();
    return chain;
}

/// Small deterministic probe dataset used to verify each enumerated spec
/// round-trips before it is allowed into a benchmark run.
inline Dataset probe_dataset(int bit_depth) {
    Dataset d;
    d.bit_depth = bit_depth;
    d.sampling_rate = 1000;
    d.source_id = "probe";
    const std::int64_t hi = code_max(bit_depth);
    const std::int64_t lo = code_min(bit_depth);
    for (std::size_t c = 0; c < 2; ++c) {
        ChannelBuffer ch;
        ch.name = "ch" + std::to_string(c);
        std::uint64_t state = 0x9E3779B97F4A7C15ull + c;
        for (std::size_t i = 0; i < 257; ++i) { // odd count exercises the bitshuffle tail
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            const auto span_codes = static_cast<std::uint64_t>(hi - lo + 1);
            ch.samples.push_back(static_cast<std::int32_t>(
                lo + static_cast<std::int64_t>(state % span_codes)));
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

inline bool equal_samples(const Dataset& a, const Dataset& b) {
    if (a.channels.size() != b.channels.size()) return false;
    for (std::size_t c = 0; c < a.channels.size(); ++c) {
        if (a.channels[c].samples != b.channels[c].samples) return false;
    }
    return true;
}

} // namespace bench_detail

/// Deterministic cross-product of orientations x chains x codecs with the
/// documented exclusions. Every spec is round-trip-verified on a probe
/// dataset before being returned. Names are unique by construction.
inline std::vector<RepresentationSpec> enumerate_matrix(
    const MatrixConfig& config = MatrixConfig::defaults()) {
    std::vector<RepresentationSpec> specs;
    for (const Orientation orientation : config.orientations) {
        for (const bool delta : config.delta_options) {
            for (const std::string& encoding : config.encodings) {
                for (const CompressorSpec& codec : config.codecs) {
                    if (codec.family == CodecFamily::flac) continue; // added once below
                    RepresentationSpec spec;
                    spec.orientation = orientation;
                    spec.chain = bench_detail::chain_for(encoding, delta);
                    spec.codec = codec;
                    specs.push_back(spec);
                }
            }
        }
    }
    for (const CompressorSpec& codec : config.codecs) {
        if (codec.family == CodecFamily::flac) {
            // audio container: fixed frame-interleaved layout, no chain
            RepresentationSpec spec;
            spec.orientation = Orientation::row;
            spec.codec = codec;
            specs.push_back(spec);
        }
    }

    if (config.probe_round_trip) {
        for (int bit_depth : {16, 24}) {
            const Dataset probe = bench_detail::probe_dataset(bit_depth);
            const DatasetShape shape = DatasetShape::of(probe);
            for (const auto& spec : specs) {
                if (spec.is_flac() && bit_depth == 24) continue; // one depth suffices for probing
                const auto encoded = encode_representation(probe, spec);
                const Dataset back = decode_representation(encoded, spec, shape);
                if (!bench_detail::equal_samples(probe, back)) {
                    throw EnumerationError("spec '" + spec.name(bit_depth) +
                                           "' failed its probe round-trip");
                }
            }
        }
    }
    return specs;
}

// ---------------------------------------------------------------------------
// Benchmark records
// ---------------------------------------------------------------------------

/// Result of applying one representation spec to one file.
/// CS = compressed/original * 100%, SS = 100 - CS, CR = original/compressed.
struct BenchRecord {
    std::string dataset_id;
    std::string file_id;
    std::string spec_name;
    std::uint64_t original_bytes = 0;
    std::uint64_t compressed_bytes = 0;
    double cs_pct = 0.0;
    double ss_pct = 0.0;
    double cr = 0.0;
    double encode_seconds = 0.0; // informational, never ranked
    double decode_seconds = 0.0;
};

/// Runs one spec over one loaded dataset. The baseline is the dataset-native
/// raw serialization (2 or 3 bytes per sample). The decode path is executed
/// and verified sample-exact before a record is produced; a mismatch throws
/// and the record is discarded.
inline BenchRecord run_dataset(const Dataset& d, const RepresentationSpec& spec,
                               const std::string& dataset_id, const std::string& file_id) {
    using clock = std::chrono::steady_clock;
    const DatasetShape shape = DatasetShape::of(d);

    const auto t0 = clock::now();
    const std::vector<std::uint8_t> encoded = encode_representation(d, spec);
    const auto t1 = clock::now();
    const Dataset back = decode_representation(encoded, spec, shape);
    const auto t2 = clock::now();

    if (!bench_detail::equal_samples(d, back)) {
        throw CorruptionError("spec '" + spec.name(d.bit_depth) +
                              "' did not round-trip file '" + file_id + "'");
    }

    BenchRecord r;
    r.dataset_id = dataset_id;
    r.file_id = file_id;
    r.spec_name = spec.name(d.bit_depth);
    r.original_bytes = d.native_bytes();
    r.compressed_bytes = encoded.size();
    if (r.original_bytes == 0) throw PlanError("cannot benchmark an empty file");
    if (r.compressed_bytes == 0) throw IntegrityError("codec produced an empty artifact");
    r.cs_pct = static_cast<double>(r.compressed_bytes) / static_cast<double>(r.original_bytes) * 100.0;
    r.ss_pct = 100.0 - r.cs_pct;
    r.cr = static_cast<double>(r.original_bytes) / static_cast<double>(r.compressed_bytes);
    r.encode_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.decode_seconds = std::chrono::duration<double>(t2 - t1).count();
    return r;
}

inline BenchRecord run_file(const std::string& path, const RepresentationSpec& spec,
                            const LoadOptions& options = {},
                            const std::string& dataset_id = "dataset") {
    return run_dataset(load_dataset(path, options), spec, dataset_id, path);
}

/// (file x spec) product with a bounded worker pool. Record order is
/// canonical (file-major, then spec) regardless of the parallelism degree.
inline std::vector<BenchRecord> run_matrix(const std::vector<std::string>& files,
                                           const std::vector<RepresentationSpec>& specs,
                                           const LoadOptions& options,
                                           const std::string& dataset_id, unsigned jobs) {
    std::vector<BenchRecord> records(files.size() * specs.size());
    // one dataset load per (file, spec) keeps the memory contract: at most
    // one file resident per worker
    parallel_for(records.size(), jobs, [&](std::size_t i) {
        const std::size_t f = i / specs.size();
        const std::size_t s = i % specs.size();
        records[i] = run_file(files[f], specs[s], options, dataset_id);
    });
    return records;
}

// ---------------------------------------------------------------------------
// Chunk sweep
// ---------------------------------------------------------------------------

/// Ordered chunk-size targets in bytes. The full-scale default is 1, 2, 4,
/// 8, 16, 32, 64, 128 MiB then 128-MiB steps to 3072 MiB; scale_divisor
/// shrinks every size for desk-scale runs.
struct ChunkPlan {
    std::vector<std::uint64_t> sizes;

    static ChunkPlan paper_scale() {
        ChunkPlan p;
        constexpr std::uint64_t mib = 1ull << 20;
        for (std::uint64_t s : {1, 2, 4, 8, 16, 32, 64}) p.sizes.push_back(s * mib);
        for (std::uint64_t s = 128; s <= 3072; s += 128) p.sizes.push_back(s * mib);
        return p;
    }

    static ChunkPlan desk_scale(std::uint64_t divisor = 16) {
        ChunkPlan p = paper_scale();
        for (auto& s : p.sizes) s /= divisor;
        return p;
    }

    void validate() const {
        if (sizes.empty()) throw PlanError("chunk plan is empty");
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            if (sizes[i] <= sizes[i - 1]) throw PlanError("chunk sizes must be strictly increasing");
        }
        if (sizes.front() == 0) throw PlanError("chunk sizes must be positive");
    }
};

struct ChunkSweepResult {
    std::string spec_name;
    std::uint64_t chunk_bytes = 0;
    double mean_cr = 0.0;
    std::size_t chunks = 0;
};

namespace bench_detail {

struct CorpusShape {
    std::vector<std::string> channel_names;
    int bit_depth = 16;
    std::uint32_t sampling_rate = 0;
    std::vector<std::size_t> file_frames; // per file
    std::size_t total_frames = 0;
};

inline CorpusShape corpus_shape(const std::vector<std::string>& files,
                                const LoadOptions& options) {
    CorpusShape shape;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const FileProbe probe = probe_file(files[i], options);
        if (i == 0) {
            shape.channel_names = probe.channel_names;
            shape.bit_depth = probe.bit_depth;
            shape.sampling_rate = probe.sampling_rate;
        } else if (probe.channel_names != shape.channel_names ||
                   probe.bit_depth != shape.bit_depth) {
            throw CorpusError("file '" + files[i] + "' does not match the corpus channel schema");
        }
        shape.file_frames.push_back(probe.frames);
        shape.total_frames += probe.frames;
    }
    return shape;
}

/// Greedily consumes `count` frames starting at `start_frame` from the file
/// sequence, crossing file boundaries. Only the touched byte ranges are
/// read, so a worker holds at most its own chunk in memory.
inline Dataset read_frame_range(const std::vector<std::string>& files, const LoadOptions& options,
                                const CorpusShape& shape, std::size_t start_frame,
                                std::size_t count) {
    Dataset out;
    out.bit_depth = shape.bit_depth;
    out.sampling_rate = shape.sampling_rate;
    out.channels.resize(shape.channel_names.size());
    for (std::size_t c = 0; c < out.channels.size(); ++c) {
        out.channels[c].name = shape.channel_names[c];
        out.channels[c].samples.reserve(count);
    }
    std::size_t file_start = 0;
    for (std::size_t f = 0; f < files.size() && count > 0; ++f) {
        const std::size_t file_end = file_start + shape.file_frames[f];
        if (start_frame < file_end) {
            const std::size_t local = start_frame - file_start;
            const std::size_t take = std::min(count, shape.file_frames[f] - local);
            const Dataset part = read_frame_window(files[f], options, local, take);
            for (std::size_t c = 0; c < out.channels.size(); ++c) {
                const auto& src = part.channels[c].samples;
                out.channels[c].samples.insert(out.channels[c].samples.end(), src.begin(),
                                               src.end());
            }
            start_frame += take;
            count -= take;
        }
        file_start = file_end;
    }
    return out;
}

} // namespace bench_detail

/// Assembles frame-aligned chunks greedily across file boundaries for every
/// plan size, runs every spec per chunk, and reports the mean CR per
/// (spec, size). Chunk byte size is frames x channels x native width,
/// truncated to whole frames; a partial remainder chunk is included.
inline std::vector<ChunkSweepResult> chunk_sweep(const std::vector<std::string>& files,
                                                 const std::vector<RepresentationSpec>& specs,
                                                 const ChunkPlan& plan,
                                                 const LoadOptions& options = {},
                                                 unsigned jobs = 1) {
    plan.validate();
    if (files.empty()) throw CorpusError("chunk sweep needs at least one input file");
    const bench_detail::CorpusShape shape = bench_detail::corpus_shape(files, options);
    const std::size_t frame_bytes =
        shape.channel_names.size() * static_cast<std::size_t>(native_width(shape.bit_depth));
    if (frame_bytes == 0 || shape.total_frames == 0) {
        throw CorpusError("corpus holds no frames");
    }

    std::vector<ChunkSweepResult> results;
    for (const std::uint64_t target : plan.sizes) {
        const std::size_t frames_per_chunk = static_cast<std::size_t>(target / frame_bytes);
        if (frames_per_chunk == 0) {
            throw PlanError("chunk size " + std::to_string(target) +
                            " bytes is smaller than one frame (" + std::to_string(frame_bytes) +
                            " bytes)");
        }
        const std::size_t chunk_count =
            (shape.total_frames + frames_per_chunk - 1) / frames_per_chunk;

        // mean CR per spec over all chunks of this size; workers hold one
        // chunk each
        std::vector<std::vector<double>> per_chunk_cr(chunk_count,
                                                      std::vector<double>(specs.size(), 0.0));
        parallel_for(chunk_count, jobs, [&](std::size_t k) {
            const std::size_t start = k * frames_per_chunk;
            const std::size_t take = std::min(frames_per_chunk, shape.total_frames - start);
            const Dataset chunk =
                bench_detail::read_frame_range(files, options, shape, start, take);
            const DatasetShape ds = DatasetShape::of(chunk);
            for (std::size_t s = 0; s < specs.size(); ++s) {
                const auto encoded = encode_representation(chunk, specs[s]);
                const Dataset back = decode_representation(encoded, specs[s], ds);
                if (!bench_detail::equal_samples(chunk, back)) {
                    throw CorruptionError("spec '" + specs[s].name(chunk.bit_depth) +
                                          "' did not round-trip a chunk");
                }
                per_chunk_cr[k][s] =
                    static_cast<double>(chunk.native_bytes()) / static_cast<double>(encoded.size());
            }
        });

        for (std::size_t s = 0; s < specs.size(); ++s) {
            ChunkSweepResult r;
            r.spec_name = specs[s].name(shape.bit_depth);
            r.chunk_bytes = target;
            r.chunks = chunk_count;
            double sum = 0.0;
            for (std::size_t k = 0; k < chunk_count; ++k) sum += per_chunk_cr[k][s];
            r.mean_cr = sum / static_cast<double>(chunk_count);
            results.push_back(r);
        }
    }
    return results;
}

// ---------------------------------------------------------------------------
// Ranking and reports
// ---------------------------------------------------------------------------

struct RankedSpec {
    std::string dataset_id;
    std::string spec_name;
    double mean_cs_pct = 0.0; // per-file CS weighted by original bytes
    std::uint64_t original_bytes = 0;
    std::uint64_t compressed_bytes = 0;
};

/// Per-dataset mean CS per spec (weighted by original bytes), ascending;
/// ties broken by spec name so the ranking is deterministic.
inline std::vector<RankedSpec> rank(const std::vector<BenchRecord>& records) {
    if (records.empty()) throw Error("cannot rank an empty record set");
    std::map<std::pair<std::string, std::string>, RankedSpec> acc;
    for (const auto& r : records) {
        auto& entry = acc[{r.dataset_id, r.spec_name}];
        entry.dataset_id = r.dataset_id;
        entry.spec_name = r.spec_name;
        entry.original_bytes += r.original_bytes;
        entry.compressed_bytes += r.compressed_bytes;
    }
    std::vector<RankedSpec> out;
    out.reserve(acc.size());
    for (auto& [key, entry] : acc) {
        entry.mean_cs_pct = static_cast<double>(entry.compressed_bytes) /
                            static_cast<double>(entry.original_bytes) * 100.0;
        out.push_back(entry);
    }
    std::sort(out.begin(), out.end(), [](const RankedSpec& a, const RankedSpec& b) {
        if (a.dataset_id != b.dataset_id) return a.dataset_id < b.dataset_id;
        if (a.mean_cs_pct != b.mean_cs_pct) return a.mean_cs_pct < b.mean_cs_pct;
        return a.spec_name < b.spec_name;
    });
    return out;
}

namespace bench_detail {

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace bench_detail

inline constexpr const char* kBenchCsvHeader =
    "dataset,file,spec,original_bytes,compressed_bytes,cs_pct,ss_pct,cr,encode_seconds,decode_seconds";

/// Lossless CSV dump of records; parse_records inverts it exactly (doubles
/// are printed with 17 significant digits).
inline void write_records_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << kBenchCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.dataset_id << ',' << r.file_id << ',' << r.spec_name << ',' << r.original_bytes
           << ',' << r.compressed_bytes << ',' << bench_detail::format_double(r.cs_pct) << ','
           << bench_detail::format_double(r.ss_pct) << ',' << bench_detail::format_double(r.cr)
           << ',' << bench_detail::format_double(r.encode_seconds) << ','
           << bench_detail::format_double(r.decode_seconds) << '\n';
    }
}

inline std::vector<BenchRecord> parse_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("records CSV is empty");
    if (line != kBenchCsvHeader && line != std::string(kBenchCsvHeader) + "\r") {
        throw ParseError("records CSV header does not match the documented schema");
    }
    std::vector<BenchRecord> out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        const auto f = bench_detail::split_line(line, ',');
        if (f.size() != 10) {
            throw ParseError("records CSV row " + std::to_string(row) + " has " +
                             std::to_string(f.size()) + " fields, expected 10");
        }
        BenchRecord r;
        try {
            r.dataset_id = f[0];
            r.file_id = f[1];
            r.spec_name = f[2];
            r.original_bytes = std::stoull(f[3]);
            r.compressed_bytes = std::stoull(f[4]);
            r.cs_pct = std::stod(f[5]);
            r.ss_pct = std::stod(f[6]);
            r.cr = std::stod(f[7]);
            r.encode_seconds = std::stod(f[8]);
            r.decode_seconds = std::stod(f[9]);
        } catch (const std::exception&) {
            throw ParseError("records CSV row " + std::to_string(row) + " is malformed");
        }
        out.push_back(r);
    }
    return out;
}

enum class ReportFormat { csv, text, markdown };

/// Renders records plus a ranking summary. CSV is the lossless dump; text
/// and markdown show the top-N ranking.
inline std::string report(const std::vector<BenchRecord>& records, ReportFormat format,
                          std::size_t top_n = 30) {
    std::ostringstream os;
    if (format == ReportFormat::csv) {
        write_records_csv(os, records);
        return os.str();
    }
    const std::vector<RankedSpec> ranking = records.empty() ? std::vector<RankedSpec>{} : rank(records);
    const std::size_t n = std::min(top_n, ranking.size());
    if (format == ReportFormat::markdown) {
        os << "| rank | dataset | spec | mean CS % |\n";
        os << "|-----:|---------|------|----------:|\n";
        for (std::size_t i = 0; i < n; ++i) {
            os << "| " << (i + 1) << " | " << ranking[i].dataset_id << " | " << ranking[i].spec_name
               << " | " << std::fixed << std::setprecision(2) << ranking[i].mean_cs_pct << " |\n";
        }
    } else {
        os << std::left << std::setw(6) << "rank" << std::setw(16) << "dataset" << std::setw(40)
           << "spec" << std::right << std::setw(12) << "mean CS %" << '\n';
        for (std::size_t i = 0; i < n; ++i) {
            os << std::left << std::setw(6) << (i + 1) << std::setw(16) << ranking[i].dataset_id
               << std::setw(40) << ranking[i].spec_name << std::right << std::setw(12) << std::fixed
               << std::setprecision(2) << ranking[i].mean_cs_pct << '\n';
        }
    }
    return os.str();
}

/// gnuplot-compatible chunk-sweep dump: "spec chunk_bytes mean_cr" rows.
inline void write_chunk_sweep_data(std::ostream& os, const std::vector<ChunkSweepResult>& results) {
    os << "# spec chunk_bytes mean_cr chunks\n";
    for (const auto& r : results) {
        os << r.spec_name << ' ' << r.chunk_bytes << ' ' << bench_detail::format_double(r.mean_cr)
           << ' ' << r.chunks << '\n';
    }
}

} // namespace wavebench
