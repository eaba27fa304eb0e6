// wavebench CLI: entropy analysis, representation benchmarking, chunk-size
// sweeps, synthetic corpus generation, and format conversion for
// multi-channel LPCM waveform datasets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavebench/wavebench.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct IngestFlags {
    std::string format = "auto";
    int bit_depth = 16;
    std::uint32_t rate = 0;
    std::size_t raw_channels = 1;
    std::string raw_order = "little";
    std::string raw_orientation = "row";
    std::string channel_names;
    std::string csv_spec_path;
    std::string calibration_path;
    bool raw_flags_given = false;
};

void add_ingest_flags(CLI::App* cmd, IngestFlags& flags) {
    cmd->add_option("--format", flags.format, "input format: auto|wav|raw|csv")
        ->check(CLI::IsMember({"auto", "wav", "raw", "csv"}));
    cmd->add_option("--bit-depth", flags.bit_depth, "raw/csv bit depth (16 or 24)")
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--rate", flags.rate, "raw/csv sampling rate in Hz")
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--channels", flags.raw_channels, "raw channel count")
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--byte-order", flags.raw_order, "raw byte order: little|big")
        ->check(CLI::IsMember({"little", "big"}))
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--orientation", flags.raw_orientation, "raw sample order: row|col")
        ->check(CLI::IsMember({"row", "col"}))
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--channel-names", flags.channel_names, "comma-separated channel names")
        ->each([&flags](const std::string&) { flags.raw_flags_given = true; });
    cmd->add_option("--csv-spec", flags.csv_spec_path, "CSV column spec (JSON file)");
    cmd->add_option("--calibration", flags.calibration_path,
                    "calibration sidecar (JSON file mapping channel -> factor)");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

wavebench::CsvSpec read_csv_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wavebench::IoError("cannot open CSV spec '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw wavebench::ParseError("CSV spec '" + path + "': " + e.what());
    }
    wavebench::CsvSpec spec;
    spec.bit_depth = j.value("bit_depth", 16);
    spec.sampling_rate = j.value("sampling_rate", 0u);
    spec.has_header = j.value("has_header", false);
    if (!j.contains("columns")) {
        throw wavebench::ParseError("CSV spec '" + path + "' lacks a columns array");
    }
    for (const auto& col : j["columns"]) {
        wavebench::CsvColumn c;
        const std::string kind = col.value("kind", "integer");
        if (kind == "timestamp") {
            c.kind = wavebench::CsvColumn::Kind::timestamp;
        } else if (kind == "integer") {
            c.kind = wavebench::CsvColumn::Kind::integer;
        } else if (kind == "real") {
            c.kind = wavebench::CsvColumn::Kind::real;
        } else {
            throw wavebench::ParseError("CSV spec column kind '" + kind + "' is unknown");
        }
        c.name = col.value("name", "ch" + std::to_string(spec.columns.size()));
        c.calibration = col.value("calibration", 0.0);
        spec.columns.push_back(c);
    }
    return spec;
}

wavebench::LoadOptions to_load_options(const IngestFlags& flags) {
    wavebench::LoadOptions options;
    if (flags.format == "wav") options.format = wavebench::FileFormat::wav;
    if (flags.format == "raw") options.format = wavebench::FileFormat::raw;
    if (flags.format == "csv") options.format = wavebench::FileFormat::csv;
    if (!flags.csv_spec_path.empty()) options.csv = read_csv_spec(flags.csv_spec_path);
    if (flags.raw_flags_given) {
        wavebench::RawMeta meta;
        meta.bit_depth = flags.bit_depth;
        meta.sampling_rate = flags.rate;
        meta.layout.sample_width = wavebench::native_width(flags.bit_depth);
        meta.layout.channel_count = flags.raw_channels;
        meta.layout.byte_order =
            flags.raw_order == "big" ? wavebench::ByteOrder::big : wavebench::ByteOrder::little;
        meta.layout.orientation = wavebench::orientation_from_string(flags.raw_orientation);
        meta.channel_names = split_commas(flags.channel_names);
        options.raw = meta;
    }
    if (!flags.calibration_path.empty()) options.calibration_sidecar = flags.calibration_path;
    return options;
}

wavebench::MatrixConfig read_matrix_config(const std::string& arg) {
    if (arg.empty() || arg == "default") return wavebench::MatrixConfig::defaults();
    std::ifstream in(arg);
    if (!in) throw wavebench::IoError("cannot open matrix config '" + arg + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw wavebench::ParseError("matrix config '" + arg + "': " + e.what());
    }
    wavebench::MatrixConfig cfg;
    if (j.contains("orientations")) {
        cfg.orientations.clear();
        for (const auto& o : j["orientations"]) {
            cfg.orientations.push_back(wavebench::orientation_from_string(o.get<std::string>()));
        }
    }
    if (j.contains("delta")) {
        cfg.delta_options.clear();
        for (const auto& d : j["delta"]) cfg.delta_options.push_back(d.get<bool>());
    }
    if (j.contains("encodings")) {
        cfg.encodings.clear();
        for (const auto& e : j["encodings"]) cfg.encodings.push_back(e.get<std::string>());
    }
    if (j.contains("codecs")) {
        cfg.codecs.clear();
        for (const auto& c : j["codecs"]) {
            cfg.codecs.push_back(wavebench::CompressorSpec::parse(c.get<std::string>()));
        }
    }
    return cfg;
}

wavebench::ChunkPlan read_chunk_plan(const std::string& arg, std::uint64_t divisor) {
    if (arg.empty() || arg == "default") return wavebench::ChunkPlan::desk_scale(divisor);
    if (arg == "paper") return wavebench::ChunkPlan::paper_scale();
    std::ifstream in(arg);
    if (!in) throw wavebench::IoError("cannot open chunk plan '" + arg + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw wavebench::ParseError("chunk plan '" + arg + "': " + e.what());
    }
    wavebench::ChunkPlan plan;
    if (j.contains("sizes_mib")) {
        for (const auto& s : j["sizes_mib"]) {
            plan.sizes.push_back(s.get<std::uint64_t>() * (1ull << 20));
        }
    } else if (j.contains("sizes_bytes")) {
        for (const auto& s : j["sizes_bytes"]) plan.sizes.push_back(s.get<std::uint64_t>());
    } else {
        plan = wavebench::ChunkPlan::desk_scale(j.value("divisor", divisor));
    }
    plan.validate();
    return plan;
}

/// Canonical description of a run for the manifest config hash. Identical
/// configuration and inputs always produce the same string.
std::string canonical_config(const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& kv,
                             const std::vector<std::string>& inputs) {
    std::ostringstream os;
    os << command;
    for (const auto& [k, v] : kv) os << '|' << k << '=' << v;
    for (const auto& in : inputs) os << '|' << in;
    return os.str();
}

void emit_manifest(const wavebench::RunManifest& manifest, const std::string& out_dir) {
    if (out_dir.empty()) {
        std::cerr << manifest.to_json().dump(2) << '\n';
    } else {
        std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::trunc);
        out << manifest.to_json().dump(2) << '\n';
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw wavebench::IoError("cannot write '" + path.string() + "'");
    out << content;
}

struct CommonFlags {
    unsigned jobs = wavebench::default_jobs();
    std::string out_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--jobs", flags.jobs, "worker threads (results are independent of this)");
    cmd->add_option("--out", flags.out_dir, "output directory (reports + manifest.json)");
}

void ensure_out_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

int run_synth(const std::string& spec_path, const std::string& out_path,
              std::optional<std::uint64_t> seed_override, const std::string& out_dir) {
    wavebench::SynthConfig cfg = wavebench::read_synth_config(spec_path);
    if (seed_override) cfg.spec.seed = *seed_override;
    const wavebench::Dataset d = wavebench::generate(cfg.spec, cfg.channels);

    const std::string ext = fs::path(out_path).extension().string();
    if (ext == ".wav") {
        wavebench::write_pcm_wav(d, out_path);
    } else {
        wavebench::RawLayout layout;
        layout.sample_width = wavebench::native_width(d.bit_depth);
        layout.channel_count = d.channels.size();
        wavebench::write_raw_binary(d, out_path, layout);
        wavebench::RawMeta meta;
        meta.layout = layout;
        meta.bit_depth = d.bit_depth;
        meta.sampling_rate = d.sampling_rate;
        for (const auto& ch : d.channels) meta.channel_names.push_back(ch.name);
        wavebench::write_raw_meta(out_path, meta);
    }

    wavebench::RunManifest manifest;
    manifest.command = "synth";
    manifest.timestamp = wavebench::RunManifest::now_iso8601();
    manifest.seeds = {cfg.spec.seed};
    manifest.add_input(spec_path);
    manifest.config_hash = wavebench::fnv1a64(
        canonical_config("synth", {{"seed", std::to_string(cfg.spec.seed)}, {"o", out_path}},
                         {spec_path}));
    ensure_out_dir(out_dir);
    emit_manifest(manifest, out_dir);
    std::cout << "wrote " << out_path << " (" << d.frames() << " frames, "
              << d.channels.size() << " channels, " << d.bit_depth << "-bit)\n";
    return 0;
}

int run_entropy(const std::vector<std::string>& files, const IngestFlags& ingest,
                const CommonFlags& common, const std::string& format,
                const std::string& dataset_id, const std::string& dump_dir) {
    const wavebench::LoadOptions options = to_load_options(ingest);
    const auto loader = [&options](const std::string& path) {
        return wavebench::load_dataset(path, options);
    };
    const std::vector<wavebench::ChannelReport> reports =
        wavebench::analyze_corpus(files, loader, common.jobs);

    std::ostringstream body;
    if (format == "table") {
        body << wavebench::format_report_table(dataset_id, reports);
    } else {
        wavebench::write_report_csv(body, dataset_id, reports);
    }

    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        // merged per-channel histograms for Fig-2-style external plotting
        std::map<std::string, wavebench::Histogram> merged;
        for (const auto& f : files) {
            const wavebench::Dataset d = loader(f);
            for (const auto& ch : d.channels) {
                auto it = merged.find(ch.name);
                if (it == merged.end()) {
                    merged.emplace(ch.name, wavebench::histogram(ch, d.bit_depth));
                } else {
                    wavebench::merge_into(it->second, wavebench::histogram(ch, d.bit_depth));
                }
            }
        }
        for (const auto& [name, hist] : merged) {
            std::ofstream out(fs::path(dump_dir) / (dataset_id + "-" + name + ".hist"));
            wavebench::write_histogram_dump(out, hist);
        }
    }

    wavebench::RunManifest manifest;
    manifest.command = "entropy";
    manifest.timestamp = wavebench::RunManifest::now_iso8601();
    for (const auto& f : files) manifest.add_input(f);
    manifest.config_hash = wavebench::fnv1a64(
        canonical_config("entropy", {{"format", format}, {"dataset-id", dataset_id}}, files));
    ensure_out_dir(common.out_dir);
    if (common.out_dir.empty()) {
        std::cout << body.str();
    } else {
        write_text_file(fs::path(common.out_dir) / ("entropy." + format), body.str());
    }
    emit_manifest(manifest, common.out_dir);
    return 0;
}

int run_bench(const std::vector<std::string>& files, const IngestFlags& ingest,
              const CommonFlags& common, const std::string& matrix_arg, std::size_t top_n,
              const std::string& format, const std::string& dataset_id, bool timings) {
    const wavebench::LoadOptions options = to_load_options(ingest);
    const wavebench::MatrixConfig config = read_matrix_config(matrix_arg);
    const std::vector<wavebench::RepresentationSpec> specs = wavebench::enumerate_matrix(config);
    std::vector<wavebench::BenchRecord> records =
        wavebench::run_matrix(files, specs, options, dataset_id, common.jobs);
    if (!timings) {
        for (auto& r : records) {
            r.encode_seconds = 0.0;
            r.decode_seconds = 0.0;
        }
    }

    wavebench::ReportFormat rf = wavebench::ReportFormat::text;
    if (format == "csv") rf = wavebench::ReportFormat::csv;
    if (format == "md") rf = wavebench::ReportFormat::markdown;

    wavebench::RunManifest manifest;
    manifest.command = "bench";
    manifest.timestamp = wavebench::RunManifest::now_iso8601();
    for (const auto& f : files) manifest.add_input(f);
    manifest.config_hash = wavebench::fnv1a64(canonical_config(
        "bench",
        {{"matrix", matrix_arg}, {"top", std::to_string(top_n)}, {"format", format}},
        files));

    ensure_out_dir(common.out_dir);
    if (common.out_dir.empty()) {
        std::cout << wavebench::report(records, rf, top_n);
    } else {
        std::ostringstream csv;
        wavebench::write_records_csv(csv, records);
        write_text_file(fs::path(common.out_dir) / "records.csv", csv.str());
        write_text_file(fs::path(common.out_dir) / "ranking.md",
                        wavebench::report(records, wavebench::ReportFormat::markdown, top_n));
        std::cout << wavebench::report(records, wavebench::ReportFormat::text, top_n);
    }
    emit_manifest(manifest, common.out_dir);
    return 0;
}

int run_chunk_sweep(const std::vector<std::string>& files, const IngestFlags& ingest,
                    const CommonFlags& common, const std::string& plan_arg,
                    std::uint64_t divisor, const std::string& specs_arg) {
    const wavebench::LoadOptions options = to_load_options(ingest);
    const wavebench::ChunkPlan plan = read_chunk_plan(plan_arg, divisor);
    std::vector<wavebench::RepresentationSpec> specs;
    for (const auto& name : split_commas(specs_arg)) {
        specs.push_back(wavebench::parse_representation(name));
    }
    const std::vector<wavebench::ChunkSweepResult> results =
        wavebench::chunk_sweep(files, specs, plan, options, common.jobs);

    std::ostringstream body;
    wavebench::write_chunk_sweep_data(body, results);

    wavebench::RunManifest manifest;
    manifest.command = "chunk-sweep";
    manifest.timestamp = wavebench::RunManifest::now_iso8601();
    for (const auto& f : files) manifest.add_input(f);
    manifest.config_hash = wavebench::fnv1a64(canonical_config(
        "chunk-sweep",
        {{"plan", plan_arg}, {"divisor", std::to_string(divisor)}, {"specs", specs_arg}}, files));
    ensure_out_dir(common.out_dir);
    if (common.out_dir.empty()) {
        std::cout << body.str();
    } else {
        write_text_file(fs::path(common.out_dir) / "chunk-sweep.dat", body.str());
    }
    emit_manifest(manifest, common.out_dir);
    return 0;
}

int run_convert(const std::string& input, const std::string& output, const IngestFlags& ingest,
                const std::string& to, const std::string& orientation) {
    const wavebench::LoadOptions options = to_load_options(ingest);
    const wavebench::Dataset d = wavebench::load_dataset(input, options);

    std::string target = to;
    if (target.empty()) {
        target = fs::path(output).extension() == ".wav" ? "wav" : "raw";
    }
    if (target == "wav") {
        wavebench::write_pcm_wav(d, output);
    } else {
        wavebench::RawLayout layout;
        layout.sample_width = wavebench::native_width(d.bit_depth);
        layout.channel_count = d.channels.size();
        layout.orientation = wavebench::orientation_from_string(orientation);
        wavebench::write_raw_binary(d, output, layout);
        wavebench::RawMeta meta;
        meta.layout = layout;
        meta.bit_depth = d.bit_depth;
        meta.sampling_rate = d.sampling_rate;
        for (const auto& ch : d.channels) {
            meta.channel_names.push_back(ch.name);
            if (ch.calibration) meta.calibration[ch.name] = *ch.calibration;
        }
        wavebench::write_raw_meta(output, meta);
    }
    std::cout << "wrote " << output << " (" << d.frames() << " frames)\n";
    return 0;
}

int run_report(const std::string& records_path, const std::string& format, std::size_t top_n,
               const std::string& out_dir) {
    std::ifstream in(records_path);
    if (!in) throw wavebench::IoError("cannot open records file '" + records_path + "'");
    const std::vector<wavebench::BenchRecord> records = wavebench::parse_records_csv(in);
    wavebench::ReportFormat rf = wavebench::ReportFormat::text;
    if (format == "csv") rf = wavebench::ReportFormat::csv;
    if (format == "md") rf = wavebench::ReportFormat::markdown;
    const std::string body = wavebench::report(records, rf, top_n);
    ensure_out_dir(out_dir);
    if (out_dir.empty()) {
        std::cout << body;
    } else {
        write_text_file(fs::path(out_dir) / ("report." + format), body);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavebench: signal entropy analysis and lossless representation benchmarking "
                 "for LPCM waveform datasets"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic waveform");
    std::string synth_spec_path;
    std::string synth_out;
    std::string synth_out_dir;
    std::uint64_t synth_seed = 0;
    bool synth_seed_given = false;
    synth->add_option("--spec", synth_spec_path, "synth spec (JSON file)")->required();
    synth->add_option("-o,--output", synth_out, "output file (.wav or raw)")->required();
    synth->add_option("--seed", synth_seed, "override the spec seed")
        ->each([&synth_seed_given](const std::string&) { synth_seed_given = true; });
    synth->add_option("--out", synth_out_dir, "directory for manifest.json");

    // entropy
    auto* entropy_cmd = app.add_subcommand("entropy", "per-channel histogram/entropy report");
    std::vector<std::string> entropy_files;
    IngestFlags entropy_ingest;
    CommonFlags entropy_common;
    std::string entropy_format = "csv";
    std::string entropy_dataset_id = "dataset";
    std::string entropy_dump_dir;
    entropy_cmd->add_option("files", entropy_files, "input files")->required();
    entropy_cmd->add_option("--report-format", entropy_format, "csv|table")
        ->check(CLI::IsMember({"csv", "table"}));
    entropy_cmd->add_option("--dataset-id", entropy_dataset_id, "label for report rows");
    entropy_cmd->add_option("--dump-histograms", entropy_dump_dir,
                            "write per-channel histogram dumps (gnuplot format) to a directory");
    add_ingest_flags(entropy_cmd, entropy_ingest);
    add_common_flags(entropy_cmd, entropy_common);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run the representation matrix over files");
    std::vector<std::string> bench_files;
    IngestFlags bench_ingest;
    CommonFlags bench_common;
    std::string bench_matrix = "default";
    std::size_t bench_top = 30;
    std::string bench_format = "table";
    std::string bench_dataset_id = "dataset";
    bool bench_timings = false;
    bench_cmd->add_option("files", bench_files, "input files")->required();
    bench_cmd->add_option("--matrix", bench_matrix, "matrix config: 'default' or a JSON file");
    bench_cmd->add_option("--top", bench_top, "ranking rows to show");
    bench_cmd->add_option("--report-format", bench_format, "table|csv|md")
        ->check(CLI::IsMember({"table", "csv", "md"}));
    bench_cmd->add_option("--dataset-id", bench_dataset_id, "label for report rows");
    bench_cmd->add_flag("--timings", bench_timings,
                        "include measured encode/decode seconds in the CSV (off by default so "
                        "reports are byte-reproducible)");
    add_ingest_flags(bench_cmd, bench_ingest);
    add_common_flags(bench_cmd, bench_common);

    // chunk-sweep
    auto* sweep_cmd = app.add_subcommand("chunk-sweep", "mean CR per chunk size");
    std::vector<std::string> sweep_files;
    IngestFlags sweep_ingest;
    CommonFlags sweep_common;
    std::string sweep_plan = "default";
    std::uint64_t sweep_divisor = 16;
    std::string sweep_specs = "row+zstd:9";
    sweep_cmd->add_option("files", sweep_files, "input files")->required();
    sweep_cmd->add_option("--plan", sweep_plan, "'default', 'paper', or a JSON plan file");
    sweep_cmd->add_option("--divisor", sweep_divisor, "desk-scale divisor for the default plan");
    sweep_cmd->add_option("--specs", sweep_specs, "comma-separated representation names");
    add_ingest_flags(sweep_cmd, sweep_ingest);
    add_common_flags(sweep_cmd, sweep_common);

    // convert
    auto* convert_cmd = app.add_subcommand("convert", "re-encode between formats/orientations");
    std::string convert_in;
    std::string convert_out;
    std::string convert_to;
    std::string convert_orientation = "row";
    IngestFlags convert_ingest;
    convert_cmd->add_option("input", convert_in, "input file")->required();
    convert_cmd->add_option("-o,--output", convert_out, "output file")->required();
    convert_cmd->add_option("--to", convert_to, "target format: wav|raw (default by extension)")
        ->check(CLI::IsMember({"", "wav", "raw"}));
    convert_cmd->add_option("--target-orientation", convert_orientation,
                            "raw output orientation: row|col")
        ->check(CLI::IsMember({"row", "col"}));
    add_ingest_flags(convert_cmd, convert_ingest);

    // report
    auto* report_cmd = app.add_subcommand("report", "re-render a saved records CSV");
    std::string report_records;
    std::string report_format = "table";
    std::size_t report_top = 30;
    std::string report_out_dir;
    report_cmd->add_option("--records", report_records, "records CSV produced by bench")->required();
    report_cmd->add_option("--report-format", report_format, "table|csv|md")
        ->check(CLI::IsMember({"table", "csv", "md"}));
    report_cmd->add_option("--top", report_top, "ranking rows to show");
    report_cmd->add_option("--out", report_out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2; // usage errors exit 2
    }

    try {
        if (synth->parsed()) {
            return run_synth(synth_spec_path, synth_out,
                             synth_seed_given ? std::optional<std::uint64_t>(synth_seed)
                                              : std::nullopt,
                             synth_out_dir);
        }
        if (entropy_cmd->parsed()) {
            return run_entropy(entropy_files, entropy_ingest, entropy_common, entropy_format,
                               entropy_dataset_id, entropy_dump_dir);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_files, bench_ingest, bench_common, bench_matrix, bench_top,
                             bench_format, bench_dataset_id, bench_timings);
        }
        if (sweep_cmd->parsed()) {
            return run_chunk_sweep(sweep_files, sweep_ingest, sweep_common, sweep_plan,
                                   sweep_divisor, sweep_specs);
        }
        if (convert_cmd->parsed()) {
            return run_convert(convert_in, convert_out, convert_ingest, convert_to,
                               convert_orientation);
        }
        if (report_cmd->parsed()) {
            return run_report(report_records, report_format, report_top, report_out_dir);
        }
    } catch (const wavebench::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
