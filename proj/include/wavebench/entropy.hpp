#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wavebench/histogram.hpp"
#include "wavebench/parallel.hpp"

namespace wavebench {

/// Shannon entropy in bits of the code distribution described by h.
///
/// H = -sum p_i log2 p_i over codes with nonzero counts, computed as
/// log2(total) - sum(c_i log2 c_i) / total, which avoids one division per
/// bin and accumulates less error. Zero-count codes contribute exactly 0.
inline double entropy(const Histogram& h) {
    if (h.total == 0) {
        throw UndefinedEntropyError("entropy of an empty histogram is undefined");
    }
    double acc = 0.0;
    for (std::uint64_t c : h.counts) {
        if (c != 0) {
            acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
        }
    }
    return std::log2(static_cast<double>(h.total)) - acc / static_cast<double>(h.total);
}

/// Per-channel summary of value-range utilization and information content.
/// Percentages are stored at full precision; rounding is the presentation
/// layer's job.
struct ChannelReport {
    std::string channel_name;
    std::uint64_t unique_values = 0;
    double usage_pct = 0.0;
    double range_pct = 0.0;
    std::int64_t min_observed = 0;
    std::int64_t max_observed = 0;
    double entropy_bits = 0.0;
    std::uint64_t total_samples = 0;

    /// Channels spanning less than this share of the ADC range are flagged
    /// as under-calibrated in reports.
    static constexpr double kUnderCalibratedRangePct = 20.0;

    bool under_calibrated() const { return range_pct < kUnderCalibratedRangePct; }
};

inline ChannelReport channel_report(const std::string& name, const Histogram& h) {
    if (h.total == 0) {
        throw UndefinedEntropyError("cannot report on an empty histogram for channel '" + name + "'");
    }
    ChannelReport r;
    r.channel_name = name;
    r.total_samples = h.total;
    bool seen = false;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] == 0) continue;
        ++r.unique_values;
        const std::int64_t code = h.code_at(i);
        if (!seen) {
            r.min_observed = code;
            seen = true;
        }
        r.max_observed = code;
    }
    const double codes = static_cast<double>(code_count(h.bit_depth));
    r.usage_pct = static_cast<double>(r.unique_values) / codes * 100.0;
    r.range_pct = static_cast<double>(r.max_observed - r.min_observed + 1) / codes * 100.0;
    r.entropy_bits = entropy(h);
    return r;
}

/// Merge-reduces per-file histograms over a corpus and reports per channel.
///
/// `loader` maps a path to a Dataset; all files must share channel schema
/// and bit depth. Files are processed in parallel but merged in file-list
/// order; since merging is exact integer addition the result is
/// bit-identical for any parallelism degree.
inline std::vector<ChannelReport> analyze_corpus(
    const std::vector<std::string>& files,
    const std::function<Dataset(const std::string&)>& loader,
    unsigned parallelism = 1) {
    if (files.empty()) {
        throw CorpusError("corpus is empty");
    }

    struct FileHists {
        std::vector<std::string> names;
        int bit_depth = 0;
        std::vector<Histogram> hists;
    };

    std::vector<FileHists> per_file(files.size());
    parallel_for(files.size(), parallelism, [&](std::size_t i) {
        const Dataset d = loader(files[i]);
        FileHists fh;
        fh.bit_depth = d.bit_depth;
        for (const auto& ch : d.channels) {
            fh.names.push_back(ch.name);
            fh.hists.push_back(histogram(ch, d.bit_depth));
        }
        per_file[i] = std::move(fh);
    });

    const FileHists& first = per_file.front();
    for (std::size_t i = 1; i < per_file.size(); ++i) {
        if (per_file[i].names != first.names || per_file[i].bit_depth != first.bit_depth) {
            throw CorpusError("file '" + files[i] + "' does not match the corpus channel schema");
        }
    }

    std::vector<ChannelReport> reports;
    reports.reserve(first.names.size());
    for (std::size_t c = 0; c < first.names.size(); ++c) {
        Histogram acc = std::move(per_file.front().hists[c]);
        for (std::size_t i = 1; i < per_file.size(); ++i) {
            merge_into(acc, per_file[i].hists[c]);
        }
        reports.push_back(channel_report(first.names[c], acc));
    }
    return reports;
}

/// Round half up to the nearest integer (presentation of usage/range).
inline long long round_half_up(double v) {
    return static_cast<long long>(std::floor(v + 0.5));
}

/// CSV report, one row per channel: dataset, channel, values, usage_pct,
/// range_pct, entropy_bits. Percentages at full precision.
inline void write_report_csv(std::ostream& os, const std::string& dataset_id,
                             const std::vector<ChannelReport>& reports) {
    os << "dataset,channel,values,usage_pct,range_pct,entropy_bits\n";
    for (const auto& r : reports) {
        os << dataset_id << ',' << r.channel_name << ',' << r.unique_values << ','
           << std::setprecision(17) << r.usage_pct << ',' << r.range_pct << ','
           << r.entropy_bits << '\n';
    }
}

/// Human-readable table: usage/range rounded half-up to integer percent,
/// entropy to one decimal.
inline std::string format_report_table(const std::string& dataset_id,
                                       const std::vector<ChannelReport>& reports) {
    std::ostringstream os;
    os << "dataset: " << dataset_id << '\n';
    os << std::left << std::setw(16) << "channel" << std::right << std::setw(12) << "values"
       << std::setw(8) << "usage" << std::setw(8) << "range" << std::setw(8) << "H(x)" << '\n';
    for (const auto& r : reports) {
        os << std::left << std::setw(16) << r.channel_name << std::right << std::setw(12)
           << r.unique_values << std::setw(7) << round_half_up(r.usage_pct) << '%' << std::setw(7)
           << round_half_up(r.range_pct) << '%' << std::setw(8) << std::fixed
           << std::setprecision(1) << r.entropy_bits;
        os.unsetf(std::ios::fixed);
        os << std::setprecision(6);
        if (r.under_calibrated()) {
            os << "  [under-calibrated: range below "
               << static_cast<int>(ChannelReport::kUnderCalibratedRangePct) << "% of ADC span]";
        }
        os << '\n';
    }
    return os.str();
}

/// gnuplot-compatible dump of nonzero bins: "<code> <count>" per line.
inline void write_histogram_dump(std::ostream& os, const Histogram& h) {
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        if (h.counts[i] != 0) {
            os << h.code_at(i) << ' ' << h.counts[i] << '\n';
        }
    }
}

} // namespace wavebench
