#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavebench/dataset.hpp"
#include "wavebench/errors.hpp"
#include "wavebench/histogram.hpp"

namespace wavebench {

struct Harmonic {
    int order = 3;          // multiple of the mains frequency
    double amplitude = 0.0; // relative to the fundamental
    double phase = 0.0;     // radians
};

struct LevelStep {
    double start_s = 0.0;
    double scale = 1.0; // current-amplitude multiplier in (0, 1]
};

enum class ChannelKind { voltage, current };

struct SynthChannel {
    std::string name;
    ChannelKind kind = ChannelKind::voltage;
};

/// Deterministic synthetic waveform model: a quantized mains sinusoid per
/// voltage channel; current channels add harmonics and stepped amplitude
/// levels. Gaussian noise (in ADC steps) models measurement noise. The seed
/// fully determines the output.
struct SynthSpec {
    std::uint32_t sampling_rate = 50000;
    double duration_s = 1.0;
    int bit_depth = 16;
    double mains_freq = 50.0;
    double amplitude_utilization = 0.85; // recommended calibration: 80-90% of full scale
    std::vector<Harmonic> harmonics;
    double noise_lsb = 0.0;
    std::vector<LevelStep> level_schedule;
    std::uint64_t seed = 0;

    double harmonic_amplitude_sum() const {
        double s = 0.0;
        for (const auto& h : harmonics) s += std::abs(h.amplitude);
        return s;
    }

    /// Headroom check: the worst-case signal plus 6 sigma of clamped noise
    /// must stay inside full scale, so clipping is impossible by
    /// construction.
    void validate() const {
        if (!valid_bit_depth(bit_depth)) throw SpecError("bit depth must be 16 or 24");
        if (sampling_rate == 0) throw SpecError("sampling rate must be positive");
        if (duration_s < 0.0) throw SpecError("duration must be non-negative");
        if (!(mains_freq > 0.0)) throw SpecError("mains frequency must be positive");
        if (!(amplitude_utilization > 0.0) || amplitude_utilization > 1.0) {
            throw SpecError("amplitude utilization must be in (0, 1]");
        }
        if (noise_lsb < 0.0) throw SpecError("noise level must be non-negative");
        for (const auto& step : level_schedule) {
            if (!(step.scale > 0.0) || step.scale > 1.0) {
                throw SpecError("level schedule scales must be in (0, 1]");
            }
            if (step.start_s < 0.0) throw SpecError("level schedule times must be non-negative");
        }
        const double full = static_cast<double>(code_max(bit_depth)) + 1.0;
        const double peak = amplitude_utilization * (1.0 + harmonic_amplitude_sum()) +
                            6.0 * noise_lsb / full;
        if (peak > 1.0) {
            throw SpecError("spec would clip: utilization*(1+sum|harmonics|)+6*noise/2^(b-1) = " +
                            std::to_string(peak) + " > 1");
        }
    }
};

namespace synth_detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Pinned Gaussian source: mt19937_64 uniforms through an explicit
/// Box-Muller transform (std::normal_distribution is implementation-defined
/// and would break cross-platform reproducibility). Draws are clamped to
/// +-6 sigma so the SynthSpec headroom bound holds deterministically.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next(double sigma) {
        if (sigma == 0.0) return 0.0;
        const double u1 = 1.0 - std::ldexp(static_cast<double>(rng_() >> 11), -53); // (0, 1]
        const double u2 = std::ldexp(static_cast<double>(rng_() >> 11), -53);       // [0, 1)
        double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * std::numbers::pi * u2);
        if (z > 6.0) z = 6.0;
        if (z < -6.0) z = -6.0;
        return z * sigma;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace synth_detail

/// Generates a deterministic multi-channel dataset from the spec. With no
/// channel list, one voltage and one current channel are produced.
inline Dataset generate(const SynthSpec& spec, std::vector<SynthChannel> channels = {}) {
    spec.validate();
    if (channels.empty()) {
        channels = {{"voltage", ChannelKind::voltage}, {"current", ChannelKind::current}};
    }

    // sort the level schedule by start time; scale 1.0 before the first step
    std::vector<LevelStep> schedule = spec.level_schedule;
    std::sort(schedule.begin(), schedule.end(),
              [](const LevelStep& a, const LevelStep& b) { return a.start_s < b.start_s; });

    const std::size_t frames =
        static_cast<std::size_t>(std::llround(spec.duration_s * spec.sampling_rate));
    const double amplitude =
        spec.amplitude_utilization * static_cast<double>(code_max(spec.bit_depth));
    const double cycles_per_sample = spec.mains_freq / static_cast<double>(spec.sampling_rate);
    const std::int64_t lo = code_min(spec.bit_depth);
    const std::int64_t hi = code_max(spec.bit_depth);

    Dataset d;
    d.bit_depth = spec.bit_depth;
    d.sampling_rate = spec.sampling_rate;
    d.source_id = "synth:" + std::to_string(spec.seed);

    for (std::size_t c = 0; c < channels.size(); ++c) {
        synth_detail::GaussianSource noise(
            synth_detail::splitmix64(spec.seed ^ (0xC0FFEEull + c)));
        ChannelBuffer ch;
        ch.name = channels[c].name;
        ch.samples.resize(frames);

        const bool is_current = channels[c].kind == ChannelKind::current;
        std::size_t step_idx = 0;
        double level = 1.0;
        for (std::size_t i = 0; i < frames; ++i) {
            const double t = static_cast<double>(i) / spec.sampling_rate;
            if (is_current) {
                while (step_idx < schedule.size() && t >= schedule[step_idx].start_s) {
                    level = schedule[step_idx].scale;
                    ++step_idx;
                }
            }
            const double cycle = std::fmod(static_cast<double>(i) * cycles_per_sample, 1.0);
            const double angle = 2.0 * std::numbers::pi * cycle;
            double s = std::sin(angle);
            if (is_current) {
                for (const auto& h : spec.harmonics) {
                    s += h.amplitude * std::sin(angle * h.order + h.phase);
                }
                s *= level;
            }
            const double value = amplitude * s + noise.next(spec.noise_lsb);
            const auto code = std::llround(value);
            if (code < lo || code > hi) {
                // unreachable given validate(), kept as a hard guarantee
                throw SpecError("generated sample clipped; spec headroom check failed");
            }
            ch.samples[i] = static_cast<std::int32_t>(code);
        }
        d.channels.push_back(std::move(ch));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Shape diagnostic
// ---------------------------------------------------------------------------

enum class ShapeVerdict { sinusoidal, not_sinusoidal, degenerate };

inline std::string to_string(ShapeVerdict v) {
    switch (v) {
        case ShapeVerdict::sinusoidal: return "sinusoidal";
        case ShapeVerdict::not_sinusoidal: return "not sinusoidal";
        case ShapeVerdict::degenerate: return "degenerate";
    }
    return "?";
}

struct ShapeDiagnostic {
    std::string channel;
    ShapeVerdict verdict = ShapeVerdict::degenerate;
    double extreme_to_center_ratio = 0.0;
};

/// Checks for the arcsine-distribution signature of a quantized sinusoid:
/// bin counts near the observed extremes exceed counts near the middle of
/// the observed span. Pure sines give ratios well above 1, uniform noise
/// sits near 1, constant signals are degenerate.
inline std::vector<ShapeDiagnostic> histogram_shape_check(const Dataset& d) {
    std::vector<ShapeDiagnostic> out;
    for (const auto& ch : d.channels) {
        ShapeDiagnostic diag;
        diag.channel = ch.name;
        const Histogram h = histogram(ch, d.bit_depth);
        std::int64_t min_code = 0;
        std::int64_t max_code = 0;
        std::uint64_t unique = 0;
        bool seen = false;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            if (h.counts[i] == 0) continue;
            ++unique;
            if (!seen) {
                min_code = h.code_at(i);
                seen = true;
            }
            max_code = h.code_at(i);
        }
        const std::int64_t span = seen ? max_code - min_code + 1 : 0;
        if (!seen || unique < 3 || span < 16) {
            diag.verdict = ShapeVerdict::degenerate;
            out.push_back(diag);
            continue;
        }
        const std::int64_t band = std::max<std::int64_t>(1, span * 5 / 100);
        const std::int64_t center = min_code + span / 2;
        const std::int64_t half_center = std::max<std::int64_t>(1, span * 5 / 100);

        auto mean_count = [&](std::int64_t from, std::int64_t to) {
            double sum = 0.0;
            std::int64_t n = 0;
            for (std::int64_t code = from; code <= to; ++code) {
                sum += static_cast<double>(h.count_of(code));
                ++n;
            }
            return n == 0 ? 0.0 : sum / static_cast<double>(n);
        };
        const double edges = 0.5 * (mean_count(min_code, min_code + band - 1) +
                                    mean_count(max_code - band + 1, max_code));
        const double middle = mean_count(center - half_center, center + half_center);
        diag.extreme_to_center_ratio =
            middle == 0.0 ? std::numeric_limits<double>::infinity() : edges / middle;
        diag.verdict = diag.extreme_to_center_ratio > 1.5 ? ShapeVerdict::sinusoidal
                                                          : ShapeVerdict::not_sinusoidal;
        out.push_back(diag);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

struct SynthConfig {
    SynthSpec spec;
    std::vector<SynthChannel> channels;
};

inline SynthConfig parse_synth_config(const nlohmann::json& j) {
    SynthConfig cfg;
    try {
        auto& s = cfg.spec;
        s.sampling_rate = j.value("sampling_rate", s.sampling_rate);
        s.duration_s = j.value("duration_s", s.duration_s);
        s.bit_depth = j.value("bit_depth", s.bit_depth);
        s.mains_freq = j.value("mains_freq", s.mains_freq);
        s.amplitude_utilization = j.value("amplitude_utilization", s.amplitude_utilization);
        s.noise_lsb = j.value("noise_lsb", s.noise_lsb);
        s.seed = j.value("seed", s.seed);
        if (j.contains("harmonics")) {
            for (const auto& h : j["harmonics"]) {
                s.harmonics.push_back({h.value("order", 3), h.value("amplitude", 0.0),
                                       h.value("phase", 0.0)});
            }
        }
        if (j.contains("level_schedule")) {
            for (const auto& step : j["level_schedule"]) {
                s.level_schedule.push_back({step.value("start_s", 0.0), step.value("scale", 1.0)});
            }
        }
        if (j.contains("channels")) {
            for (const auto& ch : j["channels"]) {
                SynthChannel sc;
                sc.name = ch.value("name", std::string("ch") + std::to_string(cfg.channels.size()));
                const std::string kind = ch.value("kind", "voltage");
                if (kind == "voltage") {
                    sc.kind = ChannelKind::voltage;
                } else if (kind == "current") {
                    sc.kind = ChannelKind::current;
                } else {
                    throw SpecError("unknown channel kind '" + kind + "'");
                }
                cfg.channels.push_back(sc);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("synth config: ") + e.what());
    }
    cfg.spec.validate();
    return cfg;
}

inline SynthConfig read_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open synth config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("synth config '" + path + "': " + e.what());
    }
    return parse_synth_config(j);
}

} // namespace wavebench
