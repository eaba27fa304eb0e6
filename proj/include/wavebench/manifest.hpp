#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavebench/errors.hpp"

namespace wavebench {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// FNV-1a 64-bit over a canonical config string; identical config + inputs
/// always hash identically.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Reproducibility record emitted with every CLI run: version, config hash,
/// input list with sizes, seeds, and a timestamp.
struct RunManifest {
    std::string toolkit_version = kToolkitVersion;
    std::string command;
    std::uint64_t config_hash = 0;
    std::vector<std::pair<std::string, std::uint64_t>> inputs; // path, bytes
    std::vector<std::uint64_t> seeds;
    std::string timestamp;

    static std::string now_iso8601() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&t, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
        return buf;
    }

    void add_input(const std::string& path) {
        std::error_code ec;
        const auto size = std::filesystem::file_size(path, ec);
        inputs.emplace_back(path, ec ? 0 : static_cast<std::uint64_t>(size));
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["toolkit_version"] = toolkit_version;
        j["command"] = command;
        j["config_hash"] = config_hash;
        j["timestamp"] = timestamp;
        nlohmann::json files = nlohmann::json::array();
        for (const auto& [path, bytes] : inputs) {
            files.push_back({{"path", path}, {"bytes", bytes}});
        }
        j["inputs"] = files;
        j["seeds"] = seeds;
        return j;
    }
};

} // namespace wavebench
