// Content-addressed on-disk cache for expansions.  Keys are hashes of the
// (series id, parameters, bound) description; entries carry a checksum so a
// corrupt file is detected, recomputed, and overwritten rather than trusted.
// Writes go through a temporary file and an atomic rename.
#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

namespace unitaria {

inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// 32-hex-character content key.
inline std::string cache_key(const std::string& description) {
    std::uint64_t a = fnv1a64(description);
    std::uint64_t b = fnv1a64(description, 0x9e3779b97f4a7c15ull);
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << a << std::setw(16) << std::setfill('0') << b;
    return os.str();
}

struct CacheResult {
    std::optional<std::string> payload;
    bool corrupt = false;  // an entry existed but failed its checksum
};

inline std::filesystem::path cache_path(const std::string& dir, const std::string& key) {
    return std::filesystem::path(dir) / (key + ".entry");
}

inline CacheResult cache_get(const std::string& dir, const std::string& key) {
    std::ifstream in(cache_path(dir, key), std::ios::binary);
    if (!in) return {};
    std::string header;
    std::getline(in, header);
    std::stringstream rest;
    rest << in.rdbuf();
    std::string payload = rest.str();
    std::ostringstream expect;
    expect << "unitaria-cache v1 " << std::hex << fnv1a64(payload);
    if (header != expect.str()) return {std::nullopt, true};
    return {payload, false};
}

inline void cache_put(const std::string& dir, const std::string& key, const std::string& payload) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path final_path = cache_path(dir, key);
    fs::path tmp = final_path;
    tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << "unitaria-cache v1 " << std::hex << fnv1a64(payload) << "\n" << payload;
        if (!out) throw std::runtime_error("cache_put: write failed");
    }
    fs::rename(tmp, final_path);
}

}  // namespace unitaria
