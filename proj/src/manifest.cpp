#include "embens/manifest.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "embens/errors.hpp"
#include "embens/version.hpp"

namespace embens {

std::string fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string() + " for digesting");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const FileDigest& f : m.inputs)
        inputs.push_back({{"path", f.path}, {"digest_fnv1a64", f.digest}});
    return {
        {"tool", "embens"},
        {"version", kVersion},
        {"command", m.command},
        {"config", m.config},
        {"inputs", inputs},
        {"outputs", m.outputs},
        {"timestamp_utc", m.timestamp_utc},
        {"duration_ms", m.duration_ms},
    };
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << to_json(m).dump(2) << '\n';
    out.flush();
    if (!out) throw io_error("write failure on " + path.string());
}

} // namespace embens
