#ifndef EMBENS_MANIFEST_HPP
#define EMBENS_MANIFEST_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace embens {

struct FileDigest {
    std::string path;
    std::string digest; // fnv1a-64 over the file bytes, hex
};

// Provenance record written next to a command's outputs: what ran, with
// which configuration, over which input bytes, producing which files.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::vector<FileDigest> inputs;
    std::vector<std::string> outputs;
    std::string timestamp_utc;
    double duration_ms = 0.0;
};

nlohmann::json to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& path);

std::string fnv1a64_file(const std::filesystem::path& path);
std::string utc_timestamp_now();

} // namespace embens

#endif
