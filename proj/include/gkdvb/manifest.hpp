#pragma once

// Run manifest: every output file listed with its SHA-256 so reruns with
// identical inputs can be verified checksum-for-checksum.

#include <cstdint>
#include <string>
#include <vector>

namespace gkdvb {

struct RunManifest {
    std::string command;
    std::string config_path;  // empty when only a preset was used
    std::string preset;
    std::string output_dir;
    std::uint64_t seed = 0;
    std::string started;   // ISO 8601 UTC
    std::string finished;

    struct Artifact {
        std::string path;  // relative to output_dir
        std::string sha256;
    };
    std::vector<Artifact> artifacts;

    void add_artifact(const std::string& relative_path);
    void write(const std::string& path) const;
};

std::string iso8601_now();

} // namespace gkdvb
