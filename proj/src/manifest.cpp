#include "gkdvb/manifest.hpp"

#include "gkdvb/sha256.hpp"

#include <json.hpp>

#include <ctime>
#include <fstream>

namespace gkdvb {

std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void RunManifest::add_artifact(const std::string& relative_path) {
    Artifact a;
    a.path = relative_path;
    a.sha256 = sha256_file(output_dir + "/" + relative_path);
    artifacts.push_back(std::move(a));
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["preset"] = preset;
    j["output_dir"] = output_dir;
    j["seed"] = seed;
    j["started"] = started;
    j["finished"] = finished;
    j["artifacts"] = nlohmann::json::array();
    for (const auto& a : artifacts)
        j["artifacts"].push_back({{"path", a.path}, {"sha256", a.sha256}});
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

} // namespace gkdvb
