#include "xsimkit/manifest.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "xsimkit/errors.hpp"

namespace xsimkit {

std::string digest_bytes(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest_bytes(ss.str());
}

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest make_manifest(std::vector<std::string> argv, std::uint64_t seed,
                          const std::string& config_text,
                          const std::vector<std::filesystem::path>& inputs) {
    RunManifest manifest;
    manifest.argv = std::move(argv);
    manifest.seed = seed;
    manifest.config_digest = digest_bytes(config_text);
    for (const auto& path : inputs) manifest.input_digests[path.string()] = digest_file(path);
    manifest.created = timestamp_utc();
    return manifest;
}

nlohmann::json to_json(const RunManifest& manifest) {
    return nlohmann::json{{"argv", manifest.argv},
                          {"version", manifest.version},
                          {"seed", manifest.seed},
                          {"config_digest", manifest.config_digest},
                          {"inputs", manifest.input_digests},
                          {"created", manifest.created}};
}

}  // namespace xsimkit
