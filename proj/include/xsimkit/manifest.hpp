#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace xsimkit {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Reproducibility metadata embedded in every output JSON. Timestamps are
// excluded from the determinism contract; set SOURCE_DATE_EPOCH to pin them.
struct RunManifest {
    std::vector<std::string> argv;
    std::string version{kToolVersion};
    std::uint64_t seed = 0;
    std::string config_digest;
    std::map<std::string, std::string> input_digests;  // path as given -> digest
    std::string created;                               // ISO 8601 UTC
};

RunManifest make_manifest(std::vector<std::string> argv, std::uint64_t seed,
                          const std::string& config_text,
                          const std::vector<std::filesystem::path>& inputs);

nlohmann::json to_json(const RunManifest& manifest);

// FNV-1a 64-bit, hex encoded. Provenance fingerprints, not security.
std::string digest_bytes(std::string_view bytes);
std::string digest_file(const std::filesystem::path& path);

std::string timestamp_utc();

}  // namespace xsimkit
