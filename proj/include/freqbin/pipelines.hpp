#ifndef FREQBIN_PIPELINES_HPP
#define FREQBIN_PIPELINES_HPP

#include <string>

#include "json.hpp"

#include "freqbin/config.hpp"

namespace freqbin {

// Everything a run leaves behind, also written to <out_dir>/manifest.json.
// Deliberately timestamp-free: identical config + seed => identical manifest.
struct Manifest {
    std::string pipeline;
    std::string preset;
    std::uint64_t seed = 0;
    std::string config_hash;               // FNV-1a of the canonical config
    std::vector<std::string> outputs;      // files written, relative to out_dir
    nlohmann::json metrics;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

// Runs the configured pipeline, writes its artifacts under cfg.out_dir and
// returns the manifest. Throws ConfigError / Error on failure.
Manifest run_pipeline(const RunConfig& cfg);

}  // namespace freqbin

#endif
