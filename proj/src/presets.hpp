#ifndef FREQBIN_SRC_PRESETS_HPP
#define FREQBIN_SRC_PRESETS_HPP

#include <map>
#include <string>
#include <vector>

namespace freqbin::presets {

struct Line {
    std::string section, key, value;
};

struct RunPreset {
    std::string description;
    std::vector<Line> lines;
};

// Whole-run presets: one per reproduced measurement.
const std::map<std::string, RunPreset>& run_presets();

// Section-level hardware presets, expanded by `preset = <name>` inside
// [detector], [remote_detector] or [dispersion].
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& detector_presets();
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& dispersion_presets();

}  // namespace freqbin::presets

#endif
