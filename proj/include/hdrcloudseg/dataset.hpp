#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hdrcloudseg/types.hpp"

namespace hdrcloudseg {

/// One manifest row. Paths are already resolved against the manifest directory.
struct SampleEntry {
    std::string id;
    std::string low;
    std::string mid;
    std::string high;
    std::optional<std::string> ground_truth;
    std::optional<std::string> tonemapped;
    std::array<double, 3> exposure_times{}; // seconds, ordered low / mid / high
    std::array<int, 3> ev_offsets{0, 0, 0};
};

struct Manifest {
    std::string root;
    std::vector<SampleEntry> samples; // sorted by id
    const SampleEntry& find(const std::string& id) const;
};

/// Reads a dataset manifest. `path` may be the JSON file itself or a directory
/// containing `manifest.json`. Exposure times come either from the explicit
/// `exposure_times` array or from `ev_offsets` plus the root-level `base_time`
/// (exposure_time = base_time * 2^ev).
Manifest load_manifest(const std::string& path);

ExposureStack load_stack(const SampleEntry& entry);
ExposureStack load_stack(const Manifest& manifest, const std::string& id);

BinaryMask load_ground_truth(const SampleEntry& entry);

} // namespace hdrcloudseg
