#include "hdrcloudseg/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hdrcloudseg/image_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hdrcloudseg {

const SampleEntry& Manifest::find(const std::string& id) const {
    auto it = std::find_if(samples.begin(), samples.end(),
                           [&](const SampleEntry& s) { return s.id == id; });
    if (it == samples.end())
        throw ValidationError("manifest has no sample with id '" + id + "'");
    return *it;
}

namespace {

std::string resolve(const fs::path& root, const std::string& p) {
    fs::path fp(p);
    return fp.is_absolute() ? fp.string() : (root / fp).string();
}

} // namespace

Manifest load_manifest(const std::string& path) {
    fs::path manifest_path(path);
    if (fs::is_directory(manifest_path))
        manifest_path /= "manifest.json";
    std::ifstream in(manifest_path);
    if (!in)
        throw IoError("cannot open manifest '" + manifest_path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError("cannot parse manifest '" + manifest_path.string() + "': " + e.what());
    }

    const fs::path root = manifest_path.parent_path();
    Manifest m;
    m.root = root.string();

    if (!doc.contains("samples") || !doc["samples"].is_array())
        throw ValidationError("manifest '" + manifest_path.string() + "' lacks a samples array");

    const double base_time = doc.value("base_time", 0.0);

    for (const json& s : doc["samples"]) {
        SampleEntry e;
        e.id = s.at("id").get<std::string>();
        e.low = resolve(root, s.at("low").get<std::string>());
        e.mid = resolve(root, s.at("mid").get<std::string>());
        e.high = resolve(root, s.at("high").get<std::string>());
        if (s.contains("ground_truth") && !s["ground_truth"].is_null())
            e.ground_truth = resolve(root, s["ground_truth"].get<std::string>());
        if (s.contains("tonemapped") && !s["tonemapped"].is_null())
            e.tonemapped = resolve(root, s["tonemapped"].get<std::string>());

        if (s.contains("exposure_times")) {
            const auto& t = s["exposure_times"];
            if (!t.is_array() || t.size() != 3)
                throw ValidationError("sample '" + e.id + "': exposure_times must hold 3 values");
            for (int i = 0; i < 3; ++i)
                e.exposure_times[i] = t[i].get<double>();
        } else if (s.contains("ev_offsets")) {
            const auto& ev = s["ev_offsets"];
            if (!ev.is_array() || ev.size() != 3)
                throw ValidationError("sample '" + e.id + "': ev_offsets must hold 3 values");
            if (!(base_time > 0.0))
                throw ValidationError("sample '" + e.id +
                                      "' uses ev_offsets but the manifest has no base_time");
            for (int i = 0; i < 3; ++i) {
                e.ev_offsets[i] = ev[i].get<int>();
                e.exposure_times[i] = base_time * std::pow(2.0, e.ev_offsets[i]);
            }
        } else {
            throw ValidationError("sample '" + e.id +
                                  "' needs either exposure_times or ev_offsets");
        }
        m.samples.push_back(std::move(e));
    }

    std::sort(m.samples.begin(), m.samples.end(),
              [](const SampleEntry& a, const SampleEntry& b) { return a.id < b.id; });
    return m;
}

ExposureStack load_stack(const SampleEntry& entry) {
    LdrImage low = load_ldr(entry.low, entry.exposure_times[0], entry.ev_offsets[0]);
    LdrImage mid = load_ldr(entry.mid, entry.exposure_times[1], entry.ev_offsets[1]);
    LdrImage high = load_ldr(entry.high, entry.exposure_times[2], entry.ev_offsets[2]);
    return ExposureStack(std::move(low), std::move(mid), std::move(high), entry.id);
}

ExposureStack load_stack(const Manifest& manifest, const std::string& id) {
    return load_stack(manifest.find(id));
}

BinaryMask load_ground_truth(const SampleEntry& entry) {
    if (!entry.ground_truth)
        throw IoError("sample '" + entry.id + "' has no ground-truth mask");
    return load_mask(*entry.ground_truth);
}

} // namespace hdrcloudseg
