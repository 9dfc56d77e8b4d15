#include "hdrcloudseg/color.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hdrcloudseg/image_io.hpp"

using nlohmann::json;

namespace hdrcloudseg {

ChannelId::ChannelId(int index) : index_(index) {
    if (index < 1 || index > 16)
        throw ConfigError("ChannelId: index must lie in [1, 16]");
}

ChannelId ChannelId::parse(const std::string& text) {
    std::string t = text;
    if (!t.empty() && (t[0] == 'c' || t[0] == 'C'))
        t = t.substr(1);
    try {
        return ChannelId(std::stoi(t));
    } catch (const std::exception&) {
        throw ConfigError("ChannelId: cannot parse '" + text + "'");
    }
}

std::string ChannelId::name() const {
    return "c" + std::to_string(index_);
}

std::string ChannelId::description() const {
    static const char* names[16] = {"R",  "G",  "B",  "H",   "S",   "V",
                                    "Y",  "I",  "Q",  "L*",  "a*",  "b*",
                                    "R/B", "R-B", "(B-R)/(B+R)", "chroma"};
    return names[index_ - 1];
}

ChannelMap::ChannelMap(int width, int height, std::vector<double> values, ChannelId channel,
                       bool normalized, std::size_t division_guards)
    : width_(width), height_(height), values_(std::move(values)), channel_(channel),
      normalized_(normalized), division_guards_(division_guards) {
    if (width_ <= 0 || height_ <= 0 ||
        values_.size() != static_cast<std::size_t>(width_) * height_)
        throw DimensionError("ChannelMap: value count does not match width x height");
    for (double v : values_)
        if (!std::isfinite(v))
            throw ValidationError("ChannelMap: values must be finite");
}

namespace {

struct LabWhite {
    static constexpr double xn = 0.95047;
    static constexpr double yn = 1.0;
    static constexpr double zn = 1.08883;
};

double lab_f(double t) {
    constexpr double d = 6.0 / 29.0;
    return t > d * d * d ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
}

// Per-pixel component value. `lab_scale` pre-divides XYZ so that relative
// radiance gets a usable white point (1.0 for display-referred sources).
double component(double r, double g, double b, int index, double lab_scale,
                 std::size_t& guards) {
    switch (index) {
    case 1: return r;
    case 2: return g;
    case 3: return b;
    case 4: { // hue, hexcone model, [0, 1); 0 when achromatic
        const double mx = std::max({r, g, b});
        const double mn = std::min({r, g, b});
        const double delta = mx - mn;
        if (delta <= 0.0)
            return 0.0;
        double h;
        if (mx == r)
            h = (g - b) / delta;
        else if (mx == g)
            h = (b - r) / delta + 2.0;
        else
            h = (r - g) / delta + 4.0;
        h /= 6.0;
        if (h < 0.0)
            h += 1.0;
        return h;
    }
    case 5: { // saturation = 1 - min/max
        const double mx = std::max({r, g, b});
        if (mx <= 0.0)
            return 0.0;
        return 1.0 - std::min({r, g, b}) / mx;
    }
    case 6: return std::max({r, g, b});
    case 7: return 0.299 * r + 0.587 * g + 0.114 * b;
    case 8: return 0.596 * r - 0.274 * g - 0.322 * b;
    case 9: return 0.211 * r - 0.523 * g + 0.312 * b;
    case 10:
    case 11:
    case 12: {
        const double x = (0.4124564 * r + 0.3575761 * g + 0.1804375 * b) * lab_scale;
        const double y = (0.2126729 * r + 0.7151522 * g + 0.0721750 * b) * lab_scale;
        const double z = (0.0193339 * r + 0.1191920 * g + 0.9503041 * b) * lab_scale;
        const double fx = lab_f(x / LabWhite::xn);
        const double fy = lab_f(y / LabWhite::yn);
        const double fz = lab_f(z / LabWhite::zn);
        if (index == 10)
            return 116.0 * fy - 16.0;
        if (index == 11)
            return 500.0 * (fx - fy);
        return 200.0 * (fy - fz);
    }
    case 13:
        if (b <= 0.0) {
            ++guards;
            return 0.0;
        }
        return r / b;
    case 14: return r - b;
    case 15: {
        const double den = b + r;
        if (den <= 0.0) {
            ++guards;
            return 0.0;
        }
        return (b - r) / den;
    }
    case 16: return std::max({r, g, b}) - std::min({r, g, b});
    default: throw ConfigError("extract_channel: bad channel index");
    }
}

double luminance709(double r, double g, double b) {
    return 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
}

} // namespace

ChannelMap extract_channel(const LdrImage& source, ChannelId channel) {
    std::vector<double> out(source.pixel_count());
    std::size_t guards = 0;
    const auto& px = source.pixels();
    for (std::size_t i = 0; i < px.size(); ++i)
        out[i] = component(px[i].r / 255.0, px[i].g / 255.0, px[i].b / 255.0,
                           channel.index(), 1.0, guards);
    return ChannelMap(source.width(), source.height(), std::move(out), channel, false, guards);
}

ChannelMap extract_channel(const RadianceMap& source, ChannelId channel) {
    double lab_scale = 1.0;
    if (channel.index() >= 10 && channel.index() <= 12) {
        // Radiance is relative; anchor the white point at the brightest pixel.
        double max_lum = 0.0;
        for (const Rgb& v : source.values())
            max_lum = std::max(max_lum, luminance709(v.r, v.g, v.b));
        if (max_lum > 0.0)
            lab_scale = 1.0 / max_lum;
    }
    std::vector<double> out(source.values().size());
    std::size_t guards = 0;
    const auto& vals = source.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
        out[i] = component(vals[i].r, vals[i].g, vals[i].b, channel.index(), lab_scale, guards);
    return ChannelMap(source.width(), source.height(), std::move(out), channel, false, guards);
}

ChannelMap normalize_channel(const ChannelMap& map) {
    const auto [mn_it, mx_it] = std::minmax_element(map.values().begin(), map.values().end());
    const double mn = *mn_it, mx = *mx_it;
    std::vector<double> out(map.values().size());
    if (mx - mn <= 0.0) {
        std::fill(out.begin(), out.end(), 0.5);
    } else {
        const double scale = 1.0 / (mx - mn);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (map.values()[i] - mn) * scale;
    }
    return ChannelMap(map.width(), map.height(), std::move(out), map.channel(), true,
                      map.division_guards());
}

void save_channel_map(const ChannelMap& map, const std::string& pfm_path) {
    save_pfm_plane(map.values(), map.width(), map.height(), pfm_path);
    json sidecar{{"channel", map.channel().name()}, {"normalized", map.normalized()}};
    write_file_atomic(pfm_path + ".json", sidecar.dump(2) + "\n");
}

ChannelMap load_channel_map(const std::string& pfm_path) {
    int w = 0, h = 0;
    std::vector<double> values = load_pfm_plane(pfm_path, w, h);
    std::ifstream in(pfm_path + ".json");
    if (!in)
        throw IoError("cannot open channel sidecar '" + pfm_path + ".json'");
    json sidecar;
    in >> sidecar;
    return ChannelMap(w, h, std::move(values), ChannelId::parse(sidecar.at("channel")),
                      sidecar.value("normalized", false));
}

} // namespace hdrcloudseg
