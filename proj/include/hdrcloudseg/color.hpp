#pragma once

#include <string>
#include <vector>

#include "hdrcloudseg/types.hpp"

namespace hdrcloudseg {

/// One of the 16 analyzed color components:
///   c1-c3  R, G, B          c4-c6  H, S, V         c7-c9  Y, I, Q
///   c10-c12 L*, a*, b*      c13 R/B   c14 R-B   c15 (B-R)/(B+R)   c16 chroma
class ChannelId {
public:
    explicit ChannelId(int index);
    static ChannelId parse(const std::string& text); // accepts "c15" or "15"

    int index() const { return index_; }
    std::string name() const;        // "c15"
    std::string description() const; // "(B-R)/(B+R)"

    bool operator==(const ChannelId&) const = default;

private:
    int index_;
};

inline const ChannelId kRatioChannel = ChannelId(15); // the default pipeline channel

/// Single-plane scalar image extracted from an RGB source.
class ChannelMap {
public:
    ChannelMap(int width, int height, std::vector<double> values, ChannelId channel,
               bool normalized = false, std::size_t division_guards = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    const std::vector<double>& values() const { return values_; }
    ChannelId channel() const { return channel_; }
    bool normalized() const { return normalized_; }
    /// Number of pixels where a division guard (B = 0 or B + R = 0) fired.
    std::size_t division_guards() const { return division_guards_; }

private:
    int width_;
    int height_;
    std::vector<double> values_;
    ChannelId channel_;
    bool normalized_;
    std::size_t division_guards_;
};

/// 8-bit sources are scaled to [0, 1] first; radiance sources are used as-is.
ChannelMap extract_channel(const LdrImage& source, ChannelId channel);
ChannelMap extract_channel(const RadianceMap& source, ChannelId channel);

/// Affine min-max rescale to [0, 1]; constant maps become all 0.5.
ChannelMap normalize_channel(const ChannelMap& map);

/// PFM plane plus a JSON sidecar {channel, normalized}.
void save_channel_map(const ChannelMap& map, const std::string& pfm_path);
ChannelMap load_channel_map(const std::string& pfm_path);

} // namespace hdrcloudseg
