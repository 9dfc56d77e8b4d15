#include "hdrcloudseg/types.hpp"

#include <algorithm>
#include <cmath>

namespace hdrcloudseg {

namespace {

void check_plane(int width, int height, std::size_t count, const char* what) {
    if (width <= 0 || height <= 0)
        throw DimensionError(std::string(what) + ": non-positive dimensions");
    if (count != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw DimensionError(std::string(what) + ": element count does not match width x height");
}

} // namespace

LdrImage::LdrImage(int width, int height, std::vector<Rgb8> pixels,
                   double exposure_time, int ev_offset)
    : width_(width), height_(height), pixels_(std::move(pixels)),
      exposure_time_(exposure_time), ev_offset_(ev_offset) {
    check_plane(width_, height_, pixels_.size(), "LdrImage");
    if (!(exposure_time_ > 0.0))
        throw ValidationError("LdrImage: exposure_time must be > 0");
}

LdrImage LdrImage::filled(int width, int height, Rgb8 value,
                          double exposure_time, int ev_offset) {
    std::vector<Rgb8> px(static_cast<std::size_t>(width) * height, value);
    return LdrImage(width, height, std::move(px), exposure_time, ev_offset);
}

ExposureStack::ExposureStack(LdrImage low, LdrImage mid, LdrImage high, std::string id)
    : low_(std::move(low)), mid_(std::move(mid)), high_(std::move(high)), id_(std::move(id)) {
    if (low_.width() != mid_.width() || low_.height() != mid_.height() ||
        low_.width() != high_.width() || low_.height() != high_.height())
        throw DimensionError("ExposureStack '" + id_ + "': members differ in size");
    if (!(low_.exposure_time() < mid_.exposure_time() &&
          mid_.exposure_time() < high_.exposure_time()))
        throw ValidationError("ExposureStack '" + id_ +
                              "': exposure times must strictly increase low -> high");
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    check_plane(width_, height_, labels_.size(), "BinaryMask");
    for (auto v : labels_)
        if (v > 1)
            throw ValidationError("BinaryMask: labels must be 0 or 1");
}

BinaryMask BinaryMask::filled(int width, int height, std::uint8_t label) {
    return BinaryMask(width, height,
                      std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, label));
}

void BinaryMask::set(int x, int y, std::uint8_t label) {
    if (label > 1)
        throw ValidationError("BinaryMask: labels must be 0 or 1");
    labels_[static_cast<std::size_t>(y) * width_ + x] = label;
}

std::size_t BinaryMask::cloud_count() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

SaturationMask::SaturationMask(int width, int height, std::vector<std::uint8_t> flags)
    : width_(width), height_(height), flags_(std::move(flags)) {
    check_plane(width_, height_, flags_.size(), "SaturationMask");
}

SaturationMask SaturationMask::clear(int width, int height) {
    return SaturationMask(width, height,
                          std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0));
}

void SaturationMask::set(int x, int y, bool flagged) {
    flags_[static_cast<std::size_t>(y) * width_ + x] = flagged ? 1 : 0;
}

std::size_t SaturationMask::count() const {
    std::size_t n = 0;
    for (auto f : flags_)
        n += (f != 0);
    return n;
}

RadianceMap::RadianceMap(int width, int height, std::vector<Rgb> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_plane(width_, height_, values_.size(), "RadianceMap");
    for (const Rgb& v : values_)
        if (!std::isfinite(v.r) || !std::isfinite(v.g) || !std::isfinite(v.b) ||
            v.r < 0.0 || v.g < 0.0 || v.b < 0.0)
            throw ValidationError("RadianceMap: values must be finite and non-negative");
}

bool is_saturated(Rgb8 p) {
    return p.r > 250 && p.g > 250 && p.b > 250;
}

SaturationMask saturation_mask_ldr(const LdrImage& img) {
    std::vector<std::uint8_t> flags(img.pixel_count());
    const auto& px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i)
        flags[i] = is_saturated(px[i]) ? 1 : 0;
    return SaturationMask(img.width(), img.height(), std::move(flags));
}

SaturationMask saturation_mask_hdr(const ExposureStack& stack) {
    std::vector<std::uint8_t> flags(stack.low().pixel_count());
    const auto& lo = stack.low().pixels();
    const auto& mi = stack.mid().pixels();
    const auto& hi = stack.high().pixels();
    for (std::size_t i = 0; i < flags.size(); ++i)
        flags[i] = (is_saturated(lo[i]) && is_saturated(mi[i]) && is_saturated(hi[i])) ? 1 : 0;
    return SaturationMask(stack.width(), stack.height(), std::move(flags));
}

LdrImage crop_centered(const LdrImage& img, int center_x, int center_y, int side) {
    if (side <= 0)
        throw DimensionError("crop_centered: side must be positive");
    const int x0 = center_x - side / 2;
    const int y0 = center_y - side / 2;
    if (x0 < 0 || y0 < 0 || x0 + side > img.width() || y0 + side > img.height())
        throw DimensionError("crop_centered: window exceeds image bounds");
    std::vector<Rgb8> out(static_cast<std::size_t>(side) * side);
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            out[static_cast<std::size_t>(y) * side + x] = img.at(x0 + x, y0 + y);
    return LdrImage(side, side, std::move(out), img.exposure_time(), img.ev_offset());
}

} // namespace hdrcloudseg
