#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hdrcloudseg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File system / codec failures.
class IoError : public Error {
public:
    using Error::Error;
};

/// Inputs whose sizes do not agree (or exceed bounds).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Values outside their documented domain (mask levels, non-finite costs, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Inputs that carry no usable signal (constant images, singular systems).
class DegenerateError : public Error {
public:
    using Error::Error;
};

struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb8&) const = default;
};

struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
};

/// 8-bit RGB image with its exposure metadata. Pixels are row-major.
class LdrImage {
public:
    LdrImage(int width, int height, std::vector<Rgb8> pixels,
             double exposure_time, int ev_offset = 0);

    /// Uniform image, mostly useful for tests and synthetic inputs.
    static LdrImage filled(int width, int height, Rgb8 value,
                           double exposure_time, int ev_offset = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    double exposure_time() const { return exposure_time_; }
    int ev_offset() const { return ev_offset_; }
    std::size_t pixel_count() const { return pixels_.size(); }

    const Rgb8& at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    Rgb8& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    const std::vector<Rgb8>& pixels() const { return pixels_; }
    std::vector<Rgb8>& pixels() { return pixels_; }

private:
    int width_;
    int height_;
    std::vector<Rgb8> pixels_;
    double exposure_time_;
    int ev_offset_;
};

/// Three co-registered LDR exposures of one capture, ordered by exposure time.
class ExposureStack {
public:
    ExposureStack(LdrImage low, LdrImage mid, LdrImage high, std::string id);

    const LdrImage& low() const { return low_; }
    const LdrImage& mid() const { return mid_; }
    const LdrImage& high() const { return high_; }
    const std::string& id() const { return id_; }
    int width() const { return low_.width(); }
    int height() const { return low_.height(); }

private:
    LdrImage low_;
    LdrImage mid_;
    LdrImage high_;
    std::string id_;
};

/// Per-pixel binary labels, 1 = cloud, 0 = sky.
class BinaryMask {
public:
    BinaryMask(int width, int height, std::vector<std::uint8_t> labels);
    static BinaryMask filled(int width, int height, std::uint8_t label);

    int width() const { return width_; }
    int height() const { return height_; }
    std::uint8_t at(int x, int y) const { return labels_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int x, int y, std::uint8_t label);
    const std::vector<std::uint8_t>& labels() const { return labels_; }
    std::size_t cloud_count() const;

    bool operator==(const BinaryMask&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> labels_;
};

/// Per-pixel saturation flags.
class SaturationMask {
public:
    SaturationMask(int width, int height, std::vector<std::uint8_t> flags);
    static SaturationMask clear(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    bool at(int x, int y) const { return flags_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int x, int y, bool flagged);
    const std::vector<std::uint8_t>& flags() const { return flags_; }
    std::size_t count() const;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> flags_;
};

/// Linear relative-radiance map recovered from an exposure stack.
class RadianceMap {
public:
    RadianceMap(int width, int height, std::vector<Rgb> values);

    int width() const { return width_; }
    int height() const { return height_; }
    const Rgb& at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    Rgb& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    const std::vector<Rgb>& values() const { return values_; }

private:
    int width_;
    int height_;
    std::vector<Rgb> values_;
};

/// Pixel is saturated when every channel exceeds 250.
bool is_saturated(Rgb8 p);

SaturationMask saturation_mask_ldr(const LdrImage& img);

/// HDR saturation: saturated in the low, mid and high member alike.
SaturationMask saturation_mask_hdr(const ExposureStack& stack);

/// side x side crop whose top-left corner is (center - side/2).
LdrImage crop_centered(const LdrImage& img, int center_x, int center_y, int side);

} // namespace hdrcloudseg
