#pragma once

#include <array>
#include <string>

#include "hdrcloudseg/types.hpp"

namespace hdrcloudseg {

/// Triangle weighting over pixel values: full confidence mid-range, zero at the
/// clipped ends. w(z) = z for z <= 127, 255 - z above.
double hat_weight(int z);

/// Camera response per channel: g maps pixel value z to log exposure, anchored
/// at g(128) = 0 and non-decreasing.
class ResponseCurve {
public:
    using Channel = std::array<double, 256>;

    ResponseCurve(Channel red, Channel green, Channel blue, double lambda);

    /// g(z) = ln(z / 128): the response of an ideal linear sensor.
    static ResponseCurve linear();

    double g(int channel, int z) const { return g_[channel][z]; }
    const Channel& channel(int c) const { return g_[c]; }
    double lambda() const { return lambda_; }

    /// Largest z with g(z) <= log_exposure (monotone inverse, clamped to [0, 255]).
    int invert(int channel, double log_exposure) const;

private:
    std::array<Channel, 3> g_;
    double lambda_;
};

/// Recovers the response from a stack by regularized least squares over a
/// deterministic spatial grid of `sample_count` pixel locations.
ResponseCurve recover_response(const ExposureStack& stack, int sample_count = 100,
                               double lambda = 50.0);

struct FuseResult {
    RadianceMap map;
    /// Pixels whose three exposures all carried zero weight; these fall back to
    /// the mid-exposure estimate.
    SaturationMask fallback;
};

/// Weighted log-exposure average over the three exposures, exponentiated.
FuseResult fuse_detailed(const ExposureStack& stack, const ResponseCurve& response);
RadianceMap fuse(const ExposureStack& stack, const ResponseCurve& response);

/// Builds a stack from three images in any argument order; they are sorted by
/// exposure time.
ExposureStack make_stack_sorted(LdrImage a, LdrImage b, LdrImage c, std::string id);

/// CSV persistence, columns z,g_R,g_G,g_B.
void save_response_csv(const ResponseCurve& curve, const std::string& path);
ResponseCurve load_response_csv(const std::string& path);

} // namespace hdrcloudseg
