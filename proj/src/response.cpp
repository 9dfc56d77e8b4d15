#include "hdrcloudseg/response.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "hdrcloudseg/image_io.hpp"

namespace hdrcloudseg {

double hat_weight(int z) {
    if (z < 0 || z > 255)
        throw ValidationError("hat_weight: pixel value out of [0, 255]");
    return z <= 127 ? static_cast<double>(z) : static_cast<double>(255 - z);
}

ResponseCurve::ResponseCurve(Channel red, Channel green, Channel blue, double lambda)
    : g_{red, green, blue}, lambda_(lambda) {
    for (int c = 0; c < 3; ++c) {
        const Channel& ch = g_[c];
        for (int z = 0; z + 1 < 256; ++z)
            if (ch[z + 1] < ch[z] - 1e-12)
                throw ValidationError("ResponseCurve: g must be non-decreasing");
        if (std::abs(ch[128]) > 1e-9)
            throw ValidationError("ResponseCurve: g(128) must be 0");
    }
}

ResponseCurve ResponseCurve::linear() {
    Channel ch;
    for (int z = 0; z < 256; ++z)
        ch[z] = std::log(std::max(z, 1) / 128.0);
    ch[128] = 0.0;
    return ResponseCurve(ch, ch, ch, 0.0);
}

int ResponseCurve::invert(int channel, double log_exposure) const {
    const Channel& ch = g_[channel];
    if (log_exposure <= ch[0])
        return 0;
    int z = 0;
    for (int i = 1; i < 256; ++i)
        if (ch[i] <= log_exposure)
            z = i;
    return z;
}

namespace {

// Deterministic sampling positions: a near-square grid covering the image.
std::vector<std::pair<int, int>> sample_grid(int width, int height, int count) {
    const double aspect = static_cast<double>(height) / width;
    int gy = std::max(1, static_cast<int>(std::lround(std::sqrt(count * aspect))));
    int gx = (count + gy - 1) / gy;
    std::vector<std::pair<int, int>> pts;
    pts.reserve(static_cast<std::size_t>(gx) * gy);
    for (int j = 0; j < gy && static_cast<int>(pts.size()) < count; ++j)
        for (int i = 0; i < gx && static_cast<int>(pts.size()) < count; ++i) {
            int x = static_cast<int>((i + 0.5) * width / gx);
            int y = static_cast<int>((j + 0.5) * height / gy);
            pts.emplace_back(std::min(x, width - 1), std::min(y, height - 1));
        }
    return pts;
}

// Pool-adjacent-violators projection onto non-decreasing sequences.
void isotonic_repair(ResponseCurve::Channel& g) {
    constexpr int n = 256;
    std::array<double, n> value;
    std::array<double, n> weight;
    std::array<int, n> size;
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        value[blocks] = g[i];
        weight[blocks] = 1.0;
        size[blocks] = 1;
        ++blocks;
        while (blocks > 1 && value[blocks - 2] > value[blocks - 1]) {
            const double w = weight[blocks - 2] + weight[blocks - 1];
            value[blocks - 2] =
                (value[blocks - 2] * weight[blocks - 2] + value[blocks - 1] * weight[blocks - 1]) / w;
            weight[blocks - 2] = w;
            size[blocks - 2] += size[blocks - 1];
            --blocks;
        }
    }
    int idx = 0;
    for (int b = 0; b < blocks; ++b)
        for (int k = 0; k < size[b]; ++k)
            g[idx++] = value[b];
}

int channel_value(const Rgb8& p, int c) {
    return c == 0 ? p.r : (c == 1 ? p.g : p.b);
}

} // namespace

ResponseCurve recover_response(const ExposureStack& stack, int sample_count, double lambda) {
    if (sample_count < 64)
        throw ConfigError("recover_response: sample_count must be >= 64");
    if (!(lambda > 0.0))
        throw ConfigError("recover_response: lambda must be > 0");

    const auto pts = sample_grid(stack.width(), stack.height(), sample_count);
    const int n = static_cast<int>(pts.size());
    const std::array<const LdrImage*, 3> members{&stack.low(), &stack.mid(), &stack.high()};
    const std::array<double, 3> log_dt{std::log(stack.low().exposure_time()),
                                       std::log(stack.mid().exposure_time()),
                                       std::log(stack.high().exposure_time())};

    std::array<ResponseCurve::Channel, 3> channels;
    for (int c = 0; c < 3; ++c) {
        std::set<int> distinct;
        for (int j = 0; j < 3; ++j)
            for (const auto& [x, y] : pts)
                distinct.insert(channel_value(members[j]->at(x, y), c));
        if (distinct.size() < 2)
            throw DegenerateError("recover_response: no pixel-value variation in channel " +
                                  std::to_string(c));

        // Unknowns: g(0..255) then one log radiance per sampled location.
        const int cols = 256 + n;
        int data_rows = 0;
        for (int j = 0; j < 3; ++j)
            for (const auto& [x, y] : pts)
                if (hat_weight(channel_value(members[j]->at(x, y), c)) > 0.0)
                    ++data_rows;
        const int rows = data_rows + 254 + 1;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);

        int r = 0;
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < n; ++i) {
                const int z = channel_value(members[j]->at(pts[i].first, pts[i].second), c);
                const double w = hat_weight(z);
                if (w <= 0.0)
                    continue;
                A(r, z) = w;
                A(r, 256 + i) = -w;
                b(r) = w * log_dt[j];
                ++r;
            }
        }
        for (int z = 1; z <= 254; ++z) {
            const double w = lambda * hat_weight(z);
            A(r, z - 1) = w;
            A(r, z) = -2.0 * w;
            A(r, z + 1) = w;
            ++r;
        }
        A(r, 128) = 1.0; // anchor g(128) = 0
        ++r;

        Eigen::VectorXd x = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
        if (!x.head(256).allFinite())
            throw DegenerateError("recover_response: singular system in channel " +
                                  std::to_string(c));
        ResponseCurve::Channel g;
        for (int z = 0; z < 256; ++z)
            g[z] = x(z);
        isotonic_repair(g);
        const double shift = g[128];
        for (double& v : g)
            v -= shift;
        channels[c] = g;
    }
    return ResponseCurve(channels[0], channels[1], channels[2], lambda);
}

FuseResult fuse_detailed(const ExposureStack& stack, const ResponseCurve& response) {
    const int w = stack.width();
    const int h = stack.height();
    const std::array<const LdrImage*, 3> members{&stack.low(), &stack.mid(), &stack.high()};
    const std::array<double, 3> log_dt{std::log(stack.low().exposure_time()),
                                       std::log(stack.mid().exposure_time()),
                                       std::log(stack.high().exposure_time())};

    std::vector<Rgb> values(static_cast<std::size_t>(w) * h);
    SaturationMask fallback = SaturationMask::clear(w, h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double out[3];
            bool fell_back = false;
            for (int c = 0; c < 3; ++c) {
                double num = 0.0, den = 0.0;
                for (int j = 0; j < 3; ++j) {
                    const int z = channel_value(members[j]->at(x, y), c);
                    const double wt = hat_weight(z);
                    num += wt * (response.g(c, z) - log_dt[j]);
                    den += wt;
                }
                double log_e;
                if (den > 0.0) {
                    log_e = num / den;
                } else {
                    log_e = response.g(c, channel_value(members[1]->at(x, y), c)) - log_dt[1];
                    fell_back = true;
                }
                out[c] = std::exp(log_e);
            }
            values[static_cast<std::size_t>(y) * w + x] = Rgb{out[0], out[1], out[2]};
            if (fell_back)
                fallback.set(x, y, true);
        }
    }
    return FuseResult{RadianceMap(w, h, std::move(values)), std::move(fallback)};
}

RadianceMap fuse(const ExposureStack& stack, const ResponseCurve& response) {
    return fuse_detailed(stack, response).map;
}

ExposureStack make_stack_sorted(LdrImage a, LdrImage b, LdrImage c, std::string id) {
    std::vector<LdrImage> imgs;
    imgs.push_back(std::move(a));
    imgs.push_back(std::move(b));
    imgs.push_back(std::move(c));
    std::sort(imgs.begin(), imgs.end(), [](const LdrImage& l, const LdrImage& r) {
        return l.exposure_time() < r.exposure_time();
    });
    return ExposureStack(std::move(imgs[0]), std::move(imgs[1]), std::move(imgs[2]),
                         std::move(id));
}

void save_response_csv(const ResponseCurve& curve, const std::string& path) {
    std::ostringstream out;
    out << "z,g_R,g_G,g_B\n";
    char buf[96];
    for (int z = 0; z < 256; ++z) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", z, curve.g(0, z),
                      curve.g(1, z), curve.g(2, z));
        out << buf;
    }
    write_file_atomic(path, out.str());
}

ResponseCurve load_response_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open response curve '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw IoError("response curve '" + path + "' is empty");
    std::array<ResponseCurve::Channel, 3> g{};
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        int z;
        double r, gg, b;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &z, &r, &gg, &b) != 4 || z < 0 || z > 255)
            throw IoError("response curve '" + path + "': malformed row '" + line + "'");
        g[0][z] = r;
        g[1][z] = gg;
        g[2][z] = b;
        ++rows;
    }
    if (rows != 256)
        throw IoError("response curve '" + path + "' must hold exactly 256 rows");
    return ResponseCurve(g[0], g[1], g[2], 0.0);
}

} // namespace hdrcloudseg
