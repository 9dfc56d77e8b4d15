#include "hdrcloudseg/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace hdrcloudseg {

namespace {

std::string tmp_name(const std::string& path) {
    return path + ".tmp";
}

void rename_into_place(const std::string& tmp, const std::string& path) {
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("failed to move '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

// imwrite-then-rename so that partially written files never land on the final path.
void imwrite_atomic(const std::string& path, const cv::Mat& m) {
    const std::string ext = fs::path(path).extension().string();
    std::vector<unsigned char> buf;
    if (!cv::imencode(ext.empty() ? ".png" : ext, m, buf))
        throw IoError("failed to encode image for '" + path + "'");
    std::ofstream out(tmp_name(path), std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + tmp_name(path) + "' for writing");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    out.close();
    if (!out)
        throw IoError("short write to '" + tmp_name(path) + "'");
    rename_into_place(tmp_name(path), path);
}

} // namespace

LdrImage load_ldr(const std::string& path, double exposure_time, int ev_offset) {
    if (!fs::exists(path))
        throw IoError("no such file: '" + path + "'");
    cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (m.empty())
        throw IoError("cannot decode '" + path + "'");
    if (m.type() != CV_8UC3)
        throw ValidationError("'" + path + "' is not an 8-bit RGB raster");
    std::vector<Rgb8> px(static_cast<std::size_t>(m.rows) * m.cols);
    for (int y = 0; y < m.rows; ++y) {
        const cv::Vec3b* row = m.ptr<cv::Vec3b>(y);
        for (int x = 0; x < m.cols; ++x) {
            const cv::Vec3b& bgr = row[x];
            px[static_cast<std::size_t>(y) * m.cols + x] = Rgb8{bgr[2], bgr[1], bgr[0]};
        }
    }
    return LdrImage(m.cols, m.rows, std::move(px), exposure_time, ev_offset);
}

void save_png(const LdrImage& img, const std::string& path) {
    cv::Mat m(img.height(), img.width(), CV_8UC3);
    for (int y = 0; y < img.height(); ++y) {
        cv::Vec3b* row = m.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width(); ++x) {
            const Rgb8& p = img.at(x, y);
            row[x] = cv::Vec3b(p.b, p.g, p.r);
        }
    }
    imwrite_atomic(path, m);
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    cv::Mat m(mask.height(), mask.width(), CV_8UC1);
    for (int y = 0; y < mask.height(); ++y) {
        unsigned char* row = m.ptr<unsigned char>(y);
        for (int x = 0; x < mask.width(); ++x)
            row[x] = mask.at(x, y) ? 255 : 0;
    }
    imwrite_atomic(path, m);
}

BinaryMask load_mask(const std::string& path) {
    if (!fs::exists(path))
        throw IoError("no such file: '" + path + "'");
    cv::Mat m = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (m.empty())
        throw IoError("cannot decode '" + path + "'");
    if (m.type() != CV_8UC1)
        throw ValidationError("mask '" + path + "' is not a single-channel 8-bit raster");
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(m.rows) * m.cols);
    for (int y = 0; y < m.rows; ++y) {
        const unsigned char* row = m.ptr<unsigned char>(y);
        for (int x = 0; x < m.cols; ++x) {
            const unsigned char v = row[x];
            if (v != 0 && v != 255)
                throw ValidationError("mask '" + path + "' contains value " +
                                      std::to_string(int(v)) + ", expected only {0, 255}");
            labels[static_cast<std::size_t>(y) * m.cols + x] = (v == 255) ? 1 : 0;
        }
    }
    return BinaryMask(m.cols, m.rows, std::move(labels));
}

namespace {

struct PfmHeader {
    bool color = false;
    int width = 0;
    int height = 0;
    double scale = -1.0;
};

PfmHeader read_pfm_header(std::istream& in, const std::string& path) {
    PfmHeader h;
    std::string magic;
    in >> magic;
    if (magic == "PF")
        h.color = true;
    else if (magic == "Pf")
        h.color = false;
    else
        throw IoError("'" + path + "' is not a PFM file");
    in >> h.width >> h.height >> h.scale;
    if (!in || h.width <= 0 || h.height <= 0 || h.scale == 0.0)
        throw IoError("'" + path + "': malformed PFM header");
    in.get(); // single whitespace byte before the raster
    return h;
}

std::vector<float> read_pfm_raster(std::istream& in, const PfmHeader& h, const std::string& path) {
    const std::size_t per_row = static_cast<std::size_t>(h.width) * (h.color ? 3 : 1);
    std::vector<float> data(per_row * h.height);
    // PFM stores scanlines bottom-to-top.
    for (int y = h.height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(data.data() + per_row * y),
                static_cast<std::streamsize>(per_row * sizeof(float)));
        if (!in)
            throw IoError("'" + path + "': truncated PFM raster");
    }
    if (h.scale > 0.0) { // big-endian file on a little-endian host
        for (float& f : data) {
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            u = __builtin_bswap32(u);
            std::memcpy(&f, &u, 4);
        }
    }
    return data;
}

void write_pfm_raster(std::ostream& out, const std::vector<float>& data,
                      int width, int height, int channels, bool color) {
    std::ostringstream header;
    header << (color ? "PF" : "Pf") << "\n" << width << " " << height << "\n-1.0\n";
    const std::string hs = header.str();
    out.write(hs.data(), static_cast<std::streamsize>(hs.size()));
    const std::size_t per_row = static_cast<std::size_t>(width) * channels;
    for (int y = height - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(data.data() + per_row * y),
                  static_cast<std::streamsize>(per_row * sizeof(float)));
}

} // namespace

void save_pfm(const RadianceMap& map, const std::string& path) {
    std::vector<float> data(static_cast<std::size_t>(map.width()) * map.height() * 3);
    const auto& vals = map.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        data[3 * i + 0] = static_cast<float>(vals[i].r);
        data[3 * i + 1] = static_cast<float>(vals[i].g);
        data[3 * i + 2] = static_cast<float>(vals[i].b);
    }
    std::ofstream out(tmp_name(path), std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + tmp_name(path) + "' for writing");
    write_pfm_raster(out, data, map.width(), map.height(), 3, true);
    out.close();
    if (!out)
        throw IoError("short write to '" + tmp_name(path) + "'");
    rename_into_place(tmp_name(path), path);
}

RadianceMap load_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    PfmHeader h = read_pfm_header(in, path);
    if (!h.color)
        throw IoError("'" + path + "' is a single-plane PFM, expected 3-channel");
    std::vector<float> data = read_pfm_raster(in, h, path);
    std::vector<Rgb> vals(static_cast<std::size_t>(h.width) * h.height);
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = Rgb{data[3 * i + 0], data[3 * i + 1], data[3 * i + 2]};
    return RadianceMap(h.width, h.height, std::move(vals));
}

void save_pfm_plane(const std::vector<double>& values, int width, int height,
                    const std::string& path) {
    if (values.size() != static_cast<std::size_t>(width) * height)
        throw DimensionError("save_pfm_plane: value count does not match dimensions");
    std::vector<float> data(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        data[i] = static_cast<float>(values[i]);
    std::ofstream out(tmp_name(path), std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + tmp_name(path) + "' for writing");
    write_pfm_raster(out, data, width, height, 1, false);
    out.close();
    if (!out)
        throw IoError("short write to '" + tmp_name(path) + "'");
    rename_into_place(tmp_name(path), path);
}

std::vector<double> load_pfm_plane(const std::string& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    PfmHeader h = read_pfm_header(in, path);
    if (h.color)
        throw IoError("'" + path + "' is a 3-channel PFM, expected single-plane");
    std::vector<float> data = read_pfm_raster(in, h, path);
    width = h.width;
    height = h.height;
    return std::vector<double>(data.begin(), data.end());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::ofstream out(tmp_name(path), std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + tmp_name(path) + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out)
        throw IoError("short write to '" + tmp_name(path) + "'");
    rename_into_place(tmp_name(path), path);
}

} // namespace hdrcloudseg
