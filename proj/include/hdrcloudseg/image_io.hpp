#pragma once

#include <string>
#include <vector>

#include "hdrcloudseg/types.hpp"

namespace hdrcloudseg {

/// Decodes an 8-bit RGB PNG/JPEG and attaches the exposure metadata.
LdrImage load_ldr(const std::string& path, double exposure_time, int ev_offset = 0);

/// Writes an LdrImage as RGB PNG (atomic: temp file + rename).
void save_png(const LdrImage& img, const std::string& path);

/// Binary masks round-trip as single-channel PNG with values {0, 255}.
void save_mask(const BinaryMask& mask, const std::string& path);
BinaryMask load_mask(const std::string& path);

/// Portable float map, little-endian (scale header -1.0), rows bottom-to-top.
void save_pfm(const RadianceMap& map, const std::string& path);
RadianceMap load_pfm(const std::string& path);

/// Single-plane PFM ("Pf") used for channel maps and other scalar planes.
void save_pfm_plane(const std::vector<double>& values, int width, int height,
                    const std::string& path);
std::vector<double> load_pfm_plane(const std::string& path, int& width, int& height);

/// Writes `contents` to `path` via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace hdrcloudseg
