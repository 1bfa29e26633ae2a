#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hoflow/image.hpp"

namespace hoflow {

/// Decoded raster before grayscale conversion: interleaved samples in the
/// container's native range. channels is 1 (gray) or 3 (rgb); bit_depth 8 or 16.
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  int bit_depth = 8;
  int max_value = 255;
  std::vector<std::uint16_t> samples;

  std::size_t sample_count() const {
    return static_cast<std::size_t>(width) * height * channels;
  }
};

/// Decode png (8/16-bit, gray or rgb) or pgm (P2/P5) bytes. No other formats.
RawImage decode_image(std::span<const std::uint8_t> bytes);

/// Decode to a normalized grayscale plane. Multi-channel input is reduced by
/// the luma combination 0.299 R + 0.587 G + 0.114 B before normalization.
GrayImage decode_gray(std::span<const std::uint8_t> bytes);

/// Binary pgm (P5). Samples are round(clamp(v,0,1) * max_value);
/// max_value > 255 emits 16-bit big-endian samples per the netpbm convention.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img, int max_value = 255);

/// Encode gray or rgb, 8- or 16-bit png.
std::vector<std::uint8_t> encode_png(const RawImage& img);

/// Grayscale png at the given bit depth (8 or 16).
std::vector<std::uint8_t> encode_gray_png(const GrayImage& img, int bit_depth = 8);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// read_file + decode_gray.
GrayImage load_gray(const std::filesystem::path& path);

}  // namespace hoflow
