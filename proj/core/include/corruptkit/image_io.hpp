#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "corruptkit/image.hpp"

namespace corruptkit {

enum class ImageFormat { kPng, kJpeg };

/// Sniffs the magic bytes. Throws InvalidInput for anything else.
ImageFormat detect_format(std::span<const std::uint8_t> bytes);

/// Decodes PNG or JPEG into 8-bit RGB. Gray, palette, alpha and 16-bit PNGs
/// are converted; alpha is dropped.
ImageBuffer decode_image(std::span<const std::uint8_t> bytes);

/// Deterministic PNG encoding (fixed zlib level, no ancillary chunks), so
/// identical pixels always produce identical bytes.
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);
std::vector<std::uint8_t> encode_jpeg(const ImageBuffer& img, int quality = 95);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

ImageBuffer load_image(const std::filesystem::path& path);
/// Format chosen from the extension (.jpg/.jpeg → JPEG, otherwise PNG).
void save_image(const std::filesystem::path& path, const ImageBuffer& img);

}  // namespace corruptkit
