#include "corruptkit/image.hpp"

#include <string>

#include "corruptkit/error.hpp"

namespace corruptkit {

ImageBuffer::ImageBuffer(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidInput("negative image dimensions");
  data_.assign(pixel_count() * kChannels, 0);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0) throw InvalidInput("negative image dimensions");
  if (data_.size() != pixel_count() * kChannels) {
    throw InvalidInput("image data has " + std::to_string(data_.size()) + " bytes, expected " +
                       std::to_string(pixel_count() * kChannels));
  }
}

FloatImage to_float(const ImageBuffer& img, float scale) {
  FloatImage out(img.width(), img.height(), ImageBuffer::kChannels);
  auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) out.data[i] = static_cast<float>(src[i]) * scale;
  return out;
}

ImageBuffer to_u8(const FloatImage& src, float scale) {
  if (src.channels != ImageBuffer::kChannels) throw InvalidInput("to_u8 needs a 3-channel image");
  ImageBuffer out(src.width, src.height);
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = clamp_round_u8(static_cast<double>(src.data[i]) * scale);
  }
  return out;
}

double mean_intensity(const ImageBuffer& img) {
  if (img.empty()) throw InvalidInput("empty image");
  std::uint64_t sum = 0;
  for (auto v : img.data()) sum += v;
  return static_cast<double>(sum) / static_cast<double>(img.data().size());
}

}  // namespace corruptkit
