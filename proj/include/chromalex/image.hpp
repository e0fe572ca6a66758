#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chromalex::imaging {

enum class PixelSpace { kSrgb, kJzazbz };

/// Dense height x width x 3 pixel grid. sRGB images carry integral channel
/// values in [0,255]; JzAzBz images carry real coordinates. Storage is
/// single-precision; all colorspace math happens in double at the transform
/// boundary.
class ImageArray {
 public:
  ImageArray() = default;
  ImageArray(int width, int height, PixelSpace space)
      : width_(width),
        height_(height),
        space_(space),
        data_(static_cast<std::size_t>(width) * height * 3, 0.0f) {}

  int width() const { return width_; }
  int height() const { return height_; }
  PixelSpace space() const { return space_; }

  float& at(int y, int x, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }
  float at(int y, int x, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  std::span<float> pixels() { return data_; }
  std::span<const float> pixels() const { return data_; }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  PixelSpace space_ = PixelSpace::kSrgb;
  std::vector<float> data_;
};

}  // namespace chromalex::imaging
