#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "chromalex/colorspace.hpp"
#include "chromalex/image.hpp"

namespace chromalex::imaging {

/// Canonical working resolution for the embedding pipeline.
inline constexpr int kCanonicalSize = 300;

/// Decode PNG or JPEG bytes into an sRGB ImageArray at original dimensions.
/// Alpha is composited over white; grayscale is expanded to three channels.
/// Throws DecodeError on unsupported or corrupt input.
ImageArray load_image(std::span<const unsigned char> bytes);
ImageArray load_image_file(const std::filesystem::path& path);

/// Encode an sRGB image as PNG.
std::vector<unsigned char> encode_png(const ImageArray& img);
void save_png(const ImageArray& img, const std::filesystem::path& path);

/// Resample an sRGB image to out_width x out_height. Axes that shrink use
/// area averaging (every source pixel contributes with its coverage weight);
/// axes that grow use linear interpolation. A no-op at target size.
ImageArray resize_antialiased(const ImageArray& img,
                              int out_width = kCanonicalSize,
                              int out_height = kCanonicalSize);

/// Convert a whole sRGB image to JzAzBz coordinates.
ImageArray to_jzazbz(const ImageArray& srgb);

/// Convert a JzAzBz image back to displayable sRGB, clamping out-of-gamut
/// pixels and counting them in stats when given.
ImageArray to_srgb(const ImageArray& jzazbz,
                   colorspace::ClampStats* stats = nullptr);

/// Composite "average image": per-pixel arithmetic mean in JzAzBz across
/// sources, rendered back to sRGB.
struct Colorgram {
  ImageArray image;  // kCanonicalSize^2, sRGB
  int source_count = 0;
};

/// All inputs must be sRGB at kCanonicalSize x kCanonicalSize.
/// Throws EmptyInput on an empty list.
Colorgram compose_colorgram(std::span<const ImageArray> images);

}  // namespace chromalex::imaging
