#include "chromalex/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "chromalex/colorspace.hpp"
#include "chromalex/errors.hpp"

namespace chromalex::imaging {
namespace {

struct Tap {
  int index;
  double weight;
};

// Per-output-pixel source taps for one axis. Shrinking uses box coverage
// (area averaging); growing uses linear interpolation between the two
// nearest source centers. Weights are normalized to sum to 1.
std::vector<std::vector<Tap>> make_taps(int in_size, int out_size) {
  std::vector<std::vector<Tap>> taps(out_size);
  const double scale = static_cast<double>(in_size) / out_size;

  if (out_size <= in_size) {
    for (int o = 0; o < out_size; ++o) {
      const double lo = o * scale;
      const double hi = (o + 1) * scale;
      const int first = static_cast<int>(std::floor(lo));
      const int last = std::min(static_cast<int>(std::ceil(hi)) - 1, in_size - 1);
      double total = 0.0;
      for (int i = first; i <= last; ++i) {
        const double cover = std::min<double>(hi, i + 1) - std::max<double>(lo, i);
        if (cover <= 0.0) continue;
        taps[o].push_back({i, cover});
        total += cover;
      }
      for (Tap& t : taps[o]) t.weight /= total;
    }
  } else {
    for (int o = 0; o < out_size; ++o) {
      const double center = (o + 0.5) * scale - 0.5;
      const int i0 = static_cast<int>(std::floor(center));
      const double frac = center - i0;
      const int a = std::clamp(i0, 0, in_size - 1);
      const int b = std::clamp(i0 + 1, 0, in_size - 1);
      if (a == b) {
        taps[o].push_back({a, 1.0});
      } else {
        taps[o].push_back({a, 1.0 - frac});
        taps[o].push_back({b, frac});
      }
    }
  }
  return taps;
}

}  // namespace

ImageArray resize_antialiased(const ImageArray& img, int out_width, int out_height) {
  if (img.space() != PixelSpace::kSrgb) {
    throw Error("resize_antialiased expects an sRGB image");
  }
  if (img.width() < 1 || img.height() < 1) {
    throw Error("resize_antialiased: empty image");
  }
  if (img.width() == out_width && img.height() == out_height) {
    return img;
  }

  const auto xtaps = make_taps(img.width(), out_width);
  const auto ytaps = make_taps(img.height(), out_height);

  // horizontal pass, double buffer to keep means exact
  std::vector<double> mid(static_cast<std::size_t>(img.height()) * out_width * 3, 0.0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < out_width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (const Tap& t : xtaps[x]) {
        for (int c = 0; c < 3; ++c) acc[c] += t.weight * img.at(y, t.index, c);
      }
      double* dst = &mid[(static_cast<std::size_t>(y) * out_width + x) * 3];
      dst[0] = acc[0];
      dst[1] = acc[1];
      dst[2] = acc[2];
    }
  }

  ImageArray out(out_width, out_height, PixelSpace::kSrgb);
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (const Tap& t : ytaps[y]) {
        const double* src = &mid[(static_cast<std::size_t>(t.index) * out_width + x) * 3];
        for (int c = 0; c < 3; ++c) acc[c] += t.weight * src[c];
      }
      for (int c = 0; c < 3; ++c) {
        out.at(y, x, c) = static_cast<float>(
            std::clamp(std::lround(acc[c]), 0L, 255L));
      }
    }
  }
  return out;
}

ImageArray to_jzazbz(const ImageArray& srgb) {
  if (srgb.space() != PixelSpace::kSrgb) {
    throw Error("to_jzazbz expects an sRGB image");
  }
  ImageArray out(srgb.width(), srgb.height(), PixelSpace::kJzazbz);
  const auto in = srgb.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < in.size(); i += 3) {
    double jz, az, bz;
    colorspace::srgb_to_jzazbz_channels(in[i], in[i + 1], in[i + 2], jz, az, bz);
    dst[i] = static_cast<float>(jz);
    dst[i + 1] = static_cast<float>(az);
    dst[i + 2] = static_cast<float>(bz);
  }
  return out;
}

ImageArray to_srgb(const ImageArray& jzazbz, colorspace::ClampStats* stats) {
  if (jzazbz.space() != PixelSpace::kJzazbz) {
    throw Error("to_srgb expects a JzAzBz image");
  }
  ImageArray out(jzazbz.width(), jzazbz.height(), PixelSpace::kSrgb);
  const auto in = jzazbz.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < in.size(); i += 3) {
    double r, g, b;
    bool clamped = false;
    colorspace::jzazbz_to_srgb_channels(in[i], in[i + 1], in[i + 2], r, g, b, &clamped);
    if (clamped && stats) ++stats->clamped;
    dst[i] = static_cast<float>(std::clamp(std::lround(r), 0L, 255L));
    dst[i + 1] = static_cast<float>(std::clamp(std::lround(g), 0L, 255L));
    dst[i + 2] = static_cast<float>(std::clamp(std::lround(b), 0L, 255L));
  }
  return out;
}

Colorgram compose_colorgram(std::span<const ImageArray> images) {
  if (images.empty()) {
    throw EmptyInput("compose_colorgram: no images");
  }
  for (const ImageArray& img : images) {
    if (img.space() != PixelSpace::kSrgb || img.width() != kCanonicalSize ||
        img.height() != kCanonicalSize) {
      throw Error("compose_colorgram expects sRGB images at canonical size");
    }
  }

  const std::size_t n = static_cast<std::size_t>(kCanonicalSize) * kCanonicalSize * 3;
  std::vector<double> sum(n, 0.0);
  for (const ImageArray& img : images) {
    const auto px = img.pixels();
    for (std::size_t i = 0; i < n; i += 3) {
      double jz, az, bz;
      colorspace::srgb_to_jzazbz_channels(px[i], px[i + 1], px[i + 2], jz, az, bz);
      sum[i] += jz;
      sum[i + 1] += az;
      sum[i + 2] += bz;
    }
  }

  const double inv = 1.0 / static_cast<double>(images.size());
  Colorgram gram;
  gram.source_count = static_cast<int>(images.size());
  gram.image = ImageArray(kCanonicalSize, kCanonicalSize, PixelSpace::kSrgb);
  auto dst = gram.image.pixels();
  for (std::size_t i = 0; i < n; i += 3) {
    double r, g, b;
    bool clamped = false;
    colorspace::jzazbz_to_srgb_channels(sum[i] * inv, sum[i + 1] * inv,
                                        sum[i + 2] * inv, r, g, b, &clamped);
    dst[i] = static_cast<float>(std::clamp(std::lround(r), 0L, 255L));
    dst[i + 1] = static_cast<float>(std::clamp(std::lround(g), 0L, 255L));
    dst[i + 2] = static_cast<float>(std::clamp(std::lround(b), 0L, 255L));
  }
  return gram;
}

}  // namespace chromalex::imaging
