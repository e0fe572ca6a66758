#include "chromalex/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "chromalex/errors.hpp"

namespace chromalex::embedding {

bool is_valid_distribution(const ColorDistribution& d) {
  double sum = 0.0;
  for (double m : d.mass) {
    if (!(m >= 0.0)) return false;
    sum += m;
  }
  return std::abs(sum - 1.0) <= 1e-9;
}

BinGrid BinGrid::standard() {
  BinGrid g;
  g.jz_lo = colorspace::kJzMin;
  g.jz_hi = colorspace::kJzMax;
  g.az_lo = colorspace::kAzMin;
  g.az_hi = colorspace::kAzMax;
  g.bz_lo = colorspace::kBzMin;
  g.bz_hi = colorspace::kBzMax;
  g.jz_mid = 0.5 * (g.jz_lo + g.jz_hi);
  g.az_mid = 0.5 * (g.az_lo + g.az_hi);
  g.bz_mid = 0.5 * (g.bz_lo + g.bz_hi);
  return g;
}

ColorDistribution histogram_jzazbz(const imaging::ImageArray& img, const BinGrid& grid,
                                   std::uint64_t* out_of_range) {
  if (img.space() != imaging::PixelSpace::kJzazbz) {
    throw Error("histogram_jzazbz expects a JzAzBz image");
  }
  if (img.pixel_count() == 0) throw EmptyInput("histogram_jzazbz: empty image");

  std::array<std::uint64_t, kBins> counts{};
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    double jz = px[i];
    double az = px[i + 1];
    double bz = px[i + 2];
    if (!grid.in_range(jz, az, bz)) {
      if (out_of_range) ++*out_of_range;
      jz = std::clamp(jz, grid.jz_lo, grid.jz_hi);
      az = std::clamp(az, grid.az_lo, grid.az_hi);
      bz = std::clamp(bz, grid.bz_lo, grid.bz_hi);
    }
    ++counts[static_cast<std::size_t>(grid.index_of(jz, az, bz))];
  }

  ColorDistribution dist;
  const double inv = 1.0 / static_cast<double>(img.pixel_count());
  for (int k = 0; k < kBins; ++k) {
    dist[k] = static_cast<double>(counts[static_cast<std::size_t>(k)]) * inv;
  }
  return dist;
}

ColorDistribution histogram_rgb(const imaging::ImageArray& img) {
  if (img.space() != imaging::PixelSpace::kSrgb) {
    throw Error("histogram_rgb expects an sRGB image");
  }
  if (img.pixel_count() == 0) throw EmptyInput("histogram_rgb: empty image");

  constexpr double kMid = 127.5;
  std::array<std::uint64_t, kBins> counts{};
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    const int r = px[i] < kMid ? 0 : 1;
    const int g = px[i + 1] < kMid ? 0 : 1;
    const int b = px[i + 2] < kMid ? 0 : 1;
    ++counts[static_cast<std::size_t>(r * 4 + g * 2 + b)];
  }

  ColorDistribution dist;
  const double inv = 1.0 / static_cast<double>(img.pixel_count());
  for (int k = 0; k < kBins; ++k) {
    dist[k] = static_cast<double>(counts[static_cast<std::size_t>(k)]) * inv;
  }
  return dist;
}

WordAggregate aggregate_word(std::span<const ColorDistribution> images) {
  if (images.empty()) throw EmptyInput("aggregate_word: no distributions");

  WordAggregate agg;
  const double inv = 1.0 / static_cast<double>(images.size());
  for (int k = 0; k < kBins; ++k) {
    double sum = 0.0;
    for (const ColorDistribution& d : images) sum += d[k];
    agg.mean[k] = sum * inv;
  }
  for (int k = 0; k < kBins; ++k) {
    double ss = 0.0;
    for (const ColorDistribution& d : images) {
      const double delta = d[k] - agg.mean[k];
      ss += delta * delta;
    }
    agg.std[static_cast<std::size_t>(k)] = std::sqrt(ss * inv);
  }
  return agg;
}

std::vector<double> concat_embedding(const ColorDistribution& mean,
                                     const std::array<double, kBins>& std,
                                     bool include_std) {
  std::vector<double> v(mean.mass.begin(), mean.mass.end());
  if (include_std) v.insert(v.end(), std.begin(), std.end());
  return v;
}

double kl_divergence(const ColorDistribution& p, const ColorDistribution& q) {
  double sum = 0.0;
  for (int k = 0; k < kBins; ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) {
      throw SupportError("kl_divergence: p has mass where q is zero (bin " +
                         std::to_string(k) + ")");
    }
    sum += p[k] * std::log(p[k] / q[k]);
  }
  return sum;
}

double js_divergence(const ColorDistribution& a, const ColorDistribution& b) {
  ColorDistribution mid;
  for (int k = 0; k < kBins; ++k) mid[k] = 0.5 * (a[k] + b[k]);
  return 0.5 * (kl_divergence(a, mid) + kl_divergence(b, mid));
}

double js_distance(const ColorDistribution& a, const ColorDistribution& b) {
  return std::sqrt(std::max(js_divergence(a, b), 0.0));
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("cosine_similarity: dimension mismatch");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw ZeroVector("cosine_similarity: zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

}  // namespace chromalex::embedding
