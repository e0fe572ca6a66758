#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chromalex/colorspace.hpp"
#include "chromalex/image.hpp"

namespace chromalex::embedding {

inline constexpr int kBins = 8;

/// Normalized mass over the 8 colorspace subvolumes.
struct ColorDistribution {
  std::array<double, kBins> mass{};

  double& operator[](int i) { return mass[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return mass[static_cast<std::size_t>(i)]; }
};

/// Validates non-negativity and unit total mass (1e-9 tolerance).
bool is_valid_distribution(const ColorDistribution& d);

/// 2x2x2 grid over the nominal JzAzBz ranges, each axis split at its
/// midpoint. Bins are [lo, mid) and [mid, hi]; index order is jz-major,
/// then az, then bz. Out-of-range coordinates clamp to the nearest bin.
struct BinGrid {
  double jz_lo, jz_mid, jz_hi;
  double az_lo, az_mid, az_hi;
  double bz_lo, bz_mid, bz_hi;

  static BinGrid standard();

  int index_of(double jz, double az, double bz) const {
    const int j = jz < jz_mid ? 0 : 1;
    const int a = az < az_mid ? 0 : 1;
    const int b = bz < bz_mid ? 0 : 1;
    return j * 4 + a * 2 + b;
  }

  bool in_range(double jz, double az, double bz) const {
    return jz >= jz_lo && jz <= jz_hi && az >= az_lo && az <= az_hi &&
           bz >= bz_lo && bz <= bz_hi;
  }
};

/// Bin masses of a JzAzBz image. Coordinates outside the nominal ranges
/// are clamped first; `out_of_range` (if given) counts them.
ColorDistribution histogram_jzazbz(const imaging::ImageArray& img, const BinGrid& grid,
                                   std::uint64_t* out_of_range = nullptr);

/// Octant histogram of an sRGB image over [0,255]^3 split at the midpoint
/// per channel, r-major index order. Mirrors the JzAzBz binning for the
/// on-disk record format.
ColorDistribution histogram_rgb(const imaging::ImageArray& img);

struct WordAggregate {
  ColorDistribution mean;
  std::array<double, kBins> std{};
};

/// Component-wise mean and population standard deviation over per-image
/// distributions. Throws EmptyInput.
WordAggregate aggregate_word(std::span<const ColorDistribution> images);

/// 8-dim (mean) or 16-dim (mean ++ std) feature vector.
std::vector<double> concat_embedding(const ColorDistribution& mean,
                                     const std::array<double, kBins>& std,
                                     bool include_std);

/// Sum_k p_k ln(p_k / q_k), natural log, 0 ln(0/x) = 0.
/// Throws SupportError where p_k > 0 but q_k = 0.
double kl_divergence(const ColorDistribution& p, const ColorDistribution& q);

/// Jensen-Shannon divergence against the midpoint mixture; in [0, ln 2],
/// symmetric, 0 iff equal. Lower values mean more similar distributions.
double js_divergence(const ColorDistribution& a, const ColorDistribution& b);

/// sqrt(js_divergence): satisfies the triangle inequality.
double js_distance(const ColorDistribution& a, const ColorDistribution& b);

/// u.v / (|u||v|). Throws ZeroVector / DimensionMismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// One word's color embedding record as persisted on disk.
struct WordColorEmbedding {
  std::string word;
  ColorDistribution jzazbz_dist;
  std::optional<std::array<double, kBins>> jzazbz_dist_std;
  ColorDistribution rgb_dist;
  std::array<double, 3> jzazbz_vector{};
  std::array<double, 3> rgb_vector{};
  std::string colorgram_path;  // relative to the embedding file
  std::optional<double> concreteness_mean;
  std::optional<double> concreteness_sd;
  int image_count = 0;
};

}  // namespace chromalex::embedding
