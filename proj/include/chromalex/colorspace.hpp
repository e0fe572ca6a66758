#pragma once

#include <cstdint>

namespace chromalex::colorspace {

/// One 8-bit sRGB pixel.
struct SrgbPixel {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const SrgbPixel&, const SrgbPixel&) = default;
};

/// One coordinate in the perceptually uniform JzAzBz space.
/// jz is lightness, az the red-green axis, bz the yellow-blue axis.
struct JzazbzCoord {
  double jz = 0.0;
  double az = 0.0;
  double bz = 0.0;
};

/// Gamut bounds: the JzAzBz box that the full 8-bit sRGB cube maps into.
/// The white luminance anchor below is calibrated so the box is tight and
/// inclusive; the binding corners are yellow (bz ceiling) and blue (bz floor).
inline constexpr double kJzMin = 0.0;
inline constexpr double kJzMax = 0.167;
inline constexpr double kAzMin = -0.1;
inline constexpr double kAzMax = 0.11;
inline constexpr double kBzMin = -0.156;
inline constexpr double kBzMax = 0.115;

/// Absolute luminance (cd/m^2) assigned to sRGB reference white before the
/// perceptual-quantizer stage. Display white is a free parameter of the
/// transform; this is the largest one-decimal value for which every 8-bit
/// sRGB color maps inside the gamut box above (worst margin ~2e-5, at the
/// yellow corner).
inline constexpr double kWhiteLuminance = 99.1;

/// Counts of out-of-gamut coordinates clamped during inversion.
struct ClampStats {
  std::uint64_t clamped = 0;
};

/// sRGB -> JzAzBz. Total on valid pixels; double precision throughout.
JzazbzCoord srgb_to_jzazbz(const SrgbPixel& pixel);

/// JzAzBz -> sRGB. Out-of-gamut coordinates are clamped to the nearest
/// representable channel values, never rejected; each pixel that had to be
/// clamped anywhere along the inversion (a PQ-encoded LMS value outside the
/// quantizer's domain, or linear RGB outside [0,1]) bumps stats->clamped
/// once when stats is given.
SrgbPixel jzazbz_to_srgb(const JzazbzCoord& coord, ClampStats* stats = nullptr);

/// Raw channel-level transforms, exposed for the bulk image pipeline.
/// Input channels in [0,255]; output written to jz/az/bz.
void srgb_to_jzazbz_channels(double r, double g, double b,
                             double& jz, double& az, double& bz);
void jzazbz_to_srgb_channels(double jz, double az, double bz,
                             double& r, double& g, double& b, bool* clamped);

}  // namespace chromalex::colorspace
