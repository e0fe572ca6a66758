#include "chromalex/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace chromalex::colorspace {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

constexpr Mat3 kSrgbToXyz = {{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

// Chromatic pre-adaptation factors and the two fixed matrices of the
// JzAzBz chain (XYZ' -> LMS, then PQ-encoded LMS -> Iz/az/bz).
constexpr double kB = 1.15;
constexpr double kG = 0.66;

constexpr Mat3 kXyzToLms = {{
    {0.41478972, 0.579999, 0.0146480},
    {-0.2015100, 1.120649, 0.0531008},
    {-0.0166008, 0.264800, 0.6684799},
}};

constexpr Mat3 kLmsToIab = {{
    {0.5, 0.5, 0.0},
    {3.524000, -4.066708, 0.542708},
    {0.199076, 1.096799, -1.295875},
}};

// Perceptual quantizer constants.
constexpr double kPqN = 2610.0 / 16384.0;
constexpr double kPqP = 1.7 * 2523.0 / 32.0;
constexpr double kPqC1 = 3424.0 / 4096.0;
constexpr double kPqC2 = 2413.0 / 128.0;
constexpr double kPqC3 = 2392.0 / 128.0;

constexpr double kD = -0.56;
constexpr double kD0 = 1.6295499532821566e-11;

Mat3 invert(const Mat3& m) {
  const double a = m[0][0], b = m[0][1], c = m[0][2];
  const double d = m[1][0], e = m[1][1], f = m[1][2];
  const double g = m[2][0], h = m[2][1], i = m[2][2];
  const double det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  const double s = 1.0 / det;
  return {{
      {(e * i - f * h) * s, (c * h - b * i) * s, (b * f - c * e) * s},
      {(f * g - d * i) * s, (a * i - c * g) * s, (c * d - a * f) * s},
      {(d * h - e * g) * s, (b * g - a * h) * s, (a * e - b * d) * s},
  }};
}

const Mat3 kXyzToSrgb = invert(kSrgbToXyz);
const Mat3 kLmsToXyz = invert(kXyzToLms);
const Mat3 kIabToLms = invert(kLmsToIab);

Vec3 mul(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

double srgb_expand(double u) {
  return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

double srgb_compress(double v) {
  return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double pq(double x) {
  const double t = std::pow(x / 10000.0, kPqN);
  return std::pow((kPqC1 + kPqC2 * t) / (1.0 + kPqC3 * t), kPqP);
}

double pq_inverse(double y, bool* hit) {
  if (y < 0.0 && hit) *hit = true;
  const double t = std::pow(std::max(y, 0.0), 1.0 / kPqP);
  const double num = kPqC1 - t;
  const double den = kPqC3 * t - kPqC2;
  const double ratio = num / den;
  // ratio >= 0 for every y reachable from the forward transform.
  if (ratio < 0.0 && hit) *hit = true;
  return 10000.0 * std::pow(std::max(ratio, 0.0), 1.0 / kPqN);
}

}  // namespace

void srgb_to_jzazbz_channels(double r, double g, double b,
                             double& jz, double& az, double& bz) {
  const Vec3 lin = {srgb_expand(r / 255.0), srgb_expand(g / 255.0),
                    srgb_expand(b / 255.0)};
  Vec3 xyz = mul(kSrgbToXyz, lin);
  xyz[0] *= kWhiteLuminance;
  xyz[1] *= kWhiteLuminance;
  xyz[2] *= kWhiteLuminance;

  const double xp = kB * xyz[0] - (kB - 1.0) * xyz[2];
  const double yp = kG * xyz[1] - (kG - 1.0) * xyz[0];
  const Vec3 lms = mul(kXyzToLms, {xp, yp, xyz[2]});
  const Vec3 lmsp = {pq(lms[0]), pq(lms[1]), pq(lms[2])};
  const Vec3 iab = mul(kLmsToIab, lmsp);

  jz = (1.0 + kD) * iab[0] / (1.0 + kD * iab[0]) - kD0;
  az = iab[1];
  bz = iab[2];
}

void jzazbz_to_srgb_channels(double jz, double az, double bz,
                             double& r, double& g, double& b, bool* clamped) {
  const double jd = jz + kD0;
  const double iz = jd / (1.0 + kD - kD * jd);
  const Vec3 lmsp = mul(kIabToLms, {iz, az, bz});
  bool hit = false;
  const Vec3 lms = {pq_inverse(lmsp[0], &hit), pq_inverse(lmsp[1], &hit),
                    pq_inverse(lmsp[2], &hit)};
  const Vec3 adapted = mul(kLmsToXyz, lms);

  const double x = (adapted[0] + (kB - 1.0) * adapted[2]) / kB;
  const double y = (adapted[1] + (kG - 1.0) * x) / kG;
  Vec3 lin = mul(kXyzToSrgb, {x / kWhiteLuminance, y / kWhiteLuminance,
                              adapted[2] / kWhiteLuminance});

  for (double& v : lin) {
    if (v < 0.0 || v > 1.0) {
      hit = true;
      v = std::clamp(v, 0.0, 1.0);
    }
  }
  if (clamped) *clamped = hit;

  r = srgb_compress(lin[0]) * 255.0;
  g = srgb_compress(lin[1]) * 255.0;
  b = srgb_compress(lin[2]) * 255.0;
}

JzazbzCoord srgb_to_jzazbz(const SrgbPixel& pixel) {
  JzazbzCoord c;
  srgb_to_jzazbz_channels(pixel.r, pixel.g, pixel.b, c.jz, c.az, c.bz);
  return c;
}

SrgbPixel jzazbz_to_srgb(const JzazbzCoord& coord, ClampStats* stats) {
  double r = 0.0, g = 0.0, b = 0.0;
  bool clamped = false;
  jzazbz_to_srgb_channels(coord.jz, coord.az, coord.bz, r, g, b, &clamped);
  if (clamped && stats) ++stats->clamped;
  const auto quantize = [](double v) {
    if (!std::isfinite(v)) v = 0.0;
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  };
  return {quantize(r), quantize(g), quantize(b)};
}

}  // namespace chromalex::colorspace
