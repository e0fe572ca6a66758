#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chromalex/embedding.hpp"
#include "chromalex/errors.hpp"
#include "chromalex/image.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/util.hpp"
#include "helpers.hpp"

using namespace chromalex;
using embedding::BinGrid;
using embedding::ColorDistribution;

namespace {

ColorDistribution dist_of(std::initializer_list<double> masses) {
  ColorDistribution d;
  int i = 0;
  for (const double m : masses) d[i++] = m;
  return d;
}

ColorDistribution random_distribution(Rng& rng) {
  ColorDistribution d;
  double total = 0;
  for (int i = 0; i < embedding::kBins; ++i) {
    d[i] = rng.uniform01() + 1e-6;
    total += d[i];
  }
  for (int i = 0; i < embedding::kBins; ++i) d[i] /= total;
  return d;
}

// Direct one-pass coding of the divergence definition, kept deliberately
// separate from the library's two-KL formulation.
double js_direct(const ColorDistribution& a, const ColorDistribution& b) {
  double total = 0;
  for (int i = 0; i < embedding::kBins; ++i) {
    const double m = 0.5 * (a[i] + b[i]);
    if (a[i] > 0) total += 0.5 * a[i] * std::log(a[i] / m);
    if (b[i] > 0) total += 0.5 * b[i] * std::log(b[i] / m);
  }
  return total;
}

}  // namespace

TEST_CASE("primaries fall into the expected grid cells") {
  const auto grid = BinGrid::standard();
  const auto idx = [&](int r, int g, int b) {
    const auto c = colorspace::srgb_to_jzazbz({static_cast<std::uint8_t>(r),
                                               static_cast<std::uint8_t>(g),
                                               static_cast<std::uint8_t>(b)});
    return grid.index_of(c.jz, c.az, c.bz);
  };
  CHECK(idx(255, 0, 0) == 7);    // bright and red and yellow
  CHECK(idx(0, 255, 0) == 5);    // bright, green side, yellow
  CHECK(idx(0, 0, 255) == 0);    // dark, green side, blue
  CHECK(idx(255, 255, 255) == 5);
  CHECK(idx(0, 0, 0) == 1);      // dark, green side of neutral, blue side
}

TEST_CASE("histogram of a four-color image splits mass by cell") {
  imaging::ImageArray img(2, 2, imaging::PixelSpace::kSrgb);
  const int px[4][3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}, {255, 255, 255}};
  for (int i = 0; i < 4; ++i) {
    for (int c = 0; c < 3; ++c) img.at(i / 2, i % 2, c) = static_cast<float>(px[i][c]);
  }
  const auto jz = imaging::to_jzazbz(img);
  const auto hist = embedding::histogram_jzazbz(jz, BinGrid::standard());
  CHECK(hist[0] == doctest::Approx(0.25));
  CHECK(hist[5] == doctest::Approx(0.5));
  CHECK(hist[7] == doctest::Approx(0.25));
  CHECK(hist[1] == 0.0);
}

TEST_CASE("histograms of random images are normalized distributions") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = testutil::random_image(rng, 24, 24);
    const auto hist =
        embedding::histogram_jzazbz(imaging::to_jzazbz(img), BinGrid::standard());
    double total = 0;
    for (int i = 0; i < embedding::kBins; ++i) {
      REQUIRE(hist[i] >= 0.0);
      total += hist[i];
    }
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(embedding::is_valid_distribution(hist));

    const auto rgb = embedding::histogram_rgb(img);
    total = 0;
    for (int i = 0; i < embedding::kBins; ++i) total += rgb[i];
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("coordinates outside the nominal box are clamped and counted") {
  imaging::ImageArray img(2, 1, imaging::PixelSpace::kJzazbz);
  img.at(0, 0, 0) = 0.2f;  // above the jz ceiling
  img.at(0, 0, 1) = 0.0f;
  img.at(0, 0, 2) = 0.0f;
  img.at(0, 1, 0) = 0.05f;  // in range
  img.at(0, 1, 1) = 0.0f;
  img.at(0, 1, 2) = 0.0f;
  std::uint64_t out_of_range = 0;
  const auto hist =
      embedding::histogram_jzazbz(img, BinGrid::standard(), &out_of_range);
  CHECK(out_of_range == 1);
  CHECK(hist[5] == doctest::Approx(0.5));  // clamped pixel still lands high
  CHECK(hist[1] == doctest::Approx(0.5));
}

TEST_CASE("octant histogram of rgb splits at mid-gray per channel") {
  const auto img = testutil::solid_image(3, 3, 200, 10, 130);
  const auto hist = embedding::histogram_rgb(img);
  CHECK(hist[4 + 0 + 1] == doctest::Approx(1.0));  // r high, g low, b high
}

TEST_CASE("kl divergence matches hand values and flags missing support") {
  const auto p = dist_of({1, 0, 0, 0, 0, 0, 0, 0});
  const auto q = dist_of({0.5, 0.5, 0, 0, 0, 0, 0, 0});
  CHECK(embedding::kl_divergence(p, q) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(embedding::kl_divergence(q, q) == doctest::Approx(0.0));

  const auto r = dist_of({0, 1, 0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(embedding::kl_divergence(p, r), SupportError);
}

TEST_CASE("js divergence endpoints: zero at equality, ln 2 at disjoint") {
  const auto p = dist_of({1, 0, 0, 0, 0, 0, 0, 0});
  const auto q = dist_of({0, 1, 0, 0, 0, 0, 0, 0});
  CHECK(embedding::js_divergence(p, p) == doctest::Approx(0.0));
  CHECK(embedding::js_divergence(p, q) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(embedding::js_distance(p, q) ==
        doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-12));
}

TEST_CASE("js divergence properties hold on random distribution pairs") {
  Rng rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_distribution(rng);
    const auto b = random_distribution(rng);
    const double ab = embedding::js_divergence(a, b);
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= std::log(2.0) + 1e-12);
    REQUIRE(std::abs(ab - embedding::js_divergence(b, a)) < 1e-12);
    REQUIRE(std::abs(ab - js_direct(a, b)) < 1e-12);
  }
  const auto a = random_distribution(rng);
  CHECK(embedding::js_divergence(a, a) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("sqrt of js satisfies the triangle inequality") {
  Rng rng(31337);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_distribution(rng);
    const auto b = random_distribution(rng);
    const auto c = random_distribution(rng);
    const double ab = embedding::js_distance(a, b);
    const double bc = embedding::js_distance(b, c);
    const double ac = embedding::js_distance(a, c);
    REQUIRE(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("aggregation returns per-bin mean and population spread") {
  const std::vector<ColorDistribution> imgs = {
      dist_of({1, 0, 0, 0, 0, 0, 0, 0}), dist_of({0, 1, 0, 0, 0, 0, 0, 0})};
  const auto agg = embedding::aggregate_word(imgs);
  CHECK(agg.mean[0] == doctest::Approx(0.5));
  CHECK(agg.mean[1] == doctest::Approx(0.5));
  CHECK(agg.mean[2] == doctest::Approx(0.0));
  CHECK(agg.std[0] == doctest::Approx(0.5));
  CHECK(agg.std[1] == doctest::Approx(0.5));
  CHECK(agg.std[2] == doctest::Approx(0.0));

  CHECK_THROWS_AS(embedding::aggregate_word({}), EmptyInput);

  // single image: mean is the image, spread zero
  const std::vector<ColorDistribution> one = {dist_of({0.25, 0.75, 0, 0, 0, 0, 0, 0})};
  const auto single = embedding::aggregate_word(one);
  CHECK(single.mean[1] == doctest::Approx(0.75));
  CHECK(single.std[1] == doctest::Approx(0.0));
}

TEST_CASE("concat embedding is 8 or 16 wide") {
  const auto mean = dist_of({0.5, 0.5, 0, 0, 0, 0, 0, 0});
  std::array<double, 8> sd{};
  sd[0] = 0.25;
  const auto short8 = embedding::concat_embedding(mean, sd, false);
  REQUIRE(short8.size() == 8);
  CHECK(short8[0] == 0.5);
  const auto long16 = embedding::concat_embedding(mean, sd, true);
  REQUIRE(long16.size() == 16);
  CHECK(long16[8] == 0.25);
}

TEST_CASE("cosine similarity on plain vectors") {
  const std::vector<double> u = {1, 1};
  const std::vector<double> v = {1, 0};
  CHECK(embedding::cosine_similarity(u, v) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(embedding::cosine_similarity(u, u) == doctest::Approx(1.0));

  const std::vector<double> neg = {-1, -1};
  CHECK(embedding::cosine_similarity(u, neg) == doctest::Approx(-1.0));

  const std::vector<double> three = {1, 2, 3};
  CHECK_THROWS_AS(embedding::cosine_similarity(u, three), DimensionMismatch);
  const std::vector<double> zero = {0, 0};
  CHECK_THROWS_AS(embedding::cosine_similarity(u, zero), ZeroVector);
}
