#include "chromalex/pipeline.hpp"

#include <algorithm>

#include "chromalex/errors.hpp"

namespace chromalex::pipeline {

WordEmbeddingResult embed_word(const std::string& word,
                               std::span<const std::filesystem::path> image_paths,
                               const EmbedOptions& opts) {
  const auto grid = embedding::BinGrid::standard();

  WordEmbeddingResult result;
  std::vector<imaging::ImageArray> resized;
  std::vector<embedding::ColorDistribution> jz_dists;
  std::vector<embedding::ColorDistribution> rgb_dists;
  double jz_sum[3] = {0, 0, 0};
  double rgb_sum[3] = {0, 0, 0};

  for (const auto& path : image_paths) {
    imaging::ImageArray img;
    try {
      img = imaging::load_image_file(path);
    } catch (const DecodeError&) {
      ++result.decode_failures;
      continue;
    }
    imaging::ImageArray canon = imaging::resize_antialiased(img);
    const imaging::ImageArray jz = imaging::to_jzazbz(canon);

    jz_dists.push_back(
        embedding::histogram_jzazbz(jz, grid, &result.out_of_range_pixels));
    rgb_dists.push_back(embedding::histogram_rgb(canon));

    // per-image mean coordinates; all images share the canonical pixel
    // count, so the mean over images equals the mean over all pixels
    double jacc[3] = {0, 0, 0};
    double racc[3] = {0, 0, 0};
    const auto jpx = jz.pixels();
    const auto rpx = canon.pixels();
    for (std::size_t i = 0; i < jpx.size(); i += 3) {
      for (int c = 0; c < 3; ++c) {
        jacc[c] += jpx[i + static_cast<std::size_t>(c)];
        racc[c] += rpx[i + static_cast<std::size_t>(c)];
      }
    }
    const double inv_px = 1.0 / static_cast<double>(jz.pixel_count());
    for (int c = 0; c < 3; ++c) {
      jz_sum[c] += jacc[c] * inv_px;
      rgb_sum[c] += racc[c] * inv_px;
    }
    resized.push_back(std::move(canon));
  }

  if (resized.empty()) {
    throw EmptyInput("embed_word: no usable images for '" + word + "'");
  }

  const auto agg = embedding::aggregate_word(jz_dists);
  embedding::WordColorEmbedding& rec = result.record;
  rec.word = word;
  rec.jzazbz_dist = agg.mean;
  if (opts.include_std) rec.jzazbz_dist_std = agg.std;
  rec.rgb_dist = embedding::aggregate_word(rgb_dists).mean;
  const double inv_n = 1.0 / static_cast<double>(resized.size());
  for (int c = 0; c < 3; ++c) {
    rec.jzazbz_vector[static_cast<std::size_t>(c)] = jz_sum[c] * inv_n;
    rec.rgb_vector[static_cast<std::size_t>(c)] = rgb_sum[c] * inv_n;
  }
  rec.image_count = static_cast<int>(resized.size());

  result.colorgram = imaging::compose_colorgram(resized);
  return result;
}

std::vector<std::filesystem::path> list_image_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) return files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

}  // namespace chromalex::pipeline
