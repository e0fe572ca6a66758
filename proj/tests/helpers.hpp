#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "chromalex/image.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/util.hpp"

namespace testutil {

inline chromalex::imaging::ImageArray solid_image(int w, int h, int r, int g,
                                                  int b) {
  chromalex::imaging::ImageArray img(w, h,
                                     chromalex::imaging::PixelSpace::kSrgb);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(y, x, 0) = static_cast<float>(r);
      img.at(y, x, 1) = static_cast<float>(g);
      img.at(y, x, 2) = static_cast<float>(b);
    }
  }
  return img;
}

inline chromalex::imaging::ImageArray random_image(chromalex::Rng& rng, int w,
                                                   int h) {
  chromalex::imaging::ImageArray img(w, h,
                                     chromalex::imaging::PixelSpace::kSrgb);
  for (float& v : img.pixels()) {
    v = static_cast<float>(rng.bounded(256));
  }
  return img;
}

/// Fresh empty scratch directory under the system temp root.
inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("chromalex-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
