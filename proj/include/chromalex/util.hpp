#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace chromalex {

/// Deterministic RNG with fully specified derived draws.
///
/// std::mt19937_64 output is standardized, but the standard distributions
/// are not; every draw here is defined in terms of raw engine output so
/// seeded results are identical across compilers and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of entropy.
  double uniform01();

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n);

  /// Standard normal via Box-Muller.
  double gaussian();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a 64-bit over a byte buffer.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::uint64_t fnv1a64(const std::string& s);

/// FNV-1a of a file's contents, as a fixed-width hex string.
std::string file_hash_hex(const std::filesystem::path& path);

std::string to_hex(std::uint64_t value);

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file_text(const std::filesystem::path& path, const std::string& text);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const unsigned char> bytes);

/// Write to `<path>.tmp-<pid>` then rename into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const unsigned char> bytes);

std::string to_lower(std::string s);
std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char delim);

/// Current time as an ISO-8601 UTC string (second resolution).
std::string iso8601_utc_now();

/// Run fn(i) for i in [0, count) on up to `threads` worker threads.
/// threads <= 1 runs inline. Work items are claimed atomically; callers
/// that need determinism must make fn(i) write only to slot i.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

/// Simple row-major dense matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
  }
};

}  // namespace chromalex
