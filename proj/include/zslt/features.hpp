#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace zslt {

/// Time-major log-Mel style features [n_frames x n_mels].
struct SpectrogramFeatures {
  // Framing of the real front end these stand in for; informational only.
  static constexpr double kWindowMs = 25.0;
  static constexpr double kHopMs = 10.0;

  std::size_t n_frames = 0;
  std::size_t n_mels = 0;
  std::vector<float> frames;

  float at(std::size_t t, std::size_t m) const { return frames[t * n_mels + m]; }
  /// Throws InputError on size mismatch or non-finite values.
  void validate() const;
};

// MBSF file: "MBSF", u32 version (1), u32 n_frames, u32 n_mels, then
// n_frames*n_mels little-endian f32, time-major.
void write_features(std::ostream& out, const SpectrogramFeatures& f);
SpectrogramFeatures read_features(std::istream& in);
void save_features(const std::filesystem::path& path, const SpectrogramFeatures& f);
SpectrogramFeatures load_features(const std::filesystem::path& path);

}  // namespace zslt
