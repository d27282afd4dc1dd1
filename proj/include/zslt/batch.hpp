#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "zslt/features.hpp"

namespace zslt {

inline constexpr std::int32_t kPadId = 0;
inline constexpr std::int32_t kBosId = 1;
inline constexpr std::int32_t kEosId = 2;
inline constexpr std::int32_t kUnkId = 3;

/// Padded subword-id matrix [rows x max_len] plus true lengths.
struct TokenBatch {
  std::size_t max_len = 0;
  std::vector<std::int32_t> ids;
  std::vector<std::size_t> lengths;

  static TokenBatch from_sequences(const std::vector<std::vector<std::int32_t>>& seqs);
  std::size_t rows() const { return lengths.size(); }
  std::span<const std::int32_t> row(std::size_t i) const { return {ids.data() + i * max_len, lengths[i]}; }
  /// Ids with padding removed, rows back to back.
  std::vector<std::int32_t> packed_ids() const;
  std::size_t total_tokens() const;
};

/// Padded features [rows x max_frames x n_mels] plus true frame counts.
struct SpeechBatch {
  std::size_t max_frames = 0;
  std::size_t n_mels = 0;
  std::vector<float> features;
  std::vector<std::size_t> lengths;

  static SpeechBatch from_features(const std::vector<const SpectrogramFeatures*>& utts);
  std::size_t rows() const { return lengths.size(); }
  SpectrogramFeatures utterance(std::size_t i) const;
};

using SourceBatch = std::variant<TokenBatch, SpeechBatch>;

}  // namespace zslt
