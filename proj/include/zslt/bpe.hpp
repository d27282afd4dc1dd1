#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zslt {

/// Byte-pair-encoding subword model with a separate end-of-word symbol.
class BpeModel {
 public:
  static constexpr const char* kEndOfWord = "</w>";

  /// Greedy most-frequent-pair merging over whitespace-separated words.
  /// Ties go to the lexicographically smallest (left, right) pair.
  static BpeModel train(const std::vector<std::string>& lines, std::size_t n_merges);

  std::vector<std::int32_t> encode(std::string_view text) const;
  std::string decode(std::span<const std::int32_t> ids) const;
  /// Subword symbols for one word, end-of-word marker included.
  std::vector<std::string> segment_word(std::string_view word) const;
  std::vector<std::string> tokenize(std::string_view text) const;

  const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }
  std::size_t vocab_size() const { return tokens_.size(); }
  std::int32_t id(const std::string& token) const;
  const std::string& token(std::int32_t id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  /// Hex digest of the serialized model; stored in checkpoints.
  std::string hash() const;

  void write(std::ostream& out) const;
  static BpeModel read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static BpeModel load(const std::filesystem::path& path);

 private:
  void add_token(const std::string& t);

  std::vector<std::pair<std::string, std::string>> merges_;
  std::map<std::pair<std::string, std::string>, std::size_t> rank_;
  std::vector<std::string> tokens_;
  std::map<std::string, std::int32_t> ids_;
};

/// Split UTF-8 text into code points (invalid bytes pass through singly).
std::vector<std::string> utf8_chars(std::string_view s);
std::vector<std::string> split_words(std::string_view s);

}  // namespace zslt
