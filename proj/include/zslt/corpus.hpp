#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "zslt/batch.hpp"
#include "zslt/bpe.hpp"
#include "zslt/models.hpp"

namespace zslt {

struct CorpusSpec {
  std::vector<std::string> languages{"en", "de", "fr", "es"};
  std::size_t vocab_size = 500;
  std::size_t n_train = 2000;
  std::size_t n_valid = 100;
  std::size_t n_test = 100;
  std::size_t min_words = 3;
  std::size_t max_words = 8;
  /// Letters per language alphabet; word forms spell the word index in this base.
  std::size_t alphabet_size = 8;
  /// Replace the letter-wise cipher by an arbitrary word-level bijection.
  bool scramble_words = false;
  std::string speech_lang = "en";
  std::size_t frames_per_char = 8;
  std::size_t n_mels = 8;
  double noise_sigma = 0.1;
  std::uint64_t seed = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static CorpusSpec from_json(const nlohmann::json& j);
  std::size_t word_length() const;
};

/// Latent sentences plus their per-language surface forms.
struct ToyCorpus {
  CorpusSpec spec;
  std::map<std::string, std::string> alphabets;
  std::map<std::string, std::vector<std::string>> lexicon;  // lang -> word index -> form
  std::vector<std::vector<std::size_t>> latent;               // sentence -> word indices
  std::vector<std::string> split;                             // sentence -> train/valid/test

  std::string sentence(const std::string& lang, std::size_t index) const;
  static std::string sentence_id(std::size_t index);
};

ToyCorpus gen_toy_corpus(const CorpusSpec& spec);

/// Fixed per-character acoustic templates, [frames_per_char x n_mels] each.
class SpeechSynth {
 public:
  SpeechSynth(const std::string& alphabet, std::size_t frames_per_char, std::size_t n_mels, std::uint64_t seed);

  /// Concatenated character templates plus N(0, sigma^2) noise seeded by noise_seed.
  SpectrogramFeatures synth(const std::string& text, double sigma, std::uint64_t noise_seed) const;
  /// Nearest-template decoding of each frames_per_char block.
  std::string decode_nearest(const SpectrogramFeatures& f) const;
  const std::string& alphabet() const { return alphabet_; }

 private:
  std::string alphabet_;
  std::size_t frames_per_char_;
  std::size_t n_mels_;
  std::vector<std::vector<float>> templates_;
};

SpectrogramFeatures synth_speech(const std::string& text, const SpeechSynth& synth, double sigma,
                                 std::uint64_t noise_seed);

// ---------------------------------------------------------------------------
// Manifests

struct ManifestRecord {
  std::string id;
  std::string src_lang;
  std::string tgt_lang;
  std::string src;
  std::string tgt;
  std::string split;

  /// Shared sentence id across languages: the part before the first '.'.
  std::string sentence() const { return id.substr(0, id.find('.')); }
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestRecord> records;

  std::vector<const ManifestRecord*> select(const std::string& src_lang, const std::string& tgt_lang,
                                            const std::string& split) const;
  std::filesystem::path resolve(const std::string& path) const { return base_dir / path; }
};

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRecord>& records);
Manifest read_manifest(const std::filesystem::path& path);

/// Writes text/, features/, mt.tsv and speech.tsv under out_dir.
void write_toy_corpus(const ToyCorpus& corpus, const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// Datasets and batching

struct Dataset {
  Modality modality = Modality::kText;
  std::vector<std::string> ids;
  std::vector<std::vector<std::int32_t>> src_tokens;  // EOS appended
  std::vector<SpectrogramFeatures> src_speech;
  std::vector<std::vector<std::int32_t>> tgt_tokens;  // no BOS/EOS
  std::vector<std::string> tgt_text;

  std::size_t size() const { return ids.size(); }
  std::size_t src_length(std::size_t i) const;
  SourceBatch source_batch(const std::vector<std::size_t>& indices) const;
  std::vector<std::vector<std::int32_t>> targets(const std::vector<std::size_t>& indices) const;
};

Dataset text_dataset(const Manifest& m, const BpeModel& bpe, const std::string& src_lang, const std::string& tgt_lang,
                     const std::string& split);
Dataset speech_dataset(const Manifest& m, const BpeModel& bpe, const std::string& src_lang,
                       const std::string& tgt_lang, const std::string& split);

/// Length-bucketed batches under a token budget; each epoch reshuffles with a seed
/// derived from (seed, epoch).
class BatchSampler {
 public:
  BatchSampler(const Dataset& data, std::size_t max_tokens, std::uint64_t seed);
  std::vector<std::size_t> next();
  std::size_t epoch() const { return epoch_; }

 private:
  void plan_epoch();

  const Dataset* data_;
  std::size_t max_tokens_;
  std::uint64_t seed_;
  std::size_t epoch_ = 0;
  std::size_t cursor_ = 0;
  std::vector<std::vector<std::size_t>> batches_;
};

}  // namespace zslt
