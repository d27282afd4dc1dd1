#pragma once

#include <string>
#include <vector>

#include "zslt/training.hpp"

namespace zslt {

// ---------------------------------------------------------------------------
// Metrics

/// Corpus BLEU (percent), 4-gram, clipped counts, brevity penalty, unsmoothed.
double bleu(const std::vector<std::string>& hypotheses, const std::vector<std::string>& references);
/// Corpus WER (percent): total word edits / total reference words.
double wer(const std::vector<std::string>& hypotheses, const std::vector<std::string>& references);
/// Unit-cost Levenshtein distance between word sequences.
std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

// ---------------------------------------------------------------------------
// Decoding

struct DecodeOptions {
  std::size_t max_tokens = 2048;
  std::size_t threads = 1;
  /// Output cap per sentence: ratio * source length + slack.
  double max_len_ratio = 2.0;
  std::size_t max_len_slack = 10;
};

/// Greedy-decodes every example of `data` through (src, tgt); results in dataset order.
std::vector<std::string> translate_dataset(const Registry& registry, const ModuleKey& src, const ModuleKey& tgt,
                                           const Dataset& data, const BpeModel& bpe, const DecodeOptions& opt = {});

// ---------------------------------------------------------------------------
// Evaluation grid

struct EvalCell {
  std::string model;
  std::string src;
  std::string tgt;
  std::string metric;  // BLEU or WER
  double value = 0.0;
  bool supervised = false;
  std::size_t n_sentences = 0;

  nlohmann::json to_json() const;
  static EvalCell from_json(const nlohmann::json& j);
};

struct EvalReport {
  std::vector<EvalCell> cells;
  std::vector<std::string> absent;  // routes that could not be evaluated

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
  const EvalCell* find(const std::string& model, const std::string& src, const std::string& tgt) const;
};

struct GridModel {
  std::string name;
  const Registry* registry = nullptr;
};

struct GridOptions {
  std::string split = "test";
  bool include_text = false;  // also evaluate text->text MT cells
  bool cascade = true;
  DecodeOptions decode;
};

/// Every speech encoder of every model against every text decoder (WER when
/// the target language matches the source, BLEU otherwise), plus cascade rows.
/// Supervision is read from each model's training history.
EvalReport eval_grid(const std::vector<GridModel>& models, const Manifest& mt, const Manifest& speech,
                     const BpeModel& bpe, const GridOptions& opt = {});

/// Throws ConflictError when a cell marked zero-shot was trained per `history`.
void check_zero_shot(const EvalReport& report, const std::string& model, const std::vector<TrainingRecord>& history);

// ---------------------------------------------------------------------------
// Representations

enum class Stage { kPreAdapter, kPostAdapter, kText };

struct RepresentationSet {
  std::string label;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> vectors;
};

/// Mean over time of the encoder output for each example, keyed by sentence id.
RepresentationSet extract_representations(const Registry& registry, const ModuleKey& key, const Dataset& data,
                                          Stage stage, const std::string& label);

struct RetrievalResult {
  double accuracy = 0.0;  // percent over non-skipped queries
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::vector<std::string> nearest;  // per query; empty when skipped
};

RetrievalResult retrieval_top1(const RepresentationSet& queries, const RepresentationSet& keys);

struct ProjectedPoint {
  std::string label;
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

/// PCA on the union of sets, top two components, largest-magnitude loading positive.
std::vector<ProjectedPoint> project_2d(const std::vector<RepresentationSet>& sets);
std::string projection_csv(const std::vector<ProjectedPoint>& points);

// ---------------------------------------------------------------------------
// Adapter sweep

struct SweepRow {
  std::string kind;  // adapter or baseline
  std::size_t d_proj = 0;
  std::size_t adapter_params = 0;
  double bleu = 0.0;
  double final_loss = 0.0;
  std::vector<double> losses;  // training loss per step
};

struct SweepSetup {
  const Registry* base = nullptr;  // holds the pretrained speech encoder and trained decoders
  ModuleKey speech;
  ModuleKey decoder;
  const Dataset* train = nullptr;
  const Dataset* eval = nullptr;
  const BpeModel* bpe = nullptr;
  TrainConfig train_cfg;
  DecodeOptions decode;
};

/// One coupling per projection size at equal budget, plus a no-adapter baseline row.
std::vector<SweepRow> adapter_sweep(const SweepSetup& setup, const std::vector<std::size_t>& proj_sizes);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Deep copy of a registry (fresh parameter storage).
Registry clone_registry(const Registry& registry);

std::string format_fixed(double v, int decimals = 6);

}  // namespace zslt
