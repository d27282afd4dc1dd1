#pragma once

#include <functional>
#include <optional>

#include "zslt/corpus.hpp"
#include "zslt/registry.hpp"

namespace zslt {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.98;
  double eps = 1e-9;
  double peak_lr = 1e-3;
  std::size_t warmup_steps = 400;
};

/// peak * min(s / warmup, sqrt(warmup / s)) for 1-based step s.
double learning_rate(const AdamConfig& cfg, std::size_t step);

struct AdamSlot {
  std::vector<float> m;
  std::vector<float> v;
  std::size_t t = 0;
};

/// Adam over named parameters. Parameters without a gradient are skipped, so
/// they keep both their values and their moments.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  /// Applies one update at learning rate lr. Throws DivergenceError naming the
  /// first parameter with a non-finite gradient, before touching anything.
  void step(nn::ParamMap<float>& params, double lr);

  std::map<std::string, AdamSlot>& slots() { return slots_; }
  const std::map<std::string, AdamSlot>& slots() const { return slots_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::map<std::string, AdamSlot> slots_;
};

struct TrainConfig {
  std::size_t steps = 3000;
  std::size_t max_tokens = 1024;
  AdamConfig adam;
  double label_smoothing = 0.0;
  std::uint64_t seed = 1;
};

/// An (encoder, decoder) pair with its training data.
struct Direction {
  ModuleKey src;
  ModuleKey tgt;
  const Dataset* data = nullptr;

  std::string name() const { return src.str() + "->" + tgt.str(); }
};

struct LossRecord {
  std::size_t step = 0;
  std::string direction;
  double loss = 0.0;
  double lr = 0.0;
  std::size_t tokens = 0;

  nlohmann::json to_json() const;
};

using LossSink = std::function<void(const LossRecord&)>;

struct TrainResult {
  std::vector<LossRecord> log;
  /// Directions whose mean loss over the last window is not below the first.
  std::vector<std::string> non_converged;
  double final_loss(const std::string& direction, std::size_t window = 50) const;
};

/// Round-robin over directions sorted by name; all modules train.
TrainResult train_joint_mt(Registry& registry, std::vector<Direction> directions, const TrainConfig& cfg,
                           const LossSink& sink = {});

enum class AsrMode { kBaseline, kLangSpec };

/// Speech encoder against the same-language text decoder. kLangSpec freezes the decoder.
TrainResult pretrain_asr(Registry& registry, const ModuleKey& speech, const ModuleKey& decoder, const Dataset& data,
                         AsrMode mode, const TrainConfig& cfg, const LossSink& sink = {});

struct CoupleOptions {
  std::optional<AdapterConfig> adapter;
  /// Re-initialise the speech encoder instead of starting from ASR pretraining.
  bool from_scratch = false;
  /// Config used to create the speech encoder when it is absent or re-initialised.
  std::optional<SpeechEncoderConfig> speech_config;
};

/// Freezes the target decoder and trains the speech encoder (plus adapter).
TrainResult couple(Registry& registry, const ModuleKey& speech, const ModuleKey& decoder, const Dataset& data,
                   const CoupleOptions& options, const TrainConfig& cfg, const LossSink& sink = {});

/// Mean teacher-forced loss over a dataset in eval mode.
double evaluate_loss(const Registry& registry, const ModuleKey& src, const ModuleKey& tgt, const Dataset& data,
                     std::size_t max_tokens = 2048);

}  // namespace zslt
