#pragma once

#include <optional>

#include "zslt/adapter.hpp"
#include "zslt/models.hpp"

namespace zslt {

/// Shortest input that survives three stride-2 halvings.
inline constexpr std::size_t kMinSpeechFrames = 8;

struct ConvStackConfig {
  std::size_t n_layers = 3;
  std::size_t channels = 16;
  std::size_t kernel = 3;
  std::size_t stride = 2;
  std::size_t padding = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static ConvStackConfig from_json(const nlohmann::json& j);
  /// ceil(ceil(ceil(n/2)/2)/2) for the fixed stack; applies to time and mel axes.
  std::size_t out_len(std::size_t n) const;
};

struct SpeechEncoderConfig {
  nn::TransformerConfig transformer;
  std::size_t n_mels = 8;
  ConvStackConfig conv;
  std::optional<AdapterConfig> adapter;

  void validate() const;
  nlohmann::json to_json() const;
  static SpeechEncoderConfig from_json(const nlohmann::json& j);
};

/// Conv stack -> linear projection -> positions -> Transformer layers with
/// the log-distance self-attention bias -> final norm -> optional adapter.
class SpeechEncoder : public EncoderModule {
 public:
  SpeechEncoder(const SpeechEncoderConfig& cfg, std::uint64_t seed);

  std::string kind() const override { return "speech_encoder"; }
  nlohmann::json config_json() const override { return cfg_.to_json(); }
  nn::ParamMap<float> parameters() const override;
  std::size_t d_model() const override { return cfg_.transformer.d_model; }
  Modality modality() const override { return Modality::kSpeech; }
  nn::Packed<float> encode(const SourceBatch& batch, const nn::ForwardContext& ctx) const override;

  /// Conv features [T' x C*M'] of one utterance, before the projection.
  Tensor<float> conv_downsample(const SpectrogramFeatures& features) const;
  /// Encoder output up to and including the final layer norm (no adapter).
  nn::Packed<float> encode_base(const SpeechBatch& batch, const nn::ForwardContext& ctx) const;

  /// Attaches an adapter initialised from `seed`; throws if one exists.
  void attach_adapter(const AdapterConfig& cfg, std::uint64_t seed);
  bool has_adapter() const { return adapter.has_value(); }

  const SpeechEncoderConfig& config() const { return cfg_; }
  static std::size_t param_count_for(const SpeechEncoderConfig& cfg);

  std::vector<Tensor<float>> conv_kernels;
  std::vector<Tensor<float>> conv_biases;
  nn::Linear<float> projection;
  nn::EncoderStack<float> stack;
  std::optional<Adapter<float>> adapter;

 private:
  SpeechEncoderConfig cfg_;
};

/// Ratio of downsampled speech length to target subword length.
struct LengthRatioReport {
  std::size_t pairs = 0;
  std::size_t skipped_pairs = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;

  nlohmann::json to_json() const;
};

/// `frames[i]` raw frame counts, `tokens[i]` target lengths. Pairs with an
/// empty target are skipped and counted.
LengthRatioReport length_ratio_report(const std::vector<std::size_t>& frames, const std::vector<std::size_t>& tokens,
                                      const ConvStackConfig& conv = {});

}  // namespace zslt
