#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>

#include "zslt/batch.hpp"
#include "zslt/nn.hpp"
#include "zslt/tensor_io.hpp"

namespace zslt {

enum class Modality { kText, kSpeech };
enum class Role { kEncoder, kDecoder };

std::string to_string(Modality m);
std::string to_string(Role r);

/// (language, modality, role), written "en.speech.encoder".
struct ModuleKey {
  std::string lang;
  Modality modality = Modality::kText;
  Role role = Role::kEncoder;

  std::string str() const;
  static ModuleKey parse(std::string_view text);
  auto operator<=>(const ModuleKey&) const = default;
};

/// A language-specific encoder or decoder with its own parameter store.
class LangModule {
 public:
  virtual ~LangModule() = default;
  virtual std::string kind() const = 0;
  virtual nlohmann::json config_json() const = 0;
  virtual nn::ParamMap<float> parameters() const = 0;
  virtual std::size_t d_model() const = 0;

  std::size_t param_count() const { return nn::count_params(parameters()); }
  /// Copies values from `tensors`; names and shapes must match exactly.
  void load_parameters(const io::NamedTensors& tensors);
  io::NamedTensors export_parameters() const;
  void set_trainable(bool trainable);
};

class EncoderModule : public LangModule {
 public:
  virtual Modality modality() const = 0;
  virtual nn::Packed<float> encode(const SourceBatch& batch, const nn::ForwardContext& ctx) const = 0;
};

struct TextModelConfig {
  nn::TransformerConfig transformer;
  std::size_t vocab_size = 0;

  void validate() const;
  nlohmann::json to_json() const;
  static TextModelConfig from_json(const nlohmann::json& j);
};

/// Token embedding (scaled by sqrt(d)) + sinusoidal positions + encoder stack.
class TextEncoder : public EncoderModule {
 public:
  TextEncoder(const TextModelConfig& cfg, std::uint64_t seed);

  std::string kind() const override { return "text_encoder"; }
  nlohmann::json config_json() const override { return cfg_.to_json(); }
  nn::ParamMap<float> parameters() const override;
  std::size_t d_model() const override { return cfg_.transformer.d_model; }
  Modality modality() const override { return Modality::kText; }
  nn::Packed<float> encode(const SourceBatch& batch, const nn::ForwardContext& ctx) const override;

  const TextModelConfig& config() const { return cfg_; }
  static std::size_t param_count_for(const TextModelConfig& cfg);

  Tensor<float> embedding;
  nn::EncoderStack<float> stack;

 private:
  TextModelConfig cfg_;
};

/// Causal decoder with cross-attention and an (unshared) output projection.
class TextDecoder : public LangModule {
 public:
  TextDecoder(const TextModelConfig& cfg, std::uint64_t seed);

  std::string kind() const override { return "text_decoder"; }
  nlohmann::json config_json() const override { return cfg_.to_json(); }
  nn::ParamMap<float> parameters() const override;
  std::size_t d_model() const override { return cfg_.transformer.d_model; }

  /// prefix rows start with BOS; returns logits [total prefix tokens x V].
  Tensor<float> logits(const TokenBatch& prefix, const nn::Packed<float>& memory, const nn::ForwardContext& ctx) const;
  /// Teacher-forced mean cross-entropy of `targets` (EOS appended, BOS fed).
  Tensor<float> loss(const std::vector<std::vector<std::int32_t>>& targets, const nn::Packed<float>& memory,
                     const nn::ForwardContext& ctx, float label_smoothing = 0.0f) const;
  /// Argmax decoding from BOS until every row emitted EOS or max_len tokens.
  std::vector<std::vector<std::int32_t>> greedy(const nn::Packed<float>& memory, std::size_t max_len) const;

  const TextModelConfig& config() const { return cfg_; }
  static std::size_t param_count_for(const TextModelConfig& cfg);

  Tensor<float> embedding;
  nn::DecoderStack<float> stack;
  nn::Linear<float> output;

 private:
  TextModelConfig cfg_;
};

/// Build teacher-forcing inputs: BOS + y as the prefix, y + EOS as targets.
TokenBatch decoder_prefix(const std::vector<std::vector<std::int32_t>>& targets);
std::vector<std::int32_t> decoder_targets(const std::vector<std::vector<std::int32_t>>& targets);

/// Checksum over names and raw bytes of a module's parameters.
std::uint64_t parameter_checksum(const LangModule& m);

}  // namespace zslt
