#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "zslt/ops.hpp"

namespace zslt::nn {

template <typename T>
using ParamMap = std::map<std::string, Tensor<T>>;

template <typename T>
std::size_t count_params(const ParamMap<T>& params) {
  std::size_t n = 0;
  for (const auto& [name, t] : params) n += t.numel();
  return n;
}

struct TransformerConfig {
  std::size_t d_model = 64;
  std::size_t n_heads = 4;
  std::size_t n_layers = 2;
  std::size_t d_ff = 128;
  double dropout = 0.1;
  bool final_layer_norm = true;

  void validate() const;
  nlohmann::json to_json() const;
  static TransformerConfig from_json(const nlohmann::json& j);
  bool operator==(const TransformerConfig&) const = default;
};

/// Training flag plus the dropout mask source. rng may be null when !training.
struct ForwardContext {
  bool training = false;
  Rng* rng = nullptr;
};

/// Variable-length sequences stored back to back: rows of `states` belong to
/// sequence 0, then 1, and so on.
template <typename T>
struct Packed {
  Tensor<T> states;
  std::vector<std::size_t> lengths;
};

/// Glorot-uniform matrix [fan_in x fan_out].
template <typename T>
Tensor<T> glorot(std::size_t fan_in, std::size_t fan_out, Rng& rng, Shape shape = {});

template <typename T>
class Linear {
 public:
  Linear() = default;
  Linear(std::size_t in, std::size_t out, Rng& rng, bool with_bias = true);
  Tensor<T> forward(const Tensor<T>& x) const { return ops::linear(x, weight, bias); }
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  Tensor<T> weight;
  Tensor<T> bias;
};

template <typename T>
class LayerNorm {
 public:
  LayerNorm() = default;
  explicit LayerNorm(std::size_t d);
  Tensor<T> forward(const Tensor<T>& x) const { return ops::layer_norm(x, gain, bias, T(1e-5)); }
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  Tensor<T> gain;
  Tensor<T> bias;
};

template <typename T>
class MultiHeadAttention {
 public:
  MultiHeadAttention() = default;
  MultiHeadAttention(std::size_t d_model, std::size_t n_heads, Rng& rng);

  /// query [Nq x d], memory [Nk x d] packed per `layout`.
  Tensor<T> forward(const Tensor<T>& query, const Tensor<T>& memory, const ops::AttentionLayout& layout) const;
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  std::size_t n_heads = 1;
  Linear<T> q, k, v, o;
};

template <typename T>
class FeedForward {
 public:
  FeedForward() = default;
  FeedForward(std::size_t d_model, std::size_t d_ff, Rng& rng);
  Tensor<T> forward(const Tensor<T>& x) const { return down.forward(ops::relu(up.forward(x))); }
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  Linear<T> up, down;
};

/// Post-norm encoder layer: LN(x + SelfAttn(x)), LN(x + FF(x)).
template <typename T>
class EncoderLayer {
 public:
  EncoderLayer() = default;
  EncoderLayer(const TransformerConfig& cfg, Rng& rng);
  Tensor<T> forward(const Tensor<T>& x, const std::vector<std::size_t>& lengths, ops::AttentionBiasKind bias,
                    const ForwardContext& ctx) const;
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  double dropout = 0.0;
  MultiHeadAttention<T> self_attn;
  LayerNorm<T> norm1;
  FeedForward<T> ff;
  LayerNorm<T> norm2;
};

/// Per-layer key/value state for incremental decoding of a batch in lockstep.
template <typename T>
struct DecoderCache {
  std::size_t batch = 0;
  std::size_t steps = 0;
  // Self-attention keys/values per layer, sequence-major [batch][steps][d].
  std::vector<std::vector<T>> self_k, self_v;
  // Projected encoder memory per layer.
  std::vector<Tensor<T>> cross_k, cross_v;
};

/// Post-norm decoder layer: causal self-attention, cross-attention, feed-forward.
template <typename T>
class DecoderLayer {
 public:
  DecoderLayer() = default;
  DecoderLayer(const TransformerConfig& cfg, Rng& rng);
  Tensor<T> forward(const Tensor<T>& x, const std::vector<std::size_t>& lengths, const Packed<T>& memory,
                    const ForwardContext& ctx) const;
  /// One decoding position for every sequence; x is [batch x d]. Inference only.
  Tensor<T> step(const Tensor<T>& x, const Packed<T>& memory, std::size_t layer_index, DecoderCache<T>& cache) const;
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  double dropout = 0.0;
  MultiHeadAttention<T> self_attn;
  LayerNorm<T> norm1;
  MultiHeadAttention<T> cross_attn;
  LayerNorm<T> norm2;
  FeedForward<T> ff;
  LayerNorm<T> norm3;
};

/// n_layers encoder layers followed by one final layer norm.
template <typename T>
class EncoderStack {
 public:
  EncoderStack() = default;
  EncoderStack(const TransformerConfig& cfg, Rng& rng);
  Packed<T> forward(Packed<T> x, ops::AttentionBiasKind bias, const ForwardContext& ctx) const;
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  std::vector<EncoderLayer<T>> layers;
  LayerNorm<T> final_norm;
};

template <typename T>
class DecoderStack {
 public:
  DecoderStack() = default;
  DecoderStack(const TransformerConfig& cfg, Rng& rng);
  Tensor<T> forward(const Packed<T>& x, const Packed<T>& memory, const ForwardContext& ctx) const;
  DecoderCache<T> start(const Packed<T>& memory) const;
  /// Equivalent to the last row per sequence of forward() over the whole prefix.
  Tensor<T> step(const Tensor<T>& x, const Packed<T>& memory, DecoderCache<T>& cache) const;
  void collect(const std::string& prefix, ParamMap<T>& out) const;

  std::vector<DecoderLayer<T>> layers;
  LayerNorm<T> final_norm;
};

/// Standard sine/cosine table [length x d_model]: even columns sin, odd cos.
template <typename T>
Tensor<T> sinusoidal_positions(std::size_t length, std::size_t d_model);

/// Position table for packed sequences (each sequence restarts at position 0).
template <typename T>
Tensor<T> packed_positions(const std::vector<std::size_t>& lengths, std::size_t d_model);

// Closed-form parameter counts, used for accounting without allocation.
std::size_t linear_param_count(std::size_t in, std::size_t out, bool with_bias = true);
std::size_t encoder_stack_param_count(const TransformerConfig& cfg);
std::size_t decoder_stack_param_count(const TransformerConfig& cfg);

}  // namespace zslt::nn
