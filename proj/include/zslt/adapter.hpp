#pragma once

#include "zslt/nn.hpp"

namespace zslt {

struct AdapterConfig {
  std::size_t d_model = 64;
  std::size_t d_proj = 128;
  /// Zero down-projection so a fresh adapter is the identity map.
  bool zero_init = true;

  void validate() const;
  nlohmann::json to_json() const;
  static AdapterConfig from_json(const nlohmann::json& j);
  bool operator==(const AdapterConfig&) const = default;
};

/// Bridging block after the speech encoder:
///   out = h + W2 * relu(W1 * LayerNorm(h) + b1) + b2
/// The projection widens to d_proj and comes back to d_model.
template <typename T>
class Adapter {
 public:
  Adapter() = default;
  Adapter(const AdapterConfig& cfg, Rng& rng);

  Tensor<T> forward(const Tensor<T>& h) const;
  /// The residual branch alone: forward(h) == h + branch(h).
  Tensor<T> branch(const Tensor<T>& h) const;
  void collect(const std::string& prefix, nn::ParamMap<T>& out) const;

  const AdapterConfig& config() const { return cfg_; }

  /// 2*d_model*d_proj + d_proj + d_model + 2*d_model.
  static std::size_t param_count(const AdapterConfig& cfg);

  nn::LayerNorm<T> norm;
  nn::Linear<T> up;
  nn::Linear<T> down;

 private:
  AdapterConfig cfg_;
};

/// Freshly initialised adapter parameters for (config, seed).
template <typename T>
Adapter<T> adapter_init(const AdapterConfig& cfg, std::uint64_t seed);

}  // namespace zslt
