#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zslt/random.hpp"
#include "zslt/tensor.hpp"

// Differentiable operations. Each op records a backward closure on the active
// tape when any input requires a gradient; with no active tape they are plain
// forward computations.
namespace zslt::ops {

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
Tensor<T> sub(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
Tensor<T> mul(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
Tensor<T> scale(const Tensor<T>& a, T factor);
template <typename T>
Tensor<T> relu(const Tensor<T>& a);

/// [m x k] * [k x n] -> [m x n]
template <typename T>
Tensor<T> matmul(const Tensor<T>& a, const Tensor<T>& b);

/// x[n x in] * weight[in x out] + bias[out]. `bias` may be undefined.
template <typename T>
Tensor<T> linear(const Tensor<T>& x, const Tensor<T>& weight, const Tensor<T>& bias);

template <typename T>
Tensor<T> softmax(const Tensor<T>& x, std::size_t axis);

template <typename T>
Tensor<T> layer_norm(const Tensor<T>& x, const Tensor<T>& gain, const Tensor<T>& bias, T eps = T(1e-5));

/// Rows of `table` [V x d] selected by `ids` -> [ids.size() x d].
template <typename T>
Tensor<T> embedding_lookup(const Tensor<T>& table, std::span<const std::int32_t> ids);

template <typename T>
Tensor<T> reshape(const Tensor<T>& x, Shape shape);
template <typename T>
Tensor<T> transpose(const Tensor<T>& x, std::size_t axis0, std::size_t axis1);
template <typename T>
Tensor<T> concat(std::span<const Tensor<T>> parts, std::size_t axis);
/// Elements [begin, end) along `axis`.
template <typename T>
Tensor<T> slice(const Tensor<T>& x, std::size_t axis, std::size_t begin, std::size_t end);

template <typename T>
Tensor<T> sum(const Tensor<T>& x);
template <typename T>
Tensor<T> mean(const Tensor<T>& x);
/// Reduces `axis` away.
template <typename T>
Tensor<T> sum(const Tensor<T>& x, std::size_t axis);
template <typename T>
Tensor<T> mean(const Tensor<T>& x, std::size_t axis);

/// Mean token cross-entropy of logits [N x V] against `targets`.
/// With label_smoothing > 0 the target distribution is (1-e)*onehot + e/V.
template <typename T>
Tensor<T> cross_entropy_from_logits(const Tensor<T>& logits, std::span<const std::int32_t> targets,
                                    T label_smoothing = T(0));

/// Inverted dropout with an explicit seeded mask; identity when !training or rate == 0.
template <typename T>
Tensor<T> dropout(const Tensor<T>& x, double rate, Rng& rng, bool training);

/// Cross-correlation of x[C_in x H x W] with kernels[C_out x C_in x kh x kw].
/// `bias` [C_out] may be undefined.
template <typename T>
Tensor<T> conv2d(const Tensor<T>& x, const Tensor<T>& kernels, const Tensor<T>& bias, std::size_t stride,
                 std::size_t padding);

std::size_t conv_out_len(std::size_t in, std::size_t kernel, std::size_t stride, std::size_t padding);

// ---------------------------------------------------------------------------
// Attention

enum class AttentionBiasKind { kNone, kLogDistance };

/// Additive pre-softmax score term for query position i and key position j.
double attention_bias(AttentionBiasKind kind, std::size_t i, std::size_t j);

/// Layout of packed variable-length sequences: segment s owns rows
/// [sum(q_lengths[:s]), ...+q_lengths[s]) of the query matrix, and likewise
/// for keys/values.
struct AttentionLayout {
  std::size_t n_heads = 1;
  std::vector<std::size_t> q_lengths;
  std::vector<std::size_t> k_lengths;
  bool causal = false;  // query i may attend only to keys j <= i
  AttentionBiasKind bias = AttentionBiasKind::kNone;
  /// Optional explicit mask for a single segment, row-major T_q x T_k, nonzero = allowed.
  std::optional<std::vector<std::uint8_t>> mask;
};

/// Scaled dot-product attention per head over packed segments.
/// q [Nq x d], k and v [Nk x d] -> [Nq x d] (heads concatenated, unprojected).
template <typename T>
Tensor<T> attention(const Tensor<T>& q, const Tensor<T>& k, const Tensor<T>& v, const AttentionLayout& layout);

/// Attention probabilities for inspection: one [T_q x T_k] row-major block per
/// (segment, head), ordered segment-major.
template <typename T>
std::vector<std::vector<T>> attention_weights(const Tensor<T>& q, const Tensor<T>& k,
                                              const AttentionLayout& layout);

}  // namespace zslt::ops
