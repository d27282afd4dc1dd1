#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zslt/errors.hpp"

namespace zslt {

using Shape = std::vector<std::size_t>;

std::string shape_str(const Shape& shape);
std::size_t shape_numel(const Shape& shape);

template <typename T>
struct TensorNode {
  Shape shape;
  std::vector<T> data;
  std::vector<T> grad;  // empty until a gradient is first accumulated
  bool requires_grad = false;

  std::vector<T>& ensure_grad() {
    if (grad.empty()) grad.assign(data.size(), T(0));
    return grad;
  }
};

/// Dense row-major tensor. Copies share storage; use clone() for a deep copy.
template <typename T>
class Tensor {
 public:
  using Node = TensorNode<T>;

  Tensor() = default;
  Tensor(Shape shape, std::vector<T> data, bool requires_grad = false);
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, T value, bool requires_grad = false);
  static Tensor scalar(T value, bool requires_grad = false);

  bool defined() const noexcept { return static_cast<bool>(node_); }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t dim(std::size_t axis) const { return node_->shape.at(axis); }
  std::size_t numel() const { return node_->data.size(); }

  std::span<const T> data() const { return node_->data; }
  /// Direct write access, for initialisation and optimiser updates only.
  std::span<T> mutable_data() { return node_->data; }
  T item() const;
  T at(std::size_t row, std::size_t col) const { return node_->data[row * node_->shape.back() + col]; }

  bool requires_grad() const noexcept { return node_ && node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }
  bool has_grad() const noexcept { return node_ && !node_->grad.empty(); }
  std::span<const T> grad() const { return node_->grad; }
  std::span<T> mutable_grad() { return node_->ensure_grad(); }
  void zero_grad();

  Tensor clone() const;
  /// Same values, detached from any tape.
  Tensor detach() const { return Tensor(node_->shape, node_->data, false); }
  bool same_storage(const Tensor& other) const noexcept { return node_ == other.node_; }

  /// Runs reverse-mode accumulation on the active tape, seeding d(self)=1.
  std::size_t backward() const;

  Node* node() const noexcept { return node_.get(); }
  const std::shared_ptr<Node>& shared_node() const noexcept { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

/// Ordered record of differentiable operations. Creation order is a valid
/// topological order, so backward is a single reverse sweep.
template <typename T>
class Tape {
 public:
  using Backward = std::function<void(TensorNode<T>& out)>;

  struct Entry {
    std::shared_ptr<TensorNode<T>> output;
    Backward backward;
    const char* op;
  };

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  void record(std::shared_ptr<TensorNode<T>> output, Backward fn, const char* op) {
    entries_.push_back({std::move(output), std::move(fn), op});
  }

  /// Seeds the gradient of a single-element `root` with 1 and sweeps the tape
  /// in reverse. Returns the number of entries whose backward function ran.
  std::size_t backward(const Tensor<T>& root);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  void clear() { entries_.clear(); }

  /// Tape receiving operations on the calling thread, or nullptr.
  static Tape*& active() {
    thread_local Tape* current = nullptr;
    return current;
  }

 private:
  std::vector<Entry> entries_;
};

/// Makes `tape` the active tape on this thread for the scope's lifetime.
template <typename T>
class TapeScope {
 public:
  explicit TapeScope(Tape<T>& tape) : previous_(Tape<T>::active()) { Tape<T>::active() = &tape; }
  ~TapeScope() { Tape<T>::active() = previous_; }
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape<T>* previous_;
};

/// Enables or disables the post-op finite-value check (on by default).
void set_finite_checks(bool enabled);
bool finite_checks_enabled();

// ---------------------------------------------------------------------------

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> data, bool requires_grad) {
  if (shape_numel(shape) != data.size()) {
    throw DimensionError("tensor data size " + std::to_string(data.size()) + " does not match shape " +
                         shape_str(shape));
  }
  for (auto d : shape) {
    if (d == 0) throw DimensionError("tensor dimensions must be positive, got " + shape_str(shape));
  }
  node_ = std::make_shared<Node>();
  node_->shape = std::move(shape);
  node_->data = std::move(data);
  node_->requires_grad = requires_grad;
}

template <typename T>
Tensor<T> Tensor<T>::zeros(Shape shape, bool requires_grad) {
  return full(std::move(shape), T(0), requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::full(Shape shape, T value, bool requires_grad) {
  const auto n = shape_numel(shape);
  return Tensor(std::move(shape), std::vector<T>(n, value), requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::scalar(T value, bool requires_grad) {
  return Tensor(Shape{1}, std::vector<T>{value}, requires_grad);
}

template <typename T>
T Tensor<T>::item() const {
  if (numel() != 1) throw DimensionError("item() on tensor of shape " + shape_str(shape()));
  return node_->data[0];
}

template <typename T>
void Tensor<T>::zero_grad() {
  if (!node_->grad.empty()) std::fill(node_->grad.begin(), node_->grad.end(), T(0));
}

template <typename T>
Tensor<T> Tensor<T>::clone() const {
  Tensor out(node_->shape, node_->data, node_->requires_grad);
  out.node_->grad = node_->grad;
  return out;
}

template <typename T>
std::size_t Tensor<T>::backward() const {
  auto* tape = Tape<T>::active();
  if (tape == nullptr) throw ConfigError("backward() called with no active tape");
  return tape->backward(*this);
}

template <typename T>
std::size_t Tape<T>::backward(const Tensor<T>& root) {
  if (root.numel() != 1) {
    throw DimensionError("backward root must have one element, got shape " + shape_str(root.shape()));
  }
  root.node()->ensure_grad()[0] += T(1);
  std::size_t visited = 0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->output->grad.empty()) continue;
    it->backward(*it->output);
    ++visited;
  }
  return visited;
}

}  // namespace zslt
