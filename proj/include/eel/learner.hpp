#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eel/common.hpp"

namespace eel {

/// One training sample. When `mask` is nonempty it selects the output units
/// that contribute to the loss (Q-learning trains the taken action only).
struct Sample {
  std::vector<double> input;
  std::vector<double> target;
  std::vector<std::uint8_t> mask;  // empty = all outputs
};

/// Plain feed-forward network: rectifier hidden layers, identity output,
/// trained by minibatch SGD on (masked) squared error.
class Mlp {
 public:
  Mlp(std::vector<std::size_t> dims, u64 seed);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t input_dim() const { return dims_.front(); }
  std::size_t output_dim() const { return dims_.back(); }
  std::size_t parameter_count() const;

  std::vector<double> predict(std::span<const double> input) const;

  // One SGD step on the mean sample loss over the batch. Returns the
  // pre-step loss. Throws on a nonfinite loss, leaving parameters untouched.
  double train_batch(std::span<const Sample> batch, double learning_rate);

  double loss(const Sample& s) const;

  // Max relative error between analytic and central-finite-difference
  // gradients over every parameter.
  double gradient_check(const Sample& s, double h) const;

  // Text checkpoint: dims header plus one parameter per line (hex floats,
  // round-trips bit-exactly).
  std::string serialize() const;
  static Mlp deserialize(const std::string& text);

  // Flat parameter access, used by the checkpoint and the gradient check.
  double get_parameter(std::size_t i) const;
  void set_parameter(std::size_t i, double v);

 private:
  struct Layer {
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> biases;   // out
    std::size_t in = 0, out = 0;
  };

  std::vector<double> forward(std::span<const double> input,
                              std::vector<std::vector<double>>* activations) const;
  void accumulate_gradient(const Sample& s, std::vector<Layer>& grad,
                           double* loss_out) const;

  std::vector<std::size_t> dims_;
  std::vector<Layer> layers_;
};

/// Fixed-capacity ring buffer with oldest-first eviction and uniform
/// with-replacement sampling.
template <typename T>
class ExperiencePool {
 public:
  explicit ExperiencePool(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw EngineError("experience pool capacity must be > 0");
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

  void push(T entry) {
    if (entries_.size() < capacity_) {
      entries_.push_back(std::move(entry));
    } else {
      entries_[head_] = std::move(entry);
      head_ = (head_ + 1) % capacity_;
    }
  }

  std::vector<T> sample(std::size_t k, Rng& rng) const {
    if (entries_.empty()) throw EngineError("cannot sample from empty pool");
    std::vector<T> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
      out.push_back(entries_[rng.below(entries_.size())]);
    return out;
  }

  const std::vector<T>& entries() const { return entries_; }

 private:
  std::vector<T> entries_;
  std::size_t capacity_;
  std::size_t head_ = 0;  // next eviction slot once full
};

/// RL transition stored in the pool D.
struct Experience {
  std::vector<double> state;
  std::size_t action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
};

}  // namespace eel
