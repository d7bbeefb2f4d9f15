#include "eel/learner.hpp"

#include <cmath>
#include <sstream>

namespace eel {

Mlp::Mlp(std::vector<std::size_t> dims, u64 seed) : dims_(std::move(dims)) {
  if (dims_.size() < 2) throw EngineError("mlp: need at least 2 layer dims");
  for (std::size_t d : dims_)
    if (d == 0) throw EngineError("mlp: layer dims must be positive");

  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    Layer layer;
    layer.in = dims_[l];
    layer.out = dims_[l + 1];
    layer.weights.resize(layer.in * layer.out);
    layer.biases.assign(layer.out, 0.0);
    double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double& w : layer.weights) w = (2.0 * rng.uniform() - 1.0) * bound;
    layers_.push_back(std::move(layer));
  }
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.biases.size();
  return n;
}

std::vector<double> Mlp::forward(
    std::span<const double> input,
    std::vector<std::vector<double>>* activations) const {
  if (input.size() != input_dim())
    throw EngineError("mlp: input dimension mismatch");
  std::vector<double> x(input.begin(), input.end());
  if (activations) activations->push_back(x);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    std::vector<double> y(layer.out);
    for (std::size_t o = 0; o < layer.out; ++o) {
      double acc = layer.biases[o];
      const double* wrow = &layer.weights[o * layer.in];
      for (std::size_t i = 0; i < layer.in; ++i) acc += wrow[i] * x[i];
      y[o] = acc;
    }
    bool hidden = (l + 1 < layers_.size());
    if (hidden)
      for (double& v : y) v = v > 0.0 ? v : 0.0;
    x = std::move(y);
    if (activations) activations->push_back(x);
  }
  return x;
}

std::vector<double> Mlp::predict(std::span<const double> input) const {
  return forward(input, nullptr);
}

double Mlp::loss(const Sample& s) const {
  auto y = predict(s.input);
  if (s.target.size() != y.size())
    throw EngineError("mlp: target dimension mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (!s.mask.empty() && !s.mask[j]) continue;
    double d = y[j] - s.target[j];
    acc += d * d;
  }
  return acc;
}

void Mlp::accumulate_gradient(const Sample& s, std::vector<Layer>& grad,
                              double* loss_out) const {
  std::vector<std::vector<double>> acts;
  auto y = forward(s.input, &acts);
  if (s.target.size() != y.size())
    throw EngineError("mlp: target dimension mismatch");

  std::vector<double> delta(y.size());
  double sample_loss = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    bool active = s.mask.empty() || s.mask[j];
    double d = active ? (y[j] - s.target[j]) : 0.0;
    sample_loss += d * d;
    delta[j] = 2.0 * d;
  }
  if (loss_out) *loss_out += sample_loss;

  for (std::size_t li = layers_.size(); li-- > 0;) {
    const Layer& layer = layers_[li];
    const std::vector<double>& in_act = acts[li];
    std::vector<double> prev_delta(layer.in, 0.0);
    for (std::size_t o = 0; o < layer.out; ++o) {
      double d = delta[o];
      grad[li].biases[o] += d;
      double* grow = &grad[li].weights[o * layer.in];
      const double* wrow = &layer.weights[o * layer.in];
      for (std::size_t i = 0; i < layer.in; ++i) {
        grow[i] += d * in_act[i];
        prev_delta[i] += d * wrow[i];
      }
    }
    if (li > 0) {
      // rectifier derivative at the previous layer's activations
      for (std::size_t i = 0; i < layer.in; ++i)
        if (acts[li][i] <= 0.0) prev_delta[i] = 0.0;
    }
    delta = std::move(prev_delta);
  }
}

double Mlp::train_batch(std::span<const Sample> batch, double learning_rate) {
  if (batch.empty()) throw EngineError("mlp: empty training batch");

  std::vector<Layer> grad(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    grad[l].in = layers_[l].in;
    grad[l].out = layers_[l].out;
    grad[l].weights.assign(layers_[l].weights.size(), 0.0);
    grad[l].biases.assign(layers_[l].biases.size(), 0.0);
  }

  double total_loss = 0.0;
  for (const Sample& s : batch) accumulate_gradient(s, grad, &total_loss);
  double mean_loss = total_loss / static_cast<double>(batch.size());
  if (!std::isfinite(mean_loss))
    throw EngineError("mlp: nonfinite loss, parameters untouched");

  double scale = learning_rate / static_cast<double>(batch.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    for (std::size_t i = 0; i < layers_[l].weights.size(); ++i)
      layers_[l].weights[i] -= scale * grad[l].weights[i];
    for (std::size_t i = 0; i < layers_[l].biases.size(); ++i)
      layers_[l].biases[i] -= scale * grad[l].biases[i];
  }
  return mean_loss;
}

double Mlp::get_parameter(std::size_t i) const {
  for (const auto& l : layers_) {
    if (i < l.weights.size()) return l.weights[i];
    i -= l.weights.size();
    if (i < l.biases.size()) return l.biases[i];
    i -= l.biases.size();
  }
  throw EngineError("mlp: parameter index out of range");
}

void Mlp::set_parameter(std::size_t i, double v) {
  for (auto& l : layers_) {
    if (i < l.weights.size()) {
      l.weights[i] = v;
      return;
    }
    i -= l.weights.size();
    if (i < l.biases.size()) {
      l.biases[i] = v;
      return;
    }
    i -= l.biases.size();
  }
  throw EngineError("mlp: parameter index out of range");
}

double Mlp::gradient_check(const Sample& s, double h) const {
  if (h <= 0.0) throw EngineError("gradient_check: h must be positive");

  std::vector<Layer> grad(layers_.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    grad[l].in = layers_[l].in;
    grad[l].out = layers_[l].out;
    grad[l].weights.assign(layers_[l].weights.size(), 0.0);
    grad[l].biases.assign(layers_[l].biases.size(), 0.0);
  }
  accumulate_gradient(s, grad, nullptr);

  std::vector<double> analytic;
  for (const auto& l : grad) {
    analytic.insert(analytic.end(), l.weights.begin(), l.weights.end());
    analytic.insert(analytic.end(), l.biases.begin(), l.biases.end());
  }

  Mlp probe = *this;
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    double orig = probe.get_parameter(i);
    probe.set_parameter(i, orig + h);
    double up = probe.loss(s);
    probe.set_parameter(i, orig - h);
    double down = probe.loss(s);
    probe.set_parameter(i, orig);
    double numeric = (up - down) / (2.0 * h);
    double denom = std::max(std::abs(analytic[i]) + std::abs(numeric), 1e-8);
    worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
  }
  return worst;
}

std::string Mlp::serialize() const {
  std::ostringstream os;
  os << "mlp";
  for (std::size_t d : dims_) os << ' ' << d;
  os << '\n';
  os << std::hexfloat;
  std::size_t n = parameter_count();
  for (std::size_t i = 0; i < n; ++i) os << get_parameter(i) << '\n';
  return os.str();
}

Mlp Mlp::deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  if (!(is >> tag) || tag != "mlp")
    throw EngineError("mlp checkpoint: bad header");
  std::string rest;
  std::getline(is, rest);
  std::vector<std::size_t> dims;
  std::istringstream ds(rest);
  std::size_t d;
  while (ds >> d) dims.push_back(d);

  Mlp m(dims, 0);
  std::size_t n = m.parameter_count();
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line))
      throw EngineError("mlp checkpoint: truncated parameters");
    m.set_parameter(i, std::strtod(line.c_str(), nullptr));
  }
  return m;
}

}  // namespace eel
