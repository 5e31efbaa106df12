#pragma once

#include "prmatte/tensor.hpp"

#include <functional>
#include <vector>

namespace prmatte {

struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode tape over Tensors. A tape lives for one forward/backward
// cycle; parameters are bound per pass and their gradients harvested by
// backward().
class Tape {
 public:
  struct Node {
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    bool grad_alloc = false;
    std::function<void()> backward;
  };

  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}

  bool grad_enabled() const { return grad_enabled_; }

  Var constant(Tensor v) { return push(std::move(v), false); }
  Var input(Tensor v, bool requires_grad) { return push(std::move(v), requires_grad && grad_enabled_); }

  // Binds external parameter storage; backward() adds the node gradient
  // into *grad_sink.
  Var bind(const Tensor& value, Tensor* grad_sink);

  const Tensor& val(Var v) const { return nodes_[size_t(v.id)].value; }
  const Tensor& grad_of(Var v) const { return nodes_[size_t(v.id)].grad; }
  bool requires_grad(Var v) const { return nodes_[size_t(v.id)].requires_grad; }

  // Root must be a single-element tensor.
  void backward(Var root);

  // Activation-pattern fingerprint (ReLU / clamp decisions); used by the
  // finite-difference checks to reject perturbations that cross a kink.
  void track_pattern(bool on) {
    pattern_on_ = on;
    pattern_ = 1469598103934665603ULL;
  }
  uint64_t pattern() const { return pattern_; }
  void pattern_feed(bool bit) {
    if (pattern_on_) pattern_ = (pattern_ ^ (bit ? 0x9eULL : 0x31ULL)) * 1099511628211ULL;
  }
  bool pattern_tracking() const { return pattern_on_; }

  // op helpers
  Var push(Tensor value, bool requires_grad, std::function<void()> backward = nullptr);
  Tensor& ensure_grad(Var v);
  Node& node(Var v) { return nodes_[size_t(v.id)]; }

 private:
  std::vector<Node> nodes_;
  std::vector<std::pair<int, Tensor*>> bindings_;
  bool grad_enabled_ = true;
  bool pattern_on_ = false;
  uint64_t pattern_ = 0;
};

// --- differentiable ops ----------------------------------------------------

Var conv2d(Tape& t, Var x, Var w, Var b, const ConvSpec& spec);
Var group_norm(Tape& t, Var x, Var gamma, Var beta, int groups, double eps = 1e-5);
Var relu(Tape& t, Var x);
Var clamp01(Tape& t, Var x);
Var resize_bl(Tape& t, Var x, int oh, int ow);
Var blur5_op(Tape& t, Var x, bool horizontal);
Var downsample2_op(Tape& t, Var x);
Var concat_channels(Tape& t, const std::vector<Var>& xs);
Var add(Tape& t, Var a, Var b);
Var sub(Tape& t, Var a, Var b);
Var mul(Tape& t, Var a, Var b);
Var mul_const(Tape& t, Var x, Tensor k);
Var add_const(Tape& t, Var x, Tensor k);
Var scale(Tape& t, Var x, double s);
Var abs_op(Tape& t, Var x);
Var sum_all(Tape& t, Var x);

inline Var gauss_blur5(Tape& t, Var x) { return blur5_op(t, blur5_op(t, x, true), false); }

}  // namespace prmatte
