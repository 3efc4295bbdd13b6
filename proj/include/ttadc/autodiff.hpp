#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ttadc/tensor.hpp"

// Minimal reverse-mode tape. Ops evaluate eagerly through the kernels and
// register a backward rule; node creation order is a topological order, so
// backward is a single reverse sweep that visits each node once. Gradients
// accumulate until zero_grads() is called.
namespace ttadc::ad {

class Graph;

namespace detail {
struct Node {
  Tensor value;
  Tensor grad;  // zero-initialized accumulator, same shape as value
  std::function<void(Node&)> backward;
  std::size_t index = 0;
};
}  // namespace detail

class Var {
 public:
  Var() = default;
  const Tensor& value() const { return node_->value; }
  const Tensor& grad() const { return node_->grad; }
  bool valid() const { return node_ != nullptr; }

 private:
  friend class Graph;
  friend detail::Node* unwrap(const Var&);
  explicit Var(detail::Node* n) : node_(n) {}
  detail::Node* node_ = nullptr;
};

class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Differentiable leaf (a parameter or an input we want gradients for).
  Var input(Tensor t);
  // Leaf treated as data; gradients still accumulate but carry no meaning.
  Var constant(Tensor t) { return input(std::move(t)); }
  Var constant(double v) { return input(Tensor::scalar(v)); }

  // Seeds d(root)/d(root) = 1 and sweeps the tape in reverse creation
  // order. root must be scalar. Repeated calls accumulate.
  void backward(const Var& root);

  void zero_grads();

  std::size_t size() const { return nodes_.size(); }

 private:
  friend Var make_node(Graph& g, Tensor value,
                       std::function<void(detail::Node&)> backward);
  std::vector<std::unique_ptr<detail::Node>> nodes_;
};

// Elementwise binary ops; operands must have equal shapes, except that a
// size-1 operand broadcasts against any shape.
Var add(Graph& g, const Var& a, const Var& b);
Var sub(Graph& g, const Var& a, const Var& b);
Var mul(Graph& g, const Var& a, const Var& b);
Var div(Graph& g, const Var& a, const Var& b);

// Scalar-constant variants (the constant is folded, not a node).
Var add(Graph& g, const Var& a, double c);
Var mul(Graph& g, const Var& a, double c);

// 2-D matmul; 1-D operands are treated as a single row/column.
Var matmul(Graph& g, const Var& a, const Var& b);

Var sigmoid(Graph& g, const Var& x);
Var log(Graph& g, const Var& x);  // requires strictly positive input
Var exp(Graph& g, const Var& x);
Var softplus(Graph& g, const Var& x);
Var relu(Graph& g, const Var& x);
Var tanh(Graph& g, const Var& x);

Var sum(Graph& g, const Var& x);
Var mean(Graph& g, const Var& x);
Var softmax(Graph& g, const Var& x);  // 1-D only
Var dot(Graph& g, const Var& a, const Var& b);
Var l2_norm(Graph& g, const Var& x);
Var concat(Graph& g, std::span<const Var> parts);  // 1-D only

}  // namespace ttadc::ad
