#include "ttadc/autodiff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ttadc/kernels.hpp"

namespace ttadc::ad {

namespace {
using detail::Node;
}

detail::Node* unwrap(const Var& v) { return v.node_; }

Var make_node(Graph& g, Tensor value, std::function<void(Node&)> backward) {
  auto node = std::make_unique<Node>();
  node->grad = Tensor::zeros_like(value);
  node->value = std::move(value);
  node->backward = std::move(backward);
  node->index = g.nodes_.size();
  Node* raw = node.get();
  g.nodes_.push_back(std::move(node));
  return Var(raw);
}

Var Graph::input(Tensor t) { return make_node(*this, std::move(t), nullptr); }

void Graph::backward(const Var& root) {
  Node* r = unwrap(root);
  if (r == nullptr) throw std::invalid_argument("backward: empty var");
  if (!r->value.is_scalar()) {
    throw std::invalid_argument("backward: root must be scalar, got shape " +
                                r->value.shape_str());
  }
  r->grad[0] += 1.0;
  for (std::size_t i = r->index + 1; i-- > 0;) {
    Node& n = *nodes_[i];
    if (n.backward) n.backward(n);
  }
}

void Graph::zero_grads() {
  for (auto& n : nodes_) {
    std::fill(n->grad.values().begin(), n->grad.values().end(), 0.0);
  }
}

namespace {

// Shared accumulation for elementwise binaries with optional size-1
// broadcast on either operand.
enum class Bin { Add, Sub, Mul, Div };

void check_binary_shapes(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b) && a.size() != 1 && b.size() != 1) {
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_str() +
                     " vs " + b.shape_str());
  }
}

Var binary(Graph& g, const Var& va, const Var& vb, Bin op, const char* name) {
  Node* a = unwrap(va);
  Node* b = unwrap(vb);
  const Tensor& ta = a->value;
  const Tensor& tb = b->value;
  check_binary_shapes(ta, tb, name);

  const bool a_scalar = ta.size() == 1 && tb.size() != 1;
  const bool b_scalar = tb.size() == 1 && ta.size() != 1;
  Tensor out(a_scalar ? tb.shape() : ta.shape());
  const std::size_t n = out.size();

  if (!a_scalar && !b_scalar) {
    switch (op) {
      case Bin::Add: kernels::add(ta.data(), tb.data(), out.data(), n); break;
      case Bin::Sub: kernels::sub(ta.data(), tb.data(), out.data(), n); break;
      case Bin::Mul: kernels::mul(ta.data(), tb.data(), out.data(), n); break;
      case Bin::Div: kernels::div(ta.data(), tb.data(), out.data(), n); break;
    }
  } else {
    const double s = a_scalar ? ta[0] : tb[0];
    const Tensor& full = a_scalar ? tb : ta;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = a_scalar ? s : full[i];
      const double y = a_scalar ? full[i] : s;
      switch (op) {
        case Bin::Add: out[i] = x + y; break;
        case Bin::Sub: out[i] = x - y; break;
        case Bin::Mul: out[i] = x * y; break;
        case Bin::Div: out[i] = x / y; break;
      }
    }
  }

  return make_node(g, std::move(out), [a, b, op, a_scalar, b_scalar](Node& self) {
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double gr = self.grad[i];
      const double xa = a->value[a_scalar ? 0 : i];
      const double xb = b->value[b_scalar ? 0 : i];
      double da = 0.0;
      double db = 0.0;
      switch (op) {
        case Bin::Add: da = gr; db = gr; break;
        case Bin::Sub: da = gr; db = -gr; break;
        case Bin::Mul: da = gr * xb; db = gr * xa; break;
        case Bin::Div:
          da = gr / xb;
          db = -gr * xa / (xb * xb);
          break;
      }
      a->grad[a_scalar ? 0 : i] += da;
      b->grad[b_scalar ? 0 : i] += db;
    }
  });
}

using UnaryKernel = void (*)(const double*, double*, std::size_t);

Var unary(Graph& g, const Var& vx, UnaryKernel fwd,
          double (*dfdx)(double x, double y)) {
  Node* x = unwrap(vx);
  Tensor out(x->value.shape());
  fwd(x->value.data(), out.data(), out.size());
  return make_node(g, std::move(out), [x, dfdx](Node& self) {
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) {
      x->grad[i] += self.grad[i] * dfdx(x->value[i], self.value[i]);
    }
  });
}

}  // namespace

Var add(Graph& g, const Var& a, const Var& b) { return binary(g, a, b, Bin::Add, "add"); }
Var sub(Graph& g, const Var& a, const Var& b) { return binary(g, a, b, Bin::Sub, "sub"); }
Var mul(Graph& g, const Var& a, const Var& b) { return binary(g, a, b, Bin::Mul, "mul"); }
Var div(Graph& g, const Var& a, const Var& b) { return binary(g, a, b, Bin::Div, "div"); }

Var add(Graph& g, const Var& a, double c) {
  Node* x = unwrap(a);
  Tensor out = x->value;
  for (auto& v : out.values()) v += c;
  return make_node(g, std::move(out), [x](Node& self) {
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) x->grad[i] += self.grad[i];
  });
}

Var mul(Graph& g, const Var& a, double c) {
  Node* x = unwrap(a);
  Tensor out = x->value;
  for (auto& v : out.values()) v *= c;
  return make_node(g, std::move(out), [x, c](Node& self) {
    const std::size_t n = self.value.size();
    for (std::size_t i = 0; i < n; ++i) x->grad[i] += self.grad[i] * c;
  });
}

Var matmul(Graph& g, const Var& va, const Var& vb) {
  Node* a = unwrap(va);
  Node* b = unwrap(vb);
  const Tensor& ta = a->value;
  const Tensor& tb = b->value;
  if (ta.rank() > 2 || tb.rank() > 2 || ta.rank() == 0 || tb.rank() == 0) {
    throw ShapeError("matmul: expects 1-D or 2-D operands, got " +
                     ta.shape_str() + " and " + tb.shape_str());
  }
  // 1-D lhs is a row vector, 1-D rhs is a column vector.
  const std::size_t m = ta.rank() == 2 ? ta.shape()[0] : 1;
  const std::size_t ka = ta.rank() == 2 ? ta.shape()[1] : ta.shape()[0];
  const std::size_t kb = tb.rank() == 2 ? tb.shape()[0] : tb.shape()[0];
  const std::size_t n = tb.rank() == 2 ? tb.shape()[1] : 1;
  if (ka != kb) {
    throw ShapeError("matmul: inner dimensions disagree, " + ta.shape_str() +
                     " vs " + tb.shape_str());
  }
  const std::size_t k = ka;

  std::vector<std::size_t> out_shape;
  if (ta.rank() == 2 && tb.rank() == 2) {
    out_shape = {m, n};
  } else if (ta.rank() == 1 && tb.rank() == 2) {
    out_shape = {n};
  } else if (ta.rank() == 2 && tb.rank() == 1) {
    out_shape = {m};
  } else {
    throw ShapeError("matmul: use dot for two 1-D operands");
  }

  Tensor out(out_shape);
  kernels::matmul_nn(ta.data(), tb.data(), out.data(), m, k, n);

  return make_node(g, std::move(out), [a, b, m, k, n](Node& self) {
    // dA = G * B^T, dB = A^T * G; accumulate through scratch buffers.
    Tensor da({m * k});
    kernels::matmul_nt(self.grad.data(), b->value.data(), da.data(), m, n, k);
    kernels::add(a->grad.data(), da.data(), a->grad.data(), m * k);
    Tensor db({k * n});
    kernels::matmul_tn(a->value.data(), self.grad.data(), db.data(), m, k, n);
    kernels::add(b->grad.data(), db.data(), b->grad.data(), k * n);
  });
}

Var sigmoid(Graph& g, const Var& x) {
  return unary(g, x, kernels::sigmoid,
               [](double, double y) { return y * (1.0 - y); });
}

Var log(Graph& g, const Var& x) {
  for (double v : unwrap(x)->value.values()) {
    if (!(v > 0.0)) {
      throw std::domain_error("log: input must be strictly positive, got " +
                              std::to_string(v));
    }
  }
  return unary(g, x, kernels::vlog, [](double xv, double) { return 1.0 / xv; });
}

Var exp(Graph& g, const Var& x) {
  return unary(g, x, kernels::vexp, [](double, double y) { return y; });
}

Var softplus(Graph& g, const Var& x) {
  return unary(g, x, kernels::softplus, [](double xv, double) {
    return xv >= 0.0 ? 1.0 / (1.0 + std::exp(-xv))
                     : std::exp(xv) / (1.0 + std::exp(xv));
  });
}

Var relu(Graph& g, const Var& x) {
  return unary(g, x, kernels::relu,
               [](double xv, double) { return xv > 0.0 ? 1.0 : 0.0; });
}

Var tanh(Graph& g, const Var& x) {
  return unary(g, x, kernels::vtanh,
               [](double, double y) { return 1.0 - y * y; });
}

Var sum(Graph& g, const Var& vx) {
  Node* x = unwrap(vx);
  Tensor out = Tensor::scalar(kernels::sum(x->value.data(), x->value.size()));
  return make_node(g, std::move(out), [x](Node& self) {
    const double gr = self.grad[0];
    for (auto& v : x->grad.values()) v += gr;
  });
}

Var mean(Graph& g, const Var& vx) {
  Node* x = unwrap(vx);
  const double n = static_cast<double>(x->value.size());
  Tensor out =
      Tensor::scalar(kernels::sum(x->value.data(), x->value.size()) / n);
  return make_node(g, std::move(out), [x, n](Node& self) {
    const double gr = self.grad[0] / n;
    for (auto& v : x->grad.values()) v += gr;
  });
}

Var softmax(Graph& g, const Var& vx) {
  Node* x = unwrap(vx);
  if (x->value.rank() != 1) {
    throw ShapeError("softmax: expects a 1-D tensor, got " +
                     x->value.shape_str());
  }
  const std::size_t n = x->value.size();
  Tensor out(x->value.shape());
  double mx = x->value[0];
  for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, x->value[i]);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(x->value[i] - mx);
    z += out[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[i] /= z;
  return make_node(g, std::move(out), [x](Node& self) {
    const std::size_t n = self.value.size();
    double gy = 0.0;
    for (std::size_t i = 0; i < n; ++i) gy += self.grad[i] * self.value[i];
    for (std::size_t i = 0; i < n; ++i) {
      x->grad[i] += self.value[i] * (self.grad[i] - gy);
    }
  });
}

Var dot(Graph& g, const Var& va, const Var& vb) {
  Node* a = unwrap(va);
  Node* b = unwrap(vb);
  check_same_shape(a->value, b->value, "dot");
  Tensor out = Tensor::scalar(
      kernels::dot(a->value.data(), b->value.data(), a->value.size()));
  return make_node(g, std::move(out), [a, b](Node& self) {
    const double gr = self.grad[0];
    kernels::axpy(gr, b->value.data(), a->grad.data(), a->value.size());
    kernels::axpy(gr, a->value.data(), b->grad.data(), b->value.size());
  });
}

Var l2_norm(Graph& g, const Var& vx) {
  Node* x = unwrap(vx);
  const double norm = std::sqrt(
      kernels::dot(x->value.data(), x->value.data(), x->value.size()));
  return make_node(g, Tensor::scalar(norm), [x](Node& self) {
    const double norm = self.value[0];
    if (norm == 0.0) return;  // subgradient 0 at the origin
    kernels::axpy(self.grad[0] / norm, x->value.data(), x->grad.data(),
                  x->value.size());
  });
}

Var concat(Graph& g, std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat: no inputs");
  std::size_t total = 0;
  std::vector<Node*> nodes;
  nodes.reserve(parts.size());
  for (const Var& p : parts) {
    Node* n = unwrap(p);
    if (n->value.rank() != 1) {
      throw ShapeError("concat: expects 1-D parts, got " +
                       n->value.shape_str());
    }
    total += n->value.size();
    nodes.push_back(n);
  }
  Tensor out({total});
  std::size_t off = 0;
  for (Node* n : nodes) {
    for (std::size_t i = 0; i < n->value.size(); ++i) out[off + i] = n->value[i];
    off += n->value.size();
  }
  return make_node(g, std::move(out), [nodes = std::move(nodes)](Node& self) {
    std::size_t off = 0;
    for (Node* n : nodes) {
      for (std::size_t i = 0; i < n->value.size(); ++i) {
        n->grad[i] += self.grad[off + i];
      }
      off += n->value.size();
    }
  });
}

}  // namespace ttadc::ad
