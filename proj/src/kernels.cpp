#include "ttadc/kernels.hpp"

#include <cmath>
#include <vector>

namespace ttadc::kernels {

namespace {

// Work thresholds below which the fork/join overhead is not worth paying.
constexpr std::size_t kParElems = 1u << 14;
constexpr std::size_t kParFlops = 1u << 15;

// Reduction block size. Partials are always formed over these fixed ranges
// and combined in block order, so the result does not depend on the number
// of threads.
constexpr std::size_t kBlock = 2048;

inline double sigmoid1(double x) {
  // Evaluate through exp of a non-positive argument on both branches.
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double softplus1(double x) {
  // log(1 + e^x) without overflow: x + log1p(e^-x) for positive x.
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

#define TTADC_EW_LOOP(expr)                              \
  _Pragma("omp parallel for schedule(static) if (n >= kParElems)") \
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) { \
    out[i] = (expr);                                     \
  }

void add(const double* a, const double* b, double* out, std::size_t n) {
  TTADC_EW_LOOP(a[i] + b[i])
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  TTADC_EW_LOOP(a[i] - b[i])
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  TTADC_EW_LOOP(a[i] * b[i])
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  TTADC_EW_LOOP(a[i] / b[i])
}
void sigmoid(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(sigmoid1(a[i]))
}
void vexp(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(std::exp(a[i]))
}
void vlog(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(std::log(a[i]))
}
void vtanh(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(std::tanh(a[i]))
}
void relu(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(a[i] > 0.0 ? a[i] : 0.0)
}
void softplus(const double* x, double* out, std::size_t n) {
  const double* a = x;
  TTADC_EW_LOOP(softplus1(a[i]))
}

#undef TTADC_EW_LOOP

void axpy(double a, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static) if (n >= kParElems)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    y[i] += a * x[i];
  }
}

double sum(const double* x, std::size_t n) {
  if (n <= kBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  if (n <= kBlock) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(nb); ++bi) {
    const std::size_t lo = static_cast<std::size_t>(bi) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[static_cast<std::size_t>(bi)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void matmul_nn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
  // ikj order: per output element the k-accumulation order is fixed, so the
  // parallel and serial paths agree bitwise.
#pragma omp parallel for schedule(static) if (m * n * k >= kParFlops)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    double* c = C + static_cast<std::size_t>(i) * n;
    for (std::size_t j = 0; j < n; ++j) c[j] = 0.0;
    const double* a = A + static_cast<std::size_t>(i) * k;
    for (std::size_t t = 0; t < k; ++t) {
      const double av = a[t];
      const double* b = B + t * n;
      for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void matmul_nt(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static) if (m * n * k >= kParFlops)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const double* a = A + static_cast<std::size_t>(i) * k;
    double* c = C + static_cast<std::size_t>(i) * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* b = B + j * k;
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a[t] * b[t];
      c[j] = s;
    }
  }
}

void matmul_tn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
#pragma omp parallel for schedule(static) if (m * n * k >= kParFlops)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(k); ++i) {
    double* c = C + static_cast<std::size_t>(i) * n;
    for (std::size_t j = 0; j < n; ++j) c[j] = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double av = A[t * k + static_cast<std::size_t>(i)];
      const double* b = B + t * n;
      for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}

void pairwise_count(const double* pos, std::size_t n_pos, const double* neg,
                    std::size_t n_neg, std::int64_t* wins, std::int64_t* ties) {
  std::int64_t w = 0;
  std::int64_t t = 0;
  // Integer reduction: exact regardless of ordering.
#pragma omp parallel for schedule(static) reduction(+ : w, t) \
    if (n_pos * n_neg >= kParFlops)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(n_pos); ++p) {
    const double s = pos[p];
    std::int64_t wl = 0;
    std::int64_t tl = 0;
    for (std::size_t q = 0; q < n_neg; ++q) {
      if (s > neg[q]) {
        ++wl;
      } else if (s == neg[q]) {
        ++tl;
      }
    }
    w += wl;
    t += tl;
  }
  *wins = w;
  *ties = t;
}

namespace serial {

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void div(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}
void sigmoid(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = sigmoid1(x[i]);
}
void vexp(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}
void vlog(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}
void vtanh(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::tanh(x[i]);
}
void relu(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}
void softplus(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = softplus1(x[i]);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}
double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}
double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}
void matmul_nn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* c = C + i * n;
    for (std::size_t j = 0; j < n; ++j) c[j] = 0.0;
    const double* a = A + i * k;
    for (std::size_t t = 0; t < k; ++t) {
      const double av = a[t];
      const double* b = B + t * n;
      for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}
void matmul_nt(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* a = A + i * k;
    double* c = C + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* b = B + j * k;
      double s = 0.0;
      for (std::size_t t = 0; t < k; ++t) s += a[t] * b[t];
      c[j] = s;
    }
  }
}
void matmul_tn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < k; ++i) {
    double* c = C + i * n;
    for (std::size_t j = 0; j < n; ++j) c[j] = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double av = A[t * k + i];
      const double* b = B + t * n;
      for (std::size_t j = 0; j < n; ++j) c[j] += av * b[j];
    }
  }
}
void pairwise_count(const double* pos, std::size_t n_pos, const double* neg,
                    std::size_t n_neg, std::int64_t* wins, std::int64_t* ties) {
  std::int64_t w = 0;
  std::int64_t t = 0;
  for (std::size_t p = 0; p < n_pos; ++p) {
    for (std::size_t q = 0; q < n_neg; ++q) {
      if (pos[p] > neg[q]) {
        ++w;
      } else if (pos[p] == neg[q]) {
        ++t;
      }
    }
  }
  *wins = w;
  *ties = t;
}

}  // namespace serial

}  // namespace ttadc::kernels
