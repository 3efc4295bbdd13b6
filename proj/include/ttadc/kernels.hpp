#pragma once

#include <cstddef>
#include <cstdint>

// Array kernels behind the tensor engine and the metrics. Every parallel
// kernel is bit-deterministic for any thread count: parallelism runs over
// independent output elements with a fixed per-element accumulation order,
// floating-point reductions use a fixed block decomposition, and pairwise
// counting reduces integers. The serial namespace holds the plain reference
// implementations used by tests and the benchmark.
namespace ttadc::kernels {

// Elementwise; out may alias a or b.
void add(const double* a, const double* b, double* out, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void div(const double* a, const double* b, double* out, std::size_t n);

void sigmoid(const double* x, double* out, std::size_t n);
void vexp(const double* x, double* out, std::size_t n);
void vlog(const double* x, double* out, std::size_t n);
void vtanh(const double* x, double* out, std::size_t n);
void relu(const double* x, double* out, std::size_t n);
void softplus(const double* x, double* out, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// Fixed-block reductions: result independent of thread count.
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);

// C(m x n) = A(m x k) * B(k x n), row-major.
void matmul_nn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);
// C(m x n) = A(m x k) * B(n x k)^T
void matmul_nt(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);
// C(k x n) = A(m x k)^T * B(m x n)
void matmul_tn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);

// Mann-Whitney pair counts: wins = #{(p,q): pos[p] > neg[q]}, ties likewise.
void pairwise_count(const double* pos, std::size_t n_pos, const double* neg,
                    std::size_t n_neg, std::int64_t* wins, std::int64_t* ties);

namespace serial {

void add(const double* a, const double* b, double* out, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
void div(const double* a, const double* b, double* out, std::size_t n);
void sigmoid(const double* x, double* out, std::size_t n);
void vexp(const double* x, double* out, std::size_t n);
void vlog(const double* x, double* out, std::size_t n);
void vtanh(const double* x, double* out, std::size_t n);
void relu(const double* x, double* out, std::size_t n);
void softplus(const double* x, double* out, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void matmul_nn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);
void matmul_nt(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);
void matmul_tn(const double* A, const double* B, double* C, std::size_t m,
               std::size_t k, std::size_t n);
void pairwise_count(const double* pos, std::size_t n_pos, const double* neg,
                    std::size_t n_neg, std::int64_t* wins, std::int64_t* ties);

}  // namespace serial

}  // namespace ttadc::kernels
