#pragma once

#include <vector>

#include "ttadc/tensor.hpp"

// Ordinal class encoding and the label-distribution algebra. Classes are
// 1..K; ordinal bit i (1-based, i = 1..K-1) means "class > i", stored
// 0-based so bits[t] corresponds to i = t+1.
namespace ttadc::ordinal {

// Rates are clamped into [kRateEps, 1-kRateEps] so downstream logits stay
// finite for degenerate distributions.
inline constexpr double kRateEps = 1e-6;

struct LabelDistribution {
  int K = 0;
  std::vector<double> probs;

  // Validates K >= 2, nonnegative entries, sum within 1e-12 of 1.
  static LabelDistribution make(std::vector<double> probs);
  // Rescales to sum 1 first (for empirical counts).
  static LabelDistribution normalized(std::vector<double> weights);
};

struct OrdinalVector {
  std::vector<double> bits;  // length K-1, entries in [0, 1]

  std::size_t size() const { return bits.size(); }
  double operator[](std::size_t i) const { return bits[i]; }
};

struct PositiveRates {
  std::vector<double> rates;  // length K-1, entries in (0, 1)

  std::size_t size() const { return rates.size(); }
  double operator[](std::size_t i) const { return rates[i]; }
};

// One-dominating-class spec: class j carries lambda times the mass of each
// other class.
struct DominatingSpec {
  int j = 1;
  double lambda = 1.0;
  int K = 2;
};

enum class DecodeRule {
  kHighestPositive,  // 1 + max{ i : p_i > 0.5 }, the default
  kCountPositive,    // 1 + #{ i : p_i > 0.5 }
};

OrdinalVector encode(int cls, int K);
int decode(const OrdinalVector& probs,
           DecodeRule rule = DecodeRule::kHighestPositive);

// rates[i] = P(class > i) = sum of probs over classes above i, clamped.
PositiveRates positive_rates(const LabelDistribution& dist);

// Closed form for the positive rates of the one-dominating distribution:
// r_i = 1 - (i - 1[i >= j] * (1 - lambda)) / (lambda + K - 1).
PositiveRates one_dominating_rates(const DominatingSpec& spec);

// Class j gets lambda/(lambda+K-1), every other class 1/(lambda+K-1).
LabelDistribution dominating_distribution(const DominatingSpec& spec);

}  // namespace ttadc::ordinal
