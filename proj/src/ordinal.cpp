#include "ttadc/ordinal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ttadc::ordinal {

namespace {
double clamp_rate(double r) {
  return std::min(1.0 - kRateEps, std::max(kRateEps, r));
}
}  // namespace

LabelDistribution LabelDistribution::make(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw std::invalid_argument("LabelDistribution: need K >= 2 classes");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw std::invalid_argument("LabelDistribution: negative probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("LabelDistribution: probabilities sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  LabelDistribution d;
  d.K = static_cast<int>(probs.size());
  d.probs = std::move(probs);
  return d;
}

LabelDistribution LabelDistribution::normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (sum <= 0.0) {
    throw std::invalid_argument("LabelDistribution: nonpositive total weight");
  }
  for (double& w : weights) w /= sum;
  // Nudge the largest entry so the total is exactly representable as 1.
  double s2 = 0.0;
  for (double w : weights) s2 += w;
  auto it = std::max_element(weights.begin(), weights.end());
  *it += 1.0 - s2;
  return make(std::move(weights));
}

OrdinalVector encode(int cls, int K) {
  if (cls < 1 || cls > K) {
    throw std::invalid_argument("encode: class " + std::to_string(cls) +
                                " outside 1.." + std::to_string(K));
  }
  OrdinalVector v;
  v.bits.resize(static_cast<std::size_t>(K - 1));
  for (int i = 1; i < K; ++i) {
    v.bits[static_cast<std::size_t>(i - 1)] = cls > i ? 1.0 : 0.0;
  }
  return v;
}

int decode(const OrdinalVector& probs, DecodeRule rule) {
  if (rule == DecodeRule::kCountPositive) {
    int count = 0;
    for (double p : probs.bits) count += p > 0.5 ? 1 : 0;
    return 1 + count;
  }
  // The literal rule: the highest class predicted positive, class 1 if none.
  int cls = 1;
  for (std::size_t t = 0; t < probs.bits.size(); ++t) {
    if (probs.bits[t] > 0.5) cls = static_cast<int>(t) + 2;
  }
  return cls;
}

PositiveRates positive_rates(const LabelDistribution& dist) {
  const int K = dist.K;
  PositiveRates r;
  r.rates.resize(static_cast<std::size_t>(K - 1));
  double tail = 0.0;
  for (int i = K - 1; i >= 1; --i) {
    tail += dist.probs[static_cast<std::size_t>(i)];
    r.rates[static_cast<std::size_t>(i - 1)] = clamp_rate(tail);
  }
  return r;
}

PositiveRates one_dominating_rates(const DominatingSpec& spec) {
  if (spec.lambda < 1.0) {
    throw std::invalid_argument("one_dominating_rates: lambda must be >= 1");
  }
  if (spec.j < 1 || spec.j > spec.K) {
    throw std::invalid_argument("one_dominating_rates: j outside 1..K");
  }
  const double denom = spec.lambda + spec.K - 1;
  PositiveRates r;
  r.rates.resize(static_cast<std::size_t>(spec.K - 1));
  for (int i = 1; i < spec.K; ++i) {
    const double indicator = i >= spec.j ? 1.0 : 0.0;
    const double rate = 1.0 - (i - indicator * (1.0 - spec.lambda)) / denom;
    r.rates[static_cast<std::size_t>(i - 1)] = clamp_rate(rate);
  }
  return r;
}

LabelDistribution dominating_distribution(const DominatingSpec& spec) {
  if (spec.lambda < 1.0) {
    throw std::invalid_argument("dominating_distribution: lambda must be >= 1");
  }
  if (spec.j < 1 || spec.j > spec.K) {
    throw std::invalid_argument("dominating_distribution: j outside 1..K");
  }
  const double denom = spec.lambda + spec.K - 1;
  std::vector<double> probs(static_cast<std::size_t>(spec.K), 1.0 / denom);
  probs[static_cast<std::size_t>(spec.j - 1)] = spec.lambda / denom;
  // The entries sum to (lambda + K - 1)/denom which rounds within 1e-12.
  LabelDistribution d;
  d.K = spec.K;
  d.probs = std::move(probs);
  return d;
}

}  // namespace ttadc::ordinal
