#pragma once

#include <vector>

#include "ttadc/autodiff.hpp"
#include "ttadc/ordinal.hpp"

// Distribution calibration: the logit compensating term linking training
// positive rates r to expected rates r', and the calibrated ordinal BCE.
namespace ttadc::calibration {

// delta = log( (r'/(1-r')) * ((1-r)/r) ). Multiplying the odds of
// sigmoid(phi) by exp(-delta) converts a model trained under rates r into
// one parameterizing rates r'.
double compensating_term(double r_prime, double r);

// sigmoid(phi - delta).
double calibrated_prob(double phi, double delta);

struct HeadSpec {
  int k = 1;  // head index, 1..K
  ordinal::PositiveRates expected_rates;
  ordinal::PositiveRates train_rates;
  std::vector<double> deltas;

  static HeadSpec make(int k, ordinal::PositiveRates expected,
                       ordinal::PositiveRates train);
};

// Calibrated binary cross-entropy over the K-1 ordinal bits, built on the
// shifted logits z = phi - delta through softplus so no log of a subtracted
// sigmoid ever appears. Differentiable w.r.t. phi; deltas are constants.
ad::Var calibrated_bce(ad::Graph& g, const ad::Var& phi,
                       const ordinal::OrdinalVector& target,
                       const HeadSpec& spec);

// Convenience scalar evaluation of the same loss.
double calibrated_bce_value(const std::vector<double>& phi,
                            const ordinal::OrdinalVector& target,
                            const HeadSpec& spec);

}  // namespace ttadc::calibration
