#include "ttadc/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ttadc/kernels.hpp"

namespace ttadc::calibration {

double compensating_term(double r_prime, double r) {
  if (!(r_prime > 0.0 && r_prime < 1.0) || !(r > 0.0 && r < 1.0)) {
    throw std::domain_error(
        "compensating_term: rates must lie strictly in (0,1), got r'=" +
        std::to_string(r_prime) + " r=" + std::to_string(r));
  }
  return std::log(r_prime / (1.0 - r_prime)) + std::log((1.0 - r) / r);
}

double calibrated_prob(double phi, double delta) {
  const double z = phi - delta;
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

HeadSpec HeadSpec::make(int k, ordinal::PositiveRates expected,
                        ordinal::PositiveRates train) {
  if (expected.size() != train.size()) {
    throw std::invalid_argument("HeadSpec: rate lengths disagree");
  }
  HeadSpec spec;
  spec.k = k;
  spec.deltas.resize(expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    spec.deltas[i] = compensating_term(expected[i], train[i]);
  }
  spec.expected_rates = std::move(expected);
  spec.train_rates = std::move(train);
  return spec;
}

ad::Var calibrated_bce(ad::Graph& g, const ad::Var& phi,
                       const ordinal::OrdinalVector& target,
                       const HeadSpec& spec) {
  const std::size_t n = phi.value().size();
  if (target.size() != n || spec.deltas.size() != n) {
    throw std::invalid_argument(
        "calibrated_bce: phi has " + std::to_string(n) + " logits, target " +
        std::to_string(target.size()) + ", deltas " +
        std::to_string(spec.deltas.size()));
  }
  ad::Var delta = g.constant(Tensor({n}, spec.deltas));
  ad::Var y = g.constant(Tensor({n}, target.bits));
  // -[y log p + (1-y) log(1-p)] with p = sigmoid(z) is softplus(z) - y*z.
  ad::Var z = ad::sub(g, phi, delta);
  ad::Var per_bit = ad::sub(g, ad::softplus(g, z), ad::mul(g, y, z));
  return ad::sum(g, per_bit);
}

double calibrated_bce_value(const std::vector<double>& phi,
                            const ordinal::OrdinalVector& target,
                            const HeadSpec& spec) {
  if (target.size() != phi.size() || spec.deltas.size() != phi.size()) {
    throw std::invalid_argument("calibrated_bce_value: length mismatch");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double z = phi[i] - spec.deltas[i];
    double sp;
    kernels::softplus(&z, &sp, 1);
    loss += sp - target.bits[i] * z;
  }
  return loss;
}

}  // namespace ttadc::calibration
