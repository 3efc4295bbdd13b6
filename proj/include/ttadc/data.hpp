#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ttadc/ordinal.hpp"
#include "ttadc/rng.hpp"
#include "ttadc/tensor.hpp"

#include "json.hpp"

// Synthetic ordinal datasets with controllable label distributions. The
// class-conditional feature law depends only on the class, never on the
// label distribution, so resampling realizes pure label shift.
namespace ttadc::data {

struct GeneratorSpec {
  int K = 5;
  int d = 8;
  double separation = 1.0;  // class mean step along the shared direction
  double noise = 1.25;      // isotropic feature noise
  ordinal::LabelDistribution dist;
  int n = 0;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
  static GeneratorSpec from_json(const nlohmann::ordered_json& j);
};

struct AugmentationSpec {
  double noise_scale = 0.0;   // additive Gaussian
  double jitter = 0.0;        // multiplicative, per-feature U(1-j, 1+j)
  double dropout = 0.0;       // per-feature zeroing probability, in [0,1)
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
  static AugmentationSpec from_json(const nlohmann::ordered_json& j);
};

struct Dataset {
  Tensor features;          // n x d
  std::vector<int> labels;  // entries in 1..K
  int K = 0;
  nlohmann::ordered_json provenance;  // generator/resample spec + seed

  std::size_t size() const { return labels.size(); }
  int dim() const { return static_cast<int>(features.shape()[1]); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * features.shape()[1], features.shape()[1]};
  }
  ordinal::LabelDistribution empirical_distribution() const;
};

// Class mean for the generator's fixed geometry: c*s along axis 0 plus an
// orthogonal offset of 2*s on a cycling axis (none when d == 1).
std::vector<double> class_mean(const GeneratorSpec& spec, int cls);

// Largest-remainder apportionment of n by probs; ties break toward the
// lower class index.
std::vector<int> largest_remainder_counts(const std::vector<double>& probs,
                                          int n);

Dataset generate(const GeneratorSpec& spec);

// Redraws per-class counts to match the target distribution; samples within
// a class without replacement when possible, with replacement otherwise.
Dataset resample(const Dataset& source,
                 const ordinal::LabelDistribution& target, int n,
                 std::uint64_t seed);

std::vector<double> augment(std::span<const double> x,
                            const AugmentationSpec& spec, Rng& draw);

// CSV with header f1..fd,label; sidecar JSON carries provenance.
void save_csv(const Dataset& ds, const std::filesystem::path& csv_path);
void save_provenance(const Dataset& ds, const std::filesystem::path& json_path);
Dataset load_csv(const std::filesystem::path& csv_path, int K);

}  // namespace ttadc::data
