#include "ttadc/data.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ttadc::data {

using nlohmann::ordered_json;

ordered_json GeneratorSpec::to_json() const {
  ordered_json j;
  j["K"] = K;
  j["d"] = d;
  j["separation"] = separation;
  j["noise"] = noise;
  j["distribution"] = dist.probs;
  j["n"] = n;
  j["seed"] = seed;
  return j;
}

GeneratorSpec GeneratorSpec::from_json(const ordered_json& j) {
  GeneratorSpec spec;
  spec.K = j.at("K").get<int>();
  spec.d = j.at("d").get<int>();
  spec.separation = j.at("separation").get<double>();
  spec.noise = j.at("noise").get<double>();
  spec.dist = ordinal::LabelDistribution::make(
      j.at("distribution").get<std::vector<double>>());
  spec.n = j.at("n").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (spec.dist.K != spec.K) {
    throw std::invalid_argument("GeneratorSpec: distribution has " +
                                std::to_string(spec.dist.K) +
                                " classes, K = " + std::to_string(spec.K));
  }
  return spec;
}

ordered_json AugmentationSpec::to_json() const {
  ordered_json j;
  j["noise_scale"] = noise_scale;
  j["jitter"] = jitter;
  j["dropout"] = dropout;
  j["seed"] = seed;
  return j;
}

AugmentationSpec AugmentationSpec::from_json(const ordered_json& j) {
  AugmentationSpec spec;
  spec.noise_scale = j.at("noise_scale").get<double>();
  spec.jitter = j.at("jitter").get<double>();
  spec.dropout = j.at("dropout").get<double>();
  spec.seed = j.value("seed", std::uint64_t{0});
  if (spec.noise_scale < 0.0 || spec.jitter < 0.0 || spec.dropout < 0.0 ||
      spec.dropout >= 1.0) {
    throw std::invalid_argument("AugmentationSpec: strengths out of range");
  }
  return spec;
}

ordinal::LabelDistribution Dataset::empirical_distribution() const {
  std::vector<double> counts(static_cast<std::size_t>(K), 0.0);
  for (int y : labels) counts[static_cast<std::size_t>(y - 1)] += 1.0;
  return ordinal::LabelDistribution::normalized(std::move(counts));
}

std::vector<double> class_mean(const GeneratorSpec& spec, int cls) {
  std::vector<double> mean(static_cast<std::size_t>(spec.d), 0.0);
  mean[0] = cls * spec.separation;
  if (spec.d > 1) {
    const int axis = 1 + (cls - 1) % (spec.d - 1);
    mean[static_cast<std::size_t>(axis)] = 2.0 * spec.separation;
  }
  return mean;
}

std::vector<int> largest_remainder_counts(const std::vector<double>& probs,
                                          int n) {
  const std::size_t K = probs.size();
  std::vector<int> counts(K, 0);
  std::vector<std::pair<double, std::size_t>> remainders(K);
  int assigned = 0;
  for (std::size_t c = 0; c < K; ++c) {
    const double exact = probs[c] * n;
    counts[c] = static_cast<int>(std::floor(exact));
    assigned += counts[c];
    remainders[c] = {exact - std::floor(exact), c};
  }
  // Stable sort by descending remainder; equal remainders keep class order.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int left = n - assigned; left > 0; --left) {
    counts[remainders[static_cast<std::size_t>(n - assigned - left)].second]++;
  }
  return counts;
}

Dataset generate(const GeneratorSpec& spec) {
  if (spec.n < spec.K) {
    throw std::invalid_argument("generate: need n >= K");
  }
  if (spec.separation <= 0.0 || spec.noise <= 0.0) {
    throw std::invalid_argument("generate: separation and noise must be > 0");
  }
  const std::size_t d = static_cast<std::size_t>(spec.d);
  const std::vector<int> counts =
      largest_remainder_counts(spec.dist.probs, spec.n);

  Dataset ds;
  ds.K = spec.K;
  ds.features = Tensor({static_cast<std::size_t>(spec.n), d});
  ds.labels.resize(static_cast<std::size_t>(spec.n));

  Rng feature_rng(mix_seed(spec.seed, 0x6e));
  std::size_t row = 0;
  for (int c = 1; c <= spec.K; ++c) {
    const std::vector<double> mean = class_mean(spec, c);
    for (int s = 0; s < counts[static_cast<std::size_t>(c - 1)]; ++s, ++row) {
      double* out = ds.features.data() + row * d;
      for (std::size_t f = 0; f < d; ++f) {
        out[f] = mean[f] + spec.noise * feature_rng.normal();
      }
      ds.labels[row] = c;
    }
  }

  // Shuffle rows so files are not class-sorted.
  std::vector<std::size_t> order(static_cast<std::size_t>(spec.n));
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(mix_seed(spec.seed, 0x0d));
  order_rng.shuffle(order);
  Dataset shuffled;
  shuffled.K = ds.K;
  shuffled.features = Tensor({static_cast<std::size_t>(spec.n), d});
  shuffled.labels.resize(static_cast<std::size_t>(spec.n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double* src = ds.features.data() + order[i] * d;
    std::copy(src, src + d, shuffled.features.data() + i * d);
    shuffled.labels[i] = ds.labels[order[i]];
  }
  shuffled.provenance = ordered_json{{"kind", "generate"},
                                     {"spec", spec.to_json()}};
  return shuffled;
}

Dataset resample(const Dataset& source,
                 const ordinal::LabelDistribution& target, int n,
                 std::uint64_t seed) {
  if (target.K != source.K) {
    throw std::invalid_argument("resample: target has " +
                                std::to_string(target.K) +
                                " classes, source has " +
                                std::to_string(source.K));
  }
  std::vector<std::vector<std::size_t>> pools(
      static_cast<std::size_t>(source.K));
  for (std::size_t i = 0; i < source.size(); ++i) {
    pools[static_cast<std::size_t>(source.labels[i] - 1)].push_back(i);
  }
  const std::vector<int> counts = largest_remainder_counts(target.probs, n);
  for (int c = 0; c < source.K; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0 &&
        pools[static_cast<std::size_t>(c)].empty()) {
      throw std::invalid_argument("resample: target puts mass on class " +
                                  std::to_string(c + 1) +
                                  " absent from the source");
    }
  }

  Rng rng(mix_seed(seed, 0x7e5));
  const std::size_t d = static_cast<std::size_t>(source.dim());
  std::vector<std::size_t> chosen;
  chosen.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < source.K; ++c) {
    const auto& pool = pools[static_cast<std::size_t>(c)];
    const int want = counts[static_cast<std::size_t>(c)];
    if (want == 0) continue;
    if (static_cast<std::size_t>(want) <= pool.size()) {
      // Partial Fisher-Yates: the first `want` entries of a random order.
      std::vector<std::size_t> idx = pool;
      for (int t = 0; t < want; ++t) {
        const std::size_t pick =
            static_cast<std::size_t>(t) + rng.below(idx.size() - t);
        std::swap(idx[static_cast<std::size_t>(t)], idx[pick]);
        chosen.push_back(idx[static_cast<std::size_t>(t)]);
      }
    } else {
      for (int t = 0; t < want; ++t) {
        chosen.push_back(pool[rng.below(pool.size())]);
      }
    }
  }
  rng.shuffle(chosen);

  Dataset out;
  out.K = source.K;
  out.features = Tensor({static_cast<std::size_t>(n), d});
  out.labels.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const double* src = source.features.data() + chosen[i] * d;
    std::copy(src, src + d, out.features.data() + i * d);
    out.labels[i] = source.labels[chosen[i]];
  }
  out.provenance = ordered_json{{"kind", "resample"},
                                {"target", target.probs},
                                {"n", n},
                                {"seed", seed},
                                {"source", source.provenance}};
  return out;
}

std::vector<double> augment(std::span<const double> x,
                            const AugmentationSpec& spec, Rng& draw) {
  std::vector<double> v(x.begin(), x.end());
  if (spec.noise_scale > 0.0) {
    for (double& f : v) f += spec.noise_scale * draw.normal();
  }
  if (spec.jitter > 0.0) {
    for (double& f : v) f *= draw.uniform(1.0 - spec.jitter, 1.0 + spec.jitter);
  }
  if (spec.dropout > 0.0) {
    for (double& f : v) {
      if (draw.uniform() < spec.dropout) f = 0.0;
    }
  }
  return v;
}

void save_csv(const Dataset& ds, const std::filesystem::path& csv_path) {
  std::ofstream out(csv_path);
  if (!out) {
    throw std::runtime_error("save_csv: cannot open " + csv_path.string());
  }
  const std::size_t d = static_cast<std::size_t>(ds.dim());
  for (std::size_t f = 0; f < d; ++f) out << "f" << (f + 1) << ",";
  out << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double* row = ds.features.data() + i * d;
    for (std::size_t f = 0; f < d; ++f) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[f]);
      out << buf << ",";
    }
    out << ds.labels[i] << "\n";
  }
}

void save_provenance(const Dataset& ds,
                     const std::filesystem::path& json_path) {
  std::ofstream out(json_path);
  if (!out) {
    throw std::runtime_error("save_provenance: cannot open " +
                             json_path.string());
  }
  out << ds.provenance.dump(2) << "\n";
}

Dataset load_csv(const std::filesystem::path& csv_path, int K) {
  std::ifstream in(csv_path);
  if (!in) {
    throw std::runtime_error("load_csv: cannot open " + csv_path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_csv: empty file " + csv_path.string());
  }
  const std::size_t d = static_cast<std::size_t>(
      std::count(line.begin(), line.end(), ','));  // header: f1..fd,label
  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t f = 0; f < d; ++f) {
      if (!std::getline(ss, cell, ',')) {
        throw std::runtime_error("load_csv: short row in " + csv_path.string());
      }
      values.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (!std::getline(ss, cell, ',')) {
      throw std::runtime_error("load_csv: missing label in " +
                               csv_path.string());
    }
    const int y = std::stoi(cell);
    if (y < 1 || y > K) {
      throw std::runtime_error("load_csv: label " + std::to_string(y) +
                               " outside 1.." + std::to_string(K));
    }
    labels.push_back(y);
  }
  Dataset ds;
  ds.K = K;
  ds.labels = std::move(labels);
  ds.features = Tensor({ds.labels.size(), d}, std::move(values));
  ds.provenance = ordered_json{{"kind", "load"}, {"path", csv_path.string()}};
  return ds;
}

}  // namespace ttadc::data
