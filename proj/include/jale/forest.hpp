#ifndef JALE_FOREST_HPP
#define JALE_FOREST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jale/types.hpp"

namespace jale {

inline constexpr const char* kModelFormatVersion = "jale-model/1";

struct TrainingSet {
  std::vector<std::vector<double>> features;  // one row per sample
  std::vector<double> targets;
  std::vector<std::string> feature_names;
  std::string target_name;

  size_t size() const { return targets.size(); }
  size_t dimension() const { return features.empty() ? 0 : features[0].size(); }
  void push_row(std::vector<double> x, double y);
  // Rejects ragged rows and non-finite values.
  void validate() const;
};

struct ForestHyperparameters {
  int n_estimators = 100;
  int max_depth = 14;
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  // Test hook; training-protocol default is bootstrap resampling with
  // replacement at full dataset size.
  bool bootstrap = true;

  friend bool operator==(const ForestHyperparameters&, const ForestHyperparameters&) = default;
};

// Which slice of the pipeline a model serves: the speed model of one
// (threads, preset) grid cell or the quality model of one preset.
struct ModelScope {
  enum class Kind { speed, quality };
  Kind kind = Kind::speed;
  std::optional<int> threads;  // speed models only
  int preset = 0;

  std::string tag() const;
  friend bool operator==(const ModelScope&, const ModelScope&) = default;
};

// One CART regression tree as flat node arrays. feature[i] < 0 marks a
// leaf whose prediction is value[i]; internal nodes route x[feature] <
// threshold to left, otherwise right.
struct TreeNodes {
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<double> value;
  std::vector<int> sample_count;

  size_t size() const { return feature.size(); }
  double predict(const double* x) const;
  int depth() const;
  int min_leaf_count() const;

  friend bool operator==(const TreeNodes&, const TreeNodes&) = default;
};

struct ForestModel {
  ForestHyperparameters params;
  uint64_t seed = 0;
  ModelScope scope;
  int n_features = 0;
  std::vector<std::string> feature_names;
  std::string target_name;
  double target_min = 0.0;
  double target_max = 0.0;
  std::vector<TreeNodes> trees;

  // Mean of the per-tree leaf values. Throws on dimensionality mismatch.
  double predict(const std::vector<double>& x) const;

  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

// Trains n_estimators CART trees on bootstrap resamples. Splits maximize
// variance reduction over all features with thresholds at midpoints between
// consecutive distinct values; ties break toward the lower feature index,
// then the lower threshold. Fully determined by (data, params, seed):
// each tree draws from its own seed-derived RNG stream, so sequential and
// parallel training build identical forests. n_jobs 0 = hardware threads.
ForestModel train_forest(const TrainingSet& data, const ForestHyperparameters& params,
                         uint64_t seed, const ModelScope& scope = {}, int n_jobs = 0);

// R^2 of out-of-bag predictions; bootstrap draws are regenerated from the
// model's seed. Requires the same dataset the model was trained on.
double oob_r_squared(const ForestModel& model, const TrainingSet& data);

// Shuffled near-equal folds (sizes differ by at most 1); the union covers
// [0, n_rows) exactly once. Deterministic given the seed.
std::vector<std::vector<size_t>> kfold_split(size_t n_rows, int k, uint64_t seed);

std::string save_model(const ForestModel& model);
ForestModel load_model(const std::string& json_text);
void save_model_file(const ForestModel& model, const std::string& path);
ForestModel load_model_file(const std::string& path);

}  // namespace jale

#endif
