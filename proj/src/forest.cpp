#include "jale/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "jale/rng.hpp"
#include "json.hpp"

namespace jale {

using nlohmann::json;

void TrainingSet::push_row(std::vector<double> x, double y) {
  features.push_back(std::move(x));
  targets.push_back(y);
}

void TrainingSet::validate() const {
  if (features.size() != targets.size())
    throw Error("training set: feature/target row count mismatch");
  const size_t dim = dimension();
  if (dim == 0) throw Error("training set: zero feature dimensionality");
  for (size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != dim)
      throw Error("training set: row " + std::to_string(i) + " has dimensionality " +
                  std::to_string(features[i].size()) + ", expected " + std::to_string(dim));
    for (double v : features[i])
      if (!std::isfinite(v))
        throw Error("training set: non-finite feature in row " + std::to_string(i));
    if (!std::isfinite(targets[i]))
      throw Error("training set: non-finite target in row " + std::to_string(i));
  }
  if (!feature_names.empty() && feature_names.size() != dim)
    throw Error("training set: feature_names size does not match dimensionality");
}

std::string ModelScope::tag() const {
  if (kind == Kind::speed)
    return "speed[n=" + std::to_string(threads.value_or(0)) + ",p=" + std::to_string(preset) + "]";
  return "quality[p=" + std::to_string(preset) + "]";
}

double TreeNodes::predict(const double* x) const {
  int i = 0;
  while (feature[i] >= 0) i = x[feature[i]] < threshold[i] ? left[i] : right[i];
  return value[i];
}

int TreeNodes::depth() const {
  // iterative DFS; node 0 is the root
  int max_depth = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, d);
    if (feature[i] >= 0) {
      stack.push_back({left[i], d + 1});
      stack.push_back({right[i], d + 1});
    }
  }
  return max_depth;
}

int TreeNodes::min_leaf_count() const {
  int min_count = std::numeric_limits<int>::max();
  for (size_t i = 0; i < feature.size(); ++i)
    if (feature[i] < 0) min_count = std::min(min_count, sample_count[i]);
  return min_count;
}

namespace {

struct TreeBuilder {
  const TrainingSet& data;
  const ForestHyperparameters& params;
  TreeNodes nodes;

  int add_leaf(const std::vector<size_t>& rows) {
    double sum = 0.0;
    for (size_t r : rows) sum += data.targets[r];
    nodes.feature.push_back(-1);
    nodes.threshold.push_back(0.0);
    nodes.left.push_back(-1);
    nodes.right.push_back(-1);
    nodes.value.push_back(sum / static_cast<double>(rows.size()));
    nodes.sample_count.push_back(static_cast<int>(rows.size()));
    return static_cast<int>(nodes.feature.size()) - 1;
  }

  struct Split {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double reduction = 0.0;
  };

  Split best_split(const std::vector<size_t>& rows) const {
    const size_t n = rows.size();
    const size_t dim = data.dimension();

    double total_sum = 0.0, total_sq = 0.0;
    for (size_t r : rows) {
      total_sum += data.targets[r];
      total_sq += data.targets[r] * data.targets[r];
    }
    const double parent_sse = total_sq - total_sum * total_sum / static_cast<double>(n);

    Split best;
    std::vector<std::pair<double, size_t>> order(n);  // (feature value, row)
    for (size_t f = 0; f < dim; ++f) {
      for (size_t i = 0; i < n; ++i)
        order[i] = {data.features[rows[i]][f], rows[i]};
      std::sort(order.begin(), order.end());

      double left_sum = 0.0, left_sq = 0.0;
      for (size_t i = 0; i + 1 < n; ++i) {
        double y = data.targets[order[i].second];
        left_sum += y;
        left_sq += y * y;
        if (order[i].first == order[i + 1].first) continue;  // split only between distinct values
        double mid = 0.5 * (order[i].first + order[i + 1].first);
        if (!(order[i].first < mid) || !(mid <= order[i + 1].first)) continue;  // midpoint rounded away

        const size_t left_n = i + 1;
        const size_t right_n = n - left_n;
        if (left_n < static_cast<size_t>(params.min_samples_leaf) ||
            right_n < static_cast<size_t>(params.min_samples_leaf))
          continue;

        double right_sum = total_sum - left_sum;
        double right_sq = total_sq - left_sq;
        double sse = (left_sq - left_sum * left_sum / static_cast<double>(left_n)) +
                     (right_sq - right_sum * right_sum / static_cast<double>(right_n));
        double reduction = parent_sse - sse;
        if (!best.found || reduction > best.reduction) {
          best = {true, static_cast<int>(f), mid, reduction};
        }
      }
    }
    return best;
  }

  int build(const std::vector<size_t>& rows, int depth) {
    bool constant = true;
    for (size_t i = 1; i < rows.size() && constant; ++i)
      constant = data.targets[rows[i]] == data.targets[rows[0]];
    if (depth >= params.max_depth || constant ||
        rows.size() < static_cast<size_t>(params.min_samples_split))
      return add_leaf(rows);

    Split split = best_split(rows);
    if (!split.found) return add_leaf(rows);

    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows) {
      if (data.features[r][split.feature] < split.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }

    nodes.feature.push_back(split.feature);
    nodes.threshold.push_back(split.threshold);
    nodes.left.push_back(-1);
    nodes.right.push_back(-1);
    nodes.value.push_back(0.0);
    nodes.sample_count.push_back(static_cast<int>(rows.size()));
    const int index = static_cast<int>(nodes.feature.size()) - 1;

    nodes.left[index] = build(left_rows, depth + 1);
    nodes.right[index] = build(right_rows, depth + 1);
    return index;
  }
};

std::vector<size_t> bootstrap_rows(size_t n, uint64_t stream_seed, bool bootstrap) {
  std::vector<size_t> rows(n);
  if (bootstrap) {
    SplitMix64 rng(stream_seed);
    for (size_t i = 0; i < n; ++i) rows[i] = rng.next_below(n);
  } else {
    std::iota(rows.begin(), rows.end(), size_t{0});
  }
  return rows;
}

TreeNodes train_one_tree(const TrainingSet& data, const ForestHyperparameters& params,
                         uint64_t seed, size_t tree_index) {
  std::vector<size_t> rows =
      bootstrap_rows(data.size(), derive_stream(seed, tree_index), params.bootstrap);
  TreeBuilder builder{data, params, {}};
  builder.build(rows, 0);
  return std::move(builder.nodes);
}

}  // namespace

ForestModel train_forest(const TrainingSet& data, const ForestHyperparameters& params,
                         uint64_t seed, const ModelScope& scope, int n_jobs) {
  data.validate();
  if (data.size() < static_cast<size_t>(params.min_samples_split))
    throw Error("train: dataset smaller than min_samples_split");
  if (params.n_estimators <= 0) throw Error("train: n_estimators must be positive");
  if (params.max_depth < 0) throw Error("train: max_depth must be non-negative");
  if (params.min_samples_leaf <= 0) throw Error("train: min_samples_leaf must be positive");

  ForestModel model;
  model.params = params;
  model.seed = seed;
  model.scope = scope;
  model.n_features = static_cast<int>(data.dimension());
  model.feature_names = data.feature_names;
  model.target_name = data.target_name;
  auto [lo, hi] = std::minmax_element(data.targets.begin(), data.targets.end());
  model.target_min = *lo;
  model.target_max = *hi;

  const size_t n_trees = static_cast<size_t>(params.n_estimators);
  model.trees.resize(n_trees);

  size_t workers = n_jobs > 0 ? static_cast<size_t>(n_jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_trees);
  if (workers <= 1) {
    for (size_t t = 0; t < n_trees; ++t)
      model.trees[t] = train_one_tree(data, params, seed, t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t t = next.fetch_add(1); t < n_trees; t = next.fetch_add(1))
          model.trees[t] = train_one_tree(data, params, seed, t);
      });
    for (std::thread& t : pool) t.join();
  }
  return model;
}

double ForestModel::predict(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_features)
    throw Error("predict: expected " + std::to_string(n_features) + " features, got " +
                std::to_string(x.size()));
  double sum = 0.0;
  for (const TreeNodes& tree : trees) sum += tree.predict(x.data());
  return sum / static_cast<double>(trees.size());
}

double oob_r_squared(const ForestModel& model, const TrainingSet& data) {
  data.validate();
  if (static_cast<int>(data.dimension()) != model.n_features)
    throw Error("oob: dataset dimensionality does not match model");
  const size_t n = data.size();
  std::vector<double> acc(n, 0.0);
  std::vector<int> hits(n, 0);
  std::vector<char> in_bag(n);

  for (size_t t = 0; t < model.trees.size(); ++t) {
    std::fill(in_bag.begin(), in_bag.end(), 0);
    for (size_t r : bootstrap_rows(n, derive_stream(model.seed, t), model.params.bootstrap))
      in_bag[r] = 1;
    for (size_t i = 0; i < n; ++i)
      if (!in_bag[i]) {
        acc[i] += model.trees[t].predict(data.features[i].data());
        ++hits[i];
      }
  }

  double mean = std::accumulate(data.targets.begin(), data.targets.end(), 0.0) /
                static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  size_t covered = 0;
  for (size_t i = 0; i < n; ++i) {
    if (hits[i] == 0) continue;
    double pred = acc[i] / hits[i];
    ss_res += (data.targets[i] - pred) * (data.targets[i] - pred);
    ss_tot += (data.targets[i] - mean) * (data.targets[i] - mean);
    ++covered;
  }
  if (covered == 0 || ss_tot == 0.0)
    throw Error("oob: no out-of-bag coverage (bootstrap disabled or degenerate targets)");
  return 1.0 - ss_res / ss_tot;
}

std::vector<std::vector<size_t>> kfold_split(size_t n_rows, int k, uint64_t seed) {
  if (k < 2) throw Error("kfold: k must be at least 2");
  if (static_cast<size_t>(k) > n_rows)
    throw Error("kfold: k = " + std::to_string(k) + " exceeds row count " +
                std::to_string(n_rows));

  std::vector<size_t> perm(n_rows);
  std::iota(perm.begin(), perm.end(), size_t{0});
  SplitMix64 rng(mix_u64(seed));
  for (size_t i = n_rows - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.next_below(i + 1)]);

  std::vector<std::vector<size_t>> folds(k);
  size_t base = n_rows / k, extra = n_rows % k, cursor = 0;
  for (int f = 0; f < k; ++f) {
    size_t size = base + (static_cast<size_t>(f) < extra ? 1 : 0);
    folds[f].assign(perm.begin() + cursor, perm.begin() + cursor + size);
    cursor += size;
  }
  return folds;
}

namespace {

json scope_to_json(const ModelScope& scope) {
  json j = {{"kind", scope.kind == ModelScope::Kind::speed ? "speed" : "quality"},
            {"preset", scope.preset}};
  if (scope.threads) j["threads"] = *scope.threads;
  return j;
}

ModelScope scope_from_json(const json& j) {
  ModelScope scope;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "speed")
    scope.kind = ModelScope::Kind::speed;
  else if (kind == "quality")
    scope.kind = ModelScope::Kind::quality;
  else
    throw Error("model: unknown scope kind " + kind);
  scope.preset = j.at("preset").get<int>();
  if (j.contains("threads")) scope.threads = j.at("threads").get<int>();
  return scope;
}

}  // namespace

std::string save_model(const ForestModel& model) {
  json trees = json::array();
  for (const TreeNodes& t : model.trees)
    trees.push_back({{"feature", t.feature},
                     {"threshold", t.threshold},
                     {"left", t.left},
                     {"right", t.right},
                     {"value", t.value},
                     {"count", t.sample_count}});
  json doc = {{"version", kModelFormatVersion},
              {"scope", scope_to_json(model.scope)},
              {"hyperparameters",
               {{"n_estimators", model.params.n_estimators},
                {"max_depth", model.params.max_depth},
                {"min_samples_split", model.params.min_samples_split},
                {"min_samples_leaf", model.params.min_samples_leaf},
                {"bootstrap", model.params.bootstrap}}},
              {"seed", model.seed},
              {"n_features", model.n_features},
              {"feature_names", model.feature_names},
              {"target_name", model.target_name},
              {"target_range", {model.target_min, model.target_max}},
              {"trees", trees}};
  return doc.dump();
}

ForestModel load_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("model: corrupt document: ") + e.what());
  }
  try {
    std::string version = doc.at("version").get<std::string>();
    if (version != kModelFormatVersion)
      throw Error("model: version mismatch: expected \"" + std::string(kModelFormatVersion) +
                  "\", got \"" + version + "\"");

    ForestModel model;
    model.scope = scope_from_json(doc.at("scope"));
    const json& hp = doc.at("hyperparameters");
    model.params.n_estimators = hp.at("n_estimators").get<int>();
    model.params.max_depth = hp.at("max_depth").get<int>();
    model.params.min_samples_split = hp.at("min_samples_split").get<int>();
    model.params.min_samples_leaf = hp.at("min_samples_leaf").get<int>();
    model.params.bootstrap = hp.at("bootstrap").get<bool>();
    model.seed = doc.at("seed").get<uint64_t>();
    model.n_features = doc.at("n_features").get<int>();
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.target_name = doc.at("target_name").get<std::string>();
    model.target_min = doc.at("target_range").at(0).get<double>();
    model.target_max = doc.at("target_range").at(1).get<double>();

    for (const json& t : doc.at("trees")) {
      TreeNodes tree;
      tree.feature = t.at("feature").get<std::vector<int>>();
      tree.threshold = t.at("threshold").get<std::vector<double>>();
      tree.left = t.at("left").get<std::vector<int>>();
      tree.right = t.at("right").get<std::vector<int>>();
      tree.value = t.at("value").get<std::vector<double>>();
      tree.sample_count = t.at("count").get<std::vector<int>>();
      const size_t n = tree.feature.size();
      if (n == 0 || tree.threshold.size() != n || tree.left.size() != n ||
          tree.right.size() != n || tree.value.size() != n || tree.sample_count.size() != n)
        throw Error("model: corrupt document: inconsistent tree arrays");
      for (size_t i = 0; i < n; ++i)
        if (tree.feature[i] >= 0 &&
            (tree.left[i] < 0 || tree.left[i] >= static_cast<int>(n) || tree.right[i] < 0 ||
             tree.right[i] >= static_cast<int>(n)))
          throw Error("model: corrupt document: child index out of range");
      model.trees.push_back(std::move(tree));
    }
    if (model.trees.empty()) throw Error("model: corrupt document: no trees");
    return model;
  } catch (const json::exception& e) {
    throw Error(std::string("model: corrupt document: ") + e.what());
  }
}

void save_model_file(const ForestModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("model: cannot write " + path);
  out << save_model(model) << "\n";
}

ForestModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("model: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace jale
