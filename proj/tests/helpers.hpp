#ifndef JALE_TESTS_HELPERS_HPP
#define JALE_TESTS_HELPERS_HPP

#include <functional>

#include "jale/forest.hpp"
#include "jale/harness.hpp"
#include "jale/types.hpp"

namespace jale::testing {

// Backend driven by a test-supplied callback.
class CallbackBackend : public EncoderBackend {
 public:
  using EncodeFn = std::function<EncodeRecord(const SegmentRef&, const Representation&,
                                              const ThreadPresetPair&)>;

  explicit CallbackBackend(EncodeFn fn) : fn_(std::move(fn)) {
    caps_.presets = {0, 1, 2, 3, 4, 5};
    caps_.min_threads = 1;
    caps_.max_threads = 1024;
    caps_.rate_control_modes = {"cbr"};
  }

  std::string name() const override { return "callback"; }
  const BackendCapabilities& capabilities() const override { return caps_; }
  EncodeRecord encode(const SegmentRef& segment, const Representation& rep,
                      const ThreadPresetPair& pair) override {
    return fn_(segment, rep, pair);
  }

 private:
  EncodeFn fn_;
  BackendCapabilities caps_;
};

// Single-leaf forest that predicts `value` for any 5-feature input.
inline ForestModel constant_model(double value, const ModelScope& scope = {}) {
  TrainingSet data;
  data.feature_names = {"E_Y", "h", "L_Y", "r", "b"};
  data.target_name = scope.kind == ModelScope::Kind::quality ? "vmaf" : "speed";
  data.push_row({0.0, 0.0, 0.0, 0.0, 0.0}, value);
  data.push_row({1.0, 1.0, 1.0, 1.0, 1.0}, value);
  ForestHyperparameters params;
  params.n_estimators = 1;
  params.max_depth = 0;
  return train_forest(data, params, 0, scope, 1);
}

}  // namespace jale::testing

#endif
