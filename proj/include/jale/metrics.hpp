#ifndef JALE_METRICS_HPP
#define JALE_METRICS_HPP

#include <vector>

#include "jale/types.hpp"

namespace jale {

struct RdPoint {
  double bitrate_mbps = 0.0;
  double quality = 0.0;  // dB PSNR or VMAF points
};

// A rate-distortion curve: at least 4 points, bitrate strictly increasing.
// Non-monotone quality is rejected rather than sorted.
struct RdCurve {
  std::vector<RdPoint> points;
  void validate() const;
};

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson derivative
// estimates). Passes through every knot exactly; integrals are evaluated in
// closed form per cubic piece.
class PchipInterpolant {
 public:
  PchipInterpolant(std::vector<double> x, std::vector<double> y);

  double evaluate(double x) const;
  double integrate(double a, double b) const;  // requires x_min() <= a <= b <= x_max()
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, d_;
};

// Average bitrate difference (percent) of `test` against `reference` at equal
// quality: log10(bitrate) interpolated as a function of quality, integrated
// over the overlapping quality interval.
double bd_rate_percent(const RdCurve& reference, const RdCurve& test);

// Average quality difference of `test` against `reference` at equal bitrate:
// quality interpolated over log10(bitrate).
double bd_quality(const RdCurve& reference, const RdCurve& test);

// sum(opt) / sum(ref) - 1.
double delta_ratio(double opt_sum, double ref_sum);
double delta_storage(const std::vector<double>& opt_bitrates,
                     const std::vector<double>& ref_bitrates);
double delta_threads(const std::vector<int>& opt_threads, const std::vector<int>& ref_threads);

struct BdReport {
  double bdr_psnr_percent = 0.0;
  double bdr_vmaf_percent = 0.0;
  double bd_psnr_db = 0.0;
  double bd_vmaf = 0.0;
};

BdReport bd_report(const RdCurve& ref_psnr, const RdCurve& ref_vmaf,
                   const RdCurve& test_psnr, const RdCurve& test_vmaf);

}  // namespace jale

#endif
