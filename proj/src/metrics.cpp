#include "jale/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace jale {

void RdCurve::validate() const {
  if (points.size() < 4)
    throw Error("rd curve: need at least 4 points, got " + std::to_string(points.size()));
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].bitrate_mbps > 0.0))
      throw Error("rd curve: point " + std::to_string(i) + " has non-positive bitrate");
    if (!std::isfinite(points[i].quality))
      throw Error("rd curve: point " + std::to_string(i) + " has non-finite quality");
    if (i > 0 && !(points[i].bitrate_mbps > points[i - 1].bitrate_mbps))
      throw Error("rd curve: bitrates must strictly increase (point " + std::to_string(i) + ")");
    if (i > 0 && !(points[i].quality > points[i - 1].quality))
      throw Error("rd curve: quality must strictly increase with bitrate (point " +
                  std::to_string(i) + "); non-monotone curves are rejected");
  }
}

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Three-point one-sided estimate with the monotonicity guards.
double edge_derivative(double h0, double h1, double d0, double d1) {
  double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(d) != sign(d0))
    d = 0.0;
  else if (sign(d0) != sign(d1) && std::abs(d) > 3.0 * std::abs(d0))
    d = 3.0 * d0;
  return d;
}

}  // namespace

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error("pchip: need at least 2 matching knots");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw Error("pchip: abscissae must strictly increase");

  std::vector<double> h(n - 1), slope(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = slope[0];
    return;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2.0 * h[i] + h[i - 1];
      double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
    }
  }
  d_[0] = edge_derivative(h[0], h[1], slope[0], slope[1]);
  d_[n - 1] = edge_derivative(h[n - 2], h[n - 3], slope[n - 2], slope[n - 3]);
}

double PchipInterpolant::evaluate(double x) const {
  if (x < x_.front() - 1e-12 || x > x_.back() + 1e-12)
    throw Error("pchip: evaluation outside the knot range");
  size_t k = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  k = k == 0 ? 0 : std::min(k - 1, x_.size() - 2);

  const double hk = x_[k + 1] - x_[k];
  const double slope = (y_[k + 1] - y_[k]) / hk;
  const double t = x - x_[k];
  // cubic coefficients on the local piece
  const double c2 = (3.0 * slope - 2.0 * d_[k] - d_[k + 1]) / hk;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * slope) / (hk * hk);
  return y_[k] + t * (d_[k] + t * (c2 + t * c3));
}

double PchipInterpolant::integrate(double a, double b) const {
  if (a > b) throw Error("pchip: inverted integration interval");
  if (a < x_.front() - 1e-12 || b > x_.back() + 1e-12)
    throw Error("pchip: integration outside the knot range");

  double acc = 0.0;
  for (size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;

    const double hk = x_[k + 1] - x_[k];
    const double slope = (y_[k + 1] - y_[k]) / hk;
    const double c2 = (3.0 * slope - 2.0 * d_[k] - d_[k + 1]) / hk;
    const double c3 = (d_[k] + d_[k + 1] - 2.0 * slope) / (hk * hk);
    auto antiderivative = [&](double x) {
      const double t = x - x_[k];
      return t * (y_[k] + t * (d_[k] / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
    };
    acc += antiderivative(hi) - antiderivative(lo);
  }
  return acc;
}

namespace {

struct CurveAxes {
  std::vector<double> quality, log_bitrate;
};

CurveAxes axes_of(const RdCurve& curve) {
  curve.validate();
  CurveAxes axes;
  for (const RdPoint& p : curve.points) {
    axes.quality.push_back(p.quality);
    axes.log_bitrate.push_back(std::log10(p.bitrate_mbps));
  }
  return axes;
}

void overlap(double ref_lo, double ref_hi, double test_lo, double test_hi, double* lo,
             double* hi) {
  *lo = std::max(ref_lo, test_lo);
  *hi = std::min(ref_hi, test_hi);
  if (!(*hi > *lo))
    throw Error("bd: curves have no overlapping interval of positive length");
}

}  // namespace

double bd_rate_percent(const RdCurve& reference, const RdCurve& test) {
  CurveAxes ref = axes_of(reference);
  CurveAxes tst = axes_of(test);
  PchipInterpolant ref_fit(ref.quality, ref.log_bitrate);
  PchipInterpolant tst_fit(tst.quality, tst.log_bitrate);

  double lo, hi;
  overlap(ref_fit.x_min(), ref_fit.x_max(), tst_fit.x_min(), tst_fit.x_max(), &lo, &hi);
  double mean_diff = (tst_fit.integrate(lo, hi) - ref_fit.integrate(lo, hi)) / (hi - lo);
  return (std::pow(10.0, mean_diff) - 1.0) * 100.0;
}

double bd_quality(const RdCurve& reference, const RdCurve& test) {
  CurveAxes ref = axes_of(reference);
  CurveAxes tst = axes_of(test);
  PchipInterpolant ref_fit(ref.log_bitrate, ref.quality);
  PchipInterpolant tst_fit(tst.log_bitrate, tst.quality);

  double lo, hi;
  overlap(ref_fit.x_min(), ref_fit.x_max(), tst_fit.x_min(), tst_fit.x_max(), &lo, &hi);
  return (tst_fit.integrate(lo, hi) - ref_fit.integrate(lo, hi)) / (hi - lo);
}

double delta_ratio(double opt_sum, double ref_sum) {
  if (!(ref_sum > 0.0)) throw Error("delta: reference sum must be positive");
  return opt_sum / ref_sum - 1.0;
}

double delta_storage(const std::vector<double>& opt_bitrates,
                     const std::vector<double>& ref_bitrates) {
  if (ref_bitrates.empty()) throw Error("delta_storage: empty reference");
  double opt = 0.0, ref = 0.0;
  for (double b : opt_bitrates) opt += b;
  for (double b : ref_bitrates) ref += b;
  return delta_ratio(opt, ref);
}

double delta_threads(const std::vector<int>& opt_threads, const std::vector<int>& ref_threads) {
  if (ref_threads.empty()) throw Error("delta_threads: empty reference");
  double opt = 0.0, ref = 0.0;
  for (int n : opt_threads) opt += n;
  for (int n : ref_threads) ref += n;
  return delta_ratio(opt, ref);
}

BdReport bd_report(const RdCurve& ref_psnr, const RdCurve& ref_vmaf, const RdCurve& test_psnr,
                   const RdCurve& test_vmaf) {
  BdReport report;
  report.bdr_psnr_percent = bd_rate_percent(ref_psnr, test_psnr);
  report.bdr_vmaf_percent = bd_rate_percent(ref_vmaf, test_vmaf);
  report.bd_psnr_db = bd_quality(ref_psnr, test_psnr);
  report.bd_vmaf = bd_quality(ref_vmaf, test_vmaf);
  return report;
}

}  // namespace jale
