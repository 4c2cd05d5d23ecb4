#include "jale/dct.hpp"

#include <cmath>
#include <numbers>

#include "jale/types.hpp"

namespace jale {

bool BlockDct::supported(int block_size) {
  return block_size == 8 || block_size == 16 || block_size == 32;
}

BlockDct::BlockDct(int block_size) : w_(block_size) {
  if (!supported(block_size))
    throw Error("dct: unsupported block size " + std::to_string(block_size) +
                " (supported: 8, 16, 32)");
  const double w = static_cast<double>(w_);
  basis_.resize(static_cast<size_t>(w_) * w_);
  for (int u = 0; u < w_; ++u) {
    double scale = std::sqrt((u == 0 ? 1.0 : 2.0) / w);
    for (int m = 0; m < w_; ++m)
      basis_[static_cast<size_t>(u) * w_ + m] =
          scale * std::cos((2.0 * m + 1.0) * u * std::numbers::pi / (2.0 * w));
  }
  weight_.resize(static_cast<size_t>(w_) * w_);
  for (int i = 0; i < w_; ++i)
    for (int j = 0; j < w_; ++j) {
      double ij = (static_cast<double>(i) * j) / (w * w);
      weight_[static_cast<size_t>(i) * w_ + j] = std::exp(std::abs(ij * ij - 1.0));
    }
  weight_[0] = 0.0;  // DC excluded from texture energy
}

void BlockDct::forward(const double* block, double* coeffs) const {
  const int w = w_;
  std::vector<double> tmp(static_cast<size_t>(w) * w);
  // rows: tmp = basis * block
  for (int u = 0; u < w; ++u)
    for (int n = 0; n < w; ++n) {
      double acc = 0.0;
      for (int m = 0; m < w; ++m)
        acc += basis_[static_cast<size_t>(u) * w + m] * block[static_cast<size_t>(m) * w + n];
      tmp[static_cast<size_t>(u) * w + n] = acc;
    }
  // columns: coeffs = tmp * basis^T
  for (int u = 0; u < w; ++u)
    for (int v = 0; v < w; ++v) {
      double acc = 0.0;
      for (int n = 0; n < w; ++n)
        acc += tmp[static_cast<size_t>(u) * w + n] * basis_[static_cast<size_t>(v) * w + n];
      coeffs[static_cast<size_t>(u) * w + v] = acc;
    }
}

std::vector<double> BlockDct::forward(const std::vector<double>& block) const {
  if (block.size() != static_cast<size_t>(w_) * w_)
    throw Error("dct: block size mismatch");
  std::vector<double> coeffs(block.size());
  forward(block.data(), coeffs.data());
  return coeffs;
}

double BlockDct::texture_energy(const double* coeffs) const {
  double h = 0.0;
  const size_t n = static_cast<size_t>(w_) * w_;
  for (size_t k = 1; k < n; ++k) h += weight_[k] * std::abs(coeffs[k]);
  return h;
}

}  // namespace jale
