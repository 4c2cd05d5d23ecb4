#ifndef JALE_DCT_HPP
#define JALE_DCT_HPP

#include <vector>

namespace jale {

// Orthonormal type-II 2-D DCT over square blocks plus the exponential
// AC-magnitude weighting used for texture energy. Supported block sizes:
// 8, 16 and 32 (32 is the analyzer default).
class BlockDct {
 public:
  explicit BlockDct(int block_size);

  static bool supported(int block_size);

  int block_size() const { return w_; }

  // block and coeffs are row-major w*w arrays; coeffs[0] is the DC term.
  void forward(const double* block, double* coeffs) const;
  std::vector<double> forward(const std::vector<double>& block) const;

  // H = sum over (i,j) != (0,0) of exp(|((i*j)/w^2)^2 - 1|) * |coef(i,j)|.
  double texture_energy(const double* coeffs) const;

 private:
  int w_;
  std::vector<double> basis_;   // basis_[u*w + m] = a(u) cos((2m+1) u pi / 2w)
  std::vector<double> weight_;  // texture weights, weight_[0] = 0
};

}  // namespace jale

#endif
