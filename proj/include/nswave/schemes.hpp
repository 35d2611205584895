#pragma once

#include "nswave/laurent.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace nswave {

/// The real frequencies lambda_0..lambda_{n-1}; repetitions encode multiplicity.
struct FrequencySet {
  std::vector<double> lambdas;

  FrequencySet() = default;
  explicit FrequencySet(std::vector<double> l);

  int n() const { return static_cast<int>(lambdas.size()); }
  bool all_zero() const;
  /// Lambda_2n = (lambda_0..lambda_{n-1}, -lambda_0..-lambda_{n-1})
  std::vector<double> symmetrized() const;
};

/// Q_{n-1}(x) = sum_{j=0}^{n-1} C(n+j-1, j) x^j
LaurentPoly q_polynomial(int n);

/// |n Q_{n-1}(x) + (x-1) Q'_{n-1}(x) - (2n-1)!/((n-1)!)^2 x^{n-1}|
double q_identity_residual(int n, double x);

/// Deslauriers-Dubuc symbol D_2n(z) = 2 (1+z)^n (1+1/z)^n / 2^{2n} * Q_{n-1}(phi(z)),
/// phi(z) = 1/2 - (z + 1/z)/4.
LaurentPoly dd_symbol(int n);

/// Level-k mask of the interpolatory scheme reproducing E(Lambda_2n):
/// a_{2j} = delta_{0j} and d^s/dz^s a(-z_j^[k]) = 0, s < mu_j,
/// z_j^[k] = exp(-lambda_j 2^{-(k+1)}).
LaurentPoly exp_interp_mask(const FrequencySet& fs, int k);

/// Residuals of a(-z_j)=0, a(z_j)=2 and the derivative conditions, keyed by name.
std::map<std::string, double> symbol_conditions_residual(const LaurentPoly& a,
                                                         const FrequencySet& fs, int k);

/// sum_j |p_j - a_j^[k]| against the Deslauriers-Dubuc coefficients.
double equivalence_gap(const FrequencySet& fs, int k);

/// Data on the grid 2^{-level} Z: values[i] sits at x = (offset + i) / 2^level.
struct SampleGrid {
  int level = 0;
  long long offset = 0;
  std::vector<double> values;

  double x_of(std::size_t i) const;
  double at_index(long long j) const;  // 0 outside the stored window
};

/// One subdivision pass f^{k+1}_j = sum_l a_{j-2l} f^k_l (data treated as 0 outside).
/// The output window only trusts indices whose stencil lay inside the input;
/// callers must pad by the mask half-width per pass (support bound of Remark 3).
SampleGrid refine(const SampleGrid& data, const LaurentPoly& mask);

/// Per-level masks a^{[shift+k]} of the scheme S_shift, cached and shareable across threads.
class MaskFamily {
 public:
  explicit MaskFamily(FrequencySet fs, int shift = 0);

  const FrequencySet& freqs() const { return fs_; }
  int shift() const { return shift_; }
  int support_bound() const { return 2 * fs_.n() - 1; }
  LaurentPoly level_mask(int k) const;

 private:
  FrequencySet fs_;
  int shift_ = 0;
  mutable std::mutex mu_;
  mutable std::map<int, LaurentPoly> cache_;
};

}  // namespace nswave
