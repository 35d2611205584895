#pragma once

#include "nswave/laurent.hpp"
#include "nswave/schemes.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace nswave {

enum class RootSide { outside, inside };

/// a^[k](z) = prod_{j=0}^{2n-1} (z + z_j^[k])/2 * b^[k](z)
struct SymbolFactorization {
  std::vector<cplx> linear_roots;  // -z_j^[k] in the order of the symmetrized frequencies
  LaurentPoly b_part;              // b^[k]; root multiset closed under inversion
  int level = 0;
};

SymbolFactorization factor_symbol(const LaurentPoly& a, const FrequencySet& fs, int k);

/// One representative per inverse pair of b^[k]'s roots. With reference roots,
/// each pair contributes its member nearest to a reference (tracked choice,
/// Daubechies-type); otherwise pick by modulus side.
std::vector<cplx> spectral_select(const SymbolFactorization& fact, RootSide side,
                                  const std::vector<cplx>* reference = nullptr);

/// Low-pass mu_j on degrees -n+1..n and wavelet nu_j = (-1)^{j+1} mu_{j-1}.
struct FilterPair {
  int level = 0;
  RootSide side = RootSide::outside;
  int mu_lo = 0;  // always -n+1
  std::vector<double> mu;
  std::vector<double> nu;  // degrees mu_lo+1 .. mu_lo+2n
  std::vector<cplx> chosen_roots;

  int n() const { return static_cast<int>(mu.size()) / 2; }
  int nu_lo() const { return mu_lo + 1; }
  LaurentPoly mu_poly() const { return LaurentPoly(mu_lo, mu); }
  LaurentPoly nu_poly() const { return LaurentPoly(nu_lo(), nu); }
};

std::vector<double> wavelet_filter(const std::vector<double>& mu, int mu_lo);

FilterPair daubechies_filter(int n, RootSide side = RootSide::outside);

/// Fejer-Riesz square root of a^[k]: roots -z_j^[k] (j < n) plus the selected
/// b-roots, normalized so M(1) = sqrt(2 a(1)) > 0. With track=true the b-roots
/// are matched against the classical Daubechies roots and levels k < k0 refuse.
FilterPair exp_filter(const FrequencySet& fs, int k, RootSide side = RootSide::outside,
                      bool track = false);

double filter_equivalence_gap(const FrequencySet& fs, int k, RootSide side = RootSide::outside);
double normalization_gap(const FrequencySet& fs, int k);

/// Smallest k from which the tracked root balls |z - alpha_j| <= C 2^{-k}
/// are pairwise disjoint, avoid the unit circle, and avoid the real axis for
/// non-real alpha_j.
int k0_detect(const FrequencySet& fs, RootSide side = RootSide::outside);

struct RootTrackEntry {
  cplx reference;                 // classical alpha_j
  std::vector<double> distances;  // |alpha_j^[k] - alpha_j| for k = k_from..k_to
  double fitted_slope = 0.0;      // least-squares slope of log2(distance) vs k
};

struct RootTrackingReport {
  int k_from = 0;
  int k_to = 0;
  std::vector<RootTrackEntry> entries;
};

RootTrackingReport root_tracking_report(const FrequencySet& fs, int k_from, int k_to,
                                        RootSide side = RootSide::outside);

/// Per-level filter pairs, cached; the b-root selection follows the classical
/// reference roots so consecutive levels vary continuously.
class FilterFamily {
 public:
  explicit FilterFamily(FrequencySet fs, RootSide side = RootSide::outside, bool track = false,
                        int shift = 0);

  const FrequencySet& freqs() const { return fs_; }
  RootSide side() const { return side_; }
  int shift() const { return shift_; }
  FilterPair level_filter(int k) const;

 private:
  FrequencySet fs_;
  RootSide side_;
  bool track_;
  int shift_;
  mutable std::mutex mu_;
  mutable std::map<int, FilterPair> cache_;
};

}  // namespace nswave
