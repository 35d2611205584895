#include "nswave/factory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nswave {

namespace {

// synthetic division of an ascending-coefficient polynomial by (z - r);
// returns (quotient, remainder)
std::pair<std::vector<double>, double> deflate_once(const std::vector<double>& c, double r) {
  std::vector<double> q(c.size() - 1, 0.0);
  double acc = c.back();
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
    q[i] = acc;
    acc = c[i] + acc * r;
  }
  return {std::move(q), acc};
}

std::vector<cplx> classical_b_roots(int n) {
  if (n == 1) return {};
  const LaurentPoly d = dd_symbol(n);
  std::vector<double> P = d.coeffs();
  for (int i = 0; i < 2 * n; ++i) {
    auto [q, rem] = deflate_once(P, -1.0);
    P = std::move(q);
  }
  return roots(LaurentPoly(0, P)).expanded();
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = m * sxx - sx * sx;
  return (m * sxy - sx * sy) / den;
}

}  // namespace

SymbolFactorization factor_symbol(const LaurentPoly& a, const FrequencySet& fs, int k) {
  const int n = fs.n();
  if (a.lo() != -(2 * n - 1) || a.hi() != 2 * n - 1)
    throw std::invalid_argument("factor_symbol: mask has unexpected degree range");
  SymbolFactorization fact;
  fact.level = k;
  std::vector<double> P = a.coeffs();  // z^{2n-1} a(z), ascending degrees 0..4n-2
  const double pscale = a.norm1();
  for (double lam : fs.symmetrized()) {
    const double zj = std::exp(-lam * std::pow(2.0, -(k + 1)));
    fact.linear_roots.push_back(cplx(-zj, 0.0));
    auto [q, rem] = deflate_once(P, -zj);
    if (std::abs(rem) > 1e-9 * std::max(1.0, pscale))
      throw std::runtime_error("factor_symbol: deflation residual above tolerance");
    P = std::move(q);
  }
  // a = 2^{-2n} prod(z+z_j) b  =>  z^{2n-1} b(z) = 2^{2n} P(z)
  for (double& c : P) c *= std::pow(2.0, 2 * n);
  fact.b_part = LaurentPoly(-(2 * n - 1), std::move(P));
  return fact;
}

std::vector<cplx> spectral_select(const SymbolFactorization& fact, RootSide side,
                                  const std::vector<cplx>* reference) {
  std::vector<cplx> chosen;
  if (fact.b_part.coeffs().size() <= 1) return chosen;  // constant b, no roots
  const RootSet brs = roots(fact.b_part);
  const InversePairing pairing = inverse_pairs(brs, 1e-6);
  if (!pairing.exceptional.empty())
    throw std::runtime_error("spectral_select: b-part has roots at ±1");
  for (const InversePair& pr : pairing.pairs) {
    cplx pick;
    if (reference != nullptr && !reference->empty()) {
      double dz = 1e300, dw = 1e300;
      for (const cplx& r : *reference) {
        dz = std::min(dz, std::abs(pr.z - r));
        dw = std::min(dw, std::abs(pr.w - r));
      }
      if (std::abs(dz - dw) <= 1e-12 * std::max(1.0, std::min(dz, dw)))
        throw std::runtime_error("spectral_select: ambiguous tracking, pair equidistant to references");
      pick = dz < dw ? pr.z : pr.w;
    } else {
      const bool z_outside = std::abs(pr.z) > std::abs(pr.w);
      pick = (side == RootSide::outside) == z_outside ? pr.z : pr.w;
    }
    chosen.push_back(pick);
  }
  return chosen;
}

std::vector<double> wavelet_filter(const std::vector<double>& mu, int mu_lo) {
  // nu_j = (-1)^{j+1} mu_{j-1}, so nu lives on degrees mu_lo+1 .. mu_lo+len
  std::vector<double> nu(mu.size());
  for (std::size_t q = 0; q < mu.size(); ++q) {
    const int j = mu_lo + static_cast<int>(q) + 1;
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
    nu[q] = sign * mu[q];
  }
  return nu;
}

namespace {

FilterPair assemble_filter(int n, int level, RootSide side, const std::vector<cplx>& mroots,
                           double m1_target) {
  RootSet rs;
  for (const cplx& r : mroots) rs.roots.push_back({r, 1});
  rs.leading = 1.0;
  LaurentPoly mono = from_roots(rs);  // degrees 0..2n-1
  const double at1 = mono.eval(1.0);
  if (at1 == 0.0) throw std::runtime_error("filter: M(1) vanished");
  LaurentPoly M = scale(mono, m1_target / at1).shifted(-(n - 1));
  FilterPair fp;
  fp.level = level;
  fp.side = side;
  fp.mu_lo = -(n - 1);
  fp.mu.assign(2 * n, 0.0);
  for (int d = fp.mu_lo; d <= n; ++d) fp.mu[d - fp.mu_lo] = M.coeff(d);
  fp.nu = wavelet_filter(fp.mu, fp.mu_lo);
  return fp;
}

}  // namespace

FilterPair daubechies_filter(int n, RootSide side) {
  if (n < 1) throw std::invalid_argument("daubechies_filter: n >= 1 required");
  const FrequencySet zero(std::vector<double>(n, 0.0));
  const SymbolFactorization fact = factor_symbol(dd_symbol(n), zero, 0);
  const std::vector<cplx> chosen = spectral_select(fact, side, nullptr);
  std::vector<cplx> mroots(n, cplx(-1.0, 0.0));
  mroots.insert(mroots.end(), chosen.begin(), chosen.end());
  FilterPair fp = assemble_filter(n, 0, side, mroots, 2.0);  // M(1) = sqrt(2 D_2n(1)) = 2
  fp.chosen_roots = chosen;
  return fp;
}

FilterPair exp_filter(const FrequencySet& fs, int k, RootSide side, bool track) {
  const int n = fs.n();
  if (track) {
    const int k0 = k0_detect(fs, side);
    if (k < k0)
      throw std::runtime_error("exp_filter: tracking needs k >= k0 = " + std::to_string(k0));
  }
  const LaurentPoly a = exp_interp_mask(fs, k);
  const SymbolFactorization fact = factor_symbol(a, fs, k);
  std::vector<cplx> reference;
  if (n > 1) {
    const FilterPair classical = daubechies_filter(n, side);
    reference = classical.chosen_roots;
  }
  const std::vector<cplx> chosen =
      spectral_select(fact, side, reference.empty() ? nullptr : &reference);
  std::vector<cplx> mroots;
  for (int j = 0; j < n; ++j) mroots.push_back(fact.linear_roots[j]);  // Lambda_0 part
  mroots.insert(mroots.end(), chosen.begin(), chosen.end());
  const double m1 = std::sqrt(2.0 * a.eval(1.0));
  FilterPair fp = assemble_filter(n, k, side, mroots, m1);
  fp.chosen_roots = chosen;
  return fp;
}

double filter_equivalence_gap(const FrequencySet& fs, int k, RootSide side) {
  const FilterPair f = exp_filter(fs, k, side, false);
  const FilterPair d = daubechies_filter(fs.n(), side);
  double gap = 0.0;
  for (std::size_t i = 0; i < f.mu.size(); ++i) gap = std::max(gap, std::abs(f.mu[i] - d.mu[i]));
  return gap;
}

double normalization_gap(const FrequencySet& fs, int k) {
  const FilterPair f = exp_filter(fs, k, RootSide::outside, false);
  double m1 = 0.0;
  for (double c : f.mu) m1 += c;
  return std::abs(0.5 * m1 - 1.0);
}

namespace {

struct TrackData {
  std::vector<cplx> refs;               // classical b-roots (all of them)
  std::vector<std::vector<double>> d;   // d[j][k] distance of tracked root to refs[j]
  double C = 0.0;
};

TrackData track_roots(const FrequencySet& fs, int k_from, int k_to) {
  TrackData td;
  const int n = fs.n();
  td.refs = classical_b_roots(n);
  td.d.assign(td.refs.size(), {});
  for (int k = k_from; k <= k_to; ++k) {
    const LaurentPoly a = exp_interp_mask(fs, k);
    const SymbolFactorization fact = factor_symbol(a, fs, k);
    std::vector<cplx> br;
    if (fact.b_part.coeffs().size() > 1) br = roots(fact.b_part).expanded();
    for (std::size_t j = 0; j < td.refs.size(); ++j) {
      double best = 1e300;
      for (const cplx& b : br) best = std::min(best, std::abs(b - td.refs[j]));
      if (br.empty()) best = 0.0;
      td.d[j].push_back(best);
      td.C = std::max(td.C, 2.0 * std::pow(2.0, k) * best);
    }
  }
  return td;
}

}  // namespace

int k0_detect(const FrequencySet& fs, RootSide side) {
  const int n = fs.n();
  if (n == 1 || fs.all_zero()) return 0;
  const TrackData td = track_roots(fs, 0, 12);
  const SymbolFactorization cfact = factor_symbol(dd_symbol(n), FrequencySet(std::vector<double>(n, 0.0)), 0);
  const std::vector<cplx> alphas = spectral_select(cfact, side, nullptr);
  for (int k = 0; k <= 40; ++k) {
    const double r = td.C * std::pow(2.0, -k);
    bool ok = true;
    for (const cplx& a : alphas)
      if (std::abs(std::abs(a) - 1.0) <= r) ok = false;  // (i) ball meets unit circle
    for (std::size_t i = 0; i < alphas.size() && ok; ++i)
      for (std::size_t j = i + 1; j < alphas.size(); ++j)
        if (std::abs(alphas[i] - alphas[j]) <= 2 * r) ok = false;  // (ii) overlap
    for (const cplx& a : alphas)
      if (std::abs(a.imag()) > 1e-9 && std::abs(a.imag()) <= r) ok = false;  // (iii) real axis
    if (ok) return k;
  }
  throw std::runtime_error("k0_detect: no admissible k <= 40");
}

RootTrackingReport root_tracking_report(const FrequencySet& fs, int k_from, int k_to) {
  if (fs.n() == 1) return {k_from, k_to, {}};
  const TrackData td = track_roots(fs, k_from, k_to);
  RootTrackingReport rep;
  rep.k_from = k_from;
  rep.k_to = k_to;
  for (std::size_t j = 0; j < td.refs.size(); ++j) {
    RootTrackEntry e;
    e.reference = td.refs[j];
    e.distances = td.d[j];
    std::vector<double> xs, ys;
    for (int k = k_from; k <= k_to; ++k) {
      xs.push_back(k);
      ys.push_back(std::log2(std::max(td.d[j][k - k_from], 0x1p-60)));
    }
    e.fitted_slope = fit_slope(xs, ys);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

FilterFamily::FilterFamily(FrequencySet fs, RootSide side, bool track, int shift)
    : fs_(std::move(fs)), side_(side), track_(track), shift_(shift) {}

FilterPair FilterFamily::level_filter(int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(k);
  if (it == cache_.end())
    it = cache_.emplace(k, exp_filter(fs_, shift_ + k, side_, track_)).first;
  return it->second;
}

}  // namespace nswave
