#include "nswave/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nswave {

namespace {

double binom(int a, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

double gen_binom(double a, int t) {
  double r = 1.0;
  for (int i = 0; i < t; ++i) r = r * (a - i) / (i + 1);
  return r;
}

double falling(double a, int s) {
  double r = 1.0;
  for (int i = 0; i < s; ++i) r *= (a - i);
  return r;
}

}  // namespace

FrequencySet::FrequencySet(std::vector<double> l) : lambdas(std::move(l)) {
  if (lambdas.empty()) throw std::invalid_argument("FrequencySet: need at least one frequency");
  for (double x : lambdas)
    if (!std::isfinite(x)) throw std::invalid_argument("FrequencySet: non-finite frequency");
}

bool FrequencySet::all_zero() const {
  return std::all_of(lambdas.begin(), lambdas.end(), [](double x) { return x == 0.0; });
}

std::vector<double> FrequencySet::symmetrized() const {
  std::vector<double> out = lambdas;
  for (double l : lambdas) out.push_back(-l);
  return out;
}

LaurentPoly q_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("q_polynomial: n >= 1 required");
  std::vector<double> c(n);
  for (int j = 0; j < n; ++j) c[j] = binom(n + j - 1, j);
  return LaurentPoly(0, std::move(c));
}

double q_identity_residual(int n, double x) {
  const LaurentPoly Q = q_polynomial(n);
  const LaurentPoly dQ = Q.derivative();
  double rhs = std::pow(x, n - 1);
  for (int i = 1; i <= n - 1; ++i) rhs *= static_cast<double>(n + i) / i;  // (2n-1)!/((n-1)!)^2
  const double lhs = n * Q.eval(x) + (x - 1.0) * dQ.eval(x);
  return std::abs(lhs - rhs);
}

LaurentPoly dd_symbol(int n) {
  if (n < 1) throw std::invalid_argument("dd_symbol: n >= 1 required");
  // 2 (1+z)^n (1+1/z)^n / 2^{2n} = 2^{1-2n} z^{-n} (1+z)^{2n}
  LaurentPoly base = LaurentPoly::constant(std::pow(2.0, 1 - 2 * n));
  const LaurentPoly onez(0, {1.0, 1.0});
  for (int i = 0; i < 2 * n; ++i) base = base * onez;
  base = base.shifted(-n);
  // Q_{n-1}(phi(z)) by Horner, phi(z) = 1/2 - (z + 1/z)/4
  const LaurentPoly phi(-1, {-0.25, 0.5, -0.25});
  const LaurentPoly Q = q_polynomial(n);
  LaurentPoly acc = LaurentPoly::constant(Q.coeff(n - 1));
  for (int j = n - 2; j >= 0; --j) acc = acc * phi + LaurentPoly::constant(Q.coeff(j));
  return base * acc;
}

namespace {

// Hermite data for the centered confluent system: the even part of z^{2n-1} a(z)
// is Q(z^2) with Q the degree <= 2n-1 Hermite interpolant of H(y) = y^{n-1/2}
// at y_j = exp(-lambda_j 2^{-k}).  Newton form; two routes for the divided
// differences depending on the node spread around y = 1.
struct HermiteNodes {
  std::vector<double> xs;  // flattened confluent node list, size 2n
};

std::vector<double> newton_coeffs(const std::vector<double>& xs, double a) {
  const std::size_t m = xs.size();
  double spread = 0.0;
  for (double x : xs) spread = std::max(spread, std::abs(x - 1.0));
  std::vector<double> dd(m, 0.0);
  if (spread <= 0.5) {
    // Taylor route about y = 1: H(y) = sum_t binom(a,t) w^t, w = y-1.
    // Divided difference of w^t over a prefix of nodes is the complete
    // homogeneous symmetric polynomial h_{t-r}(w_0..w_r); build it
    // incrementally so clustered nodes cost no cancellation.
    const int T = 160;
    std::vector<double> ct(T);
    for (int t = 0; t < T; ++t) ct[t] = gen_binom(a, t);
    std::vector<double> h(T, 0.0);
    h[0] = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double w = xs[r] - 1.0;
      for (int d = 1; d < T; ++d) h[d] += w * h[d - 1];
      double s = 0.0;
      for (int t = T - 1; t >= static_cast<int>(r); --t) s += ct[t] * h[t - static_cast<int>(r)];
      dd[r] = s;
    }
  } else {
    // spread nodes: the confluent divided-difference table on values,
    // repeated nodes filled with H^{(j)}(y)/j!
    std::vector<std::vector<double>> tab(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) tab[i][0] = std::pow(xs[i], a);
    for (std::size_t j = 1; j < m; ++j) {
      for (std::size_t i = j; i < m; ++i) {
        if (xs[i] == xs[i - j]) {
          double fact = 1.0;
          for (std::size_t t = 2; t <= j; ++t) fact *= static_cast<double>(t);
          tab[i][j] = falling(a, static_cast<int>(j)) * std::pow(xs[i], a - static_cast<double>(j)) / fact;
        } else {
          tab[i][j] = (tab[i][j - 1] - tab[i - 1][j - 1]) / (xs[i] - xs[i - j]);
        }
      }
    }
    for (std::size_t r = 0; r < m; ++r) dd[r] = tab[r][r];
  }
  return dd;
}

}  // namespace

LaurentPoly exp_interp_mask(const FrequencySet& fs, int k) {
  if (k < 0) throw std::invalid_argument("exp_interp_mask: k >= 0 required");
  const int n = fs.n();
  const std::vector<double> lams = fs.symmetrized();
  const double scale = std::pow(2.0, -k);
  for (double l : lams)
    if (std::abs(l) * scale > 300.0)
      throw std::invalid_argument("exp_interp_mask: frequency too large for this level");

  // group equal frequencies into confluent nodes y_j = exp(-lambda_j 2^{-k})
  std::vector<double> xs;
  {
    std::vector<std::pair<double, int>> nodes;
    for (double l : lams) {
      const double y = std::exp(-l * scale);
      bool placed = false;
      for (auto& nd : nodes) {
        if (std::abs(nd.first - y) <= 1e-14 * std::max(1.0, std::abs(y))) {
          ++nd.second;
          placed = true;
          break;
        }
      }
      if (!placed) nodes.push_back({y, 1});
    }
    for (const auto& nd : nodes)
      for (int i = 0; i < nd.second; ++i) xs.push_back(nd.first);
  }

  const std::vector<double> dd = newton_coeffs(xs, n - 0.5);

  // expand the Newton form to monomial coefficients of Q(y)
  std::vector<double> q{dd.back()};
  for (int r = static_cast<int>(xs.size()) - 2; r >= 0; --r) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i] += q[i] * (-xs[r]);
      next[i + 1] += q[i];
    }
    next[0] += dd[r];
    q = std::move(next);
  }

  // a(z) = 1 + z^{-(2n-1)} Q(z^2): even-index coefficients exactly delta_{0j}
  std::vector<double> c(4 * n - 1, 0.0);
  for (std::size_t t = 0; t < q.size(); ++t) c[2 * t] += q[t];
  c[2 * n - 1] += 1.0;
  // the symmetric frequency set makes a_j = a_{-j}; project out rounding noise
  const std::size_t len = c.size();
  for (std::size_t i = 0; i < len / 2; ++i) {
    const double s = 0.5 * (c[i] + c[len - 1 - i]);
    c[i] = s;
    c[len - 1 - i] = s;
  }
  return LaurentPoly(-(2 * n - 1), std::move(c));
}

std::map<std::string, double> symbol_conditions_residual(const LaurentPoly& a,
                                                         const FrequencySet& fs, int k) {
  std::map<std::string, double> out;
  std::map<double, int> mult;
  for (double l : fs.symmetrized()) ++mult[l];
  for (const auto& [lam, mu] : mult) {
    const double zj = std::exp(-lam * std::pow(2.0, -(k + 1)));
    char key[64];
    std::snprintf(key, sizeof(key), "lambda=%g", lam);
    out[std::string(key) + " a(-z)=0"] = std::abs(a.eval(-zj));
    out[std::string(key) + " a(z)=2"] = std::abs(a.eval(zj) - 2.0);
    for (int s = 1; s < mu; ++s) {
      const LaurentPoly d = a.derivative(s);
      char dk[80];
      std::snprintf(dk, sizeof(dk), "%s d%d", key, s);
      out[std::string(dk) + " a(-z)"] = std::abs(d.eval(-zj));
      out[std::string(dk) + " a(z)"] = std::abs(d.eval(zj));
    }
  }
  return out;
}

double equivalence_gap(const FrequencySet& fs, int k) {
  const LaurentPoly a = exp_interp_mask(fs, k);
  const LaurentPoly d = dd_symbol(fs.n());
  double s = 0.0;
  for (int deg = -(2 * fs.n() - 1); deg <= 2 * fs.n() - 1; ++deg)
    s += std::abs(a.coeff(deg) - d.coeff(deg));
  return s;
}

double SampleGrid::x_of(std::size_t i) const {
  return static_cast<double>(offset + static_cast<long long>(i)) * std::pow(2.0, -level);
}

double SampleGrid::at_index(long long j) const {
  const long long i = j - offset;
  if (i < 0 || i >= static_cast<long long>(values.size())) return 0.0;
  return values[i];
}

SampleGrid refine(const SampleGrid& data, const LaurentPoly& mask) {
  if (data.values.empty()) return {data.level + 1, 2 * data.offset, {}};
  if (mask.is_zero()) throw std::invalid_argument("refine: zero mask");
  SampleGrid out;
  out.level = data.level + 1;
  out.offset = 2 * data.offset + mask.lo();
  out.values.assign(2 * (data.values.size() - 1) + mask.coeffs().size(), 0.0);
  for (std::size_t l = 0; l < data.values.size(); ++l) {
    const double f = data.values[l];
    if (f == 0.0) continue;
    for (std::size_t q = 0; q < mask.coeffs().size(); ++q) out.values[2 * l + q] += mask.coeffs()[q] * f;
  }
  return out;
}

MaskFamily::MaskFamily(FrequencySet fs, int shift) : fs_(std::move(fs)), shift_(shift) {}

LaurentPoly MaskFamily::level_mask(int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, exp_interp_mask(fs_, shift_ + k)).first;
  return it->second;
}

}  // namespace nswave
