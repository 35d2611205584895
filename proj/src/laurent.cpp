#include "nswave/laurent.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nswave {

namespace {

constexpr double kTrimRel = 1e-13;  // cleanup threshold relative to ||p||_inf
constexpr double kClusterRadius = 1e-7;

void trim(int& lo, std::vector<double>& c) {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  if (m == 0.0) {
    lo = 0;
    c.clear();
    return;
  }
  const double thr = kTrimRel * m;
  std::size_t i0 = 0, i1 = c.size();
  while (i0 < i1 && std::abs(c[i0]) <= thr) ++i0;
  while (i1 > i0 && std::abs(c[i1 - 1]) <= thr) --i1;
  c = std::vector<double>(c.begin() + i0, c.begin() + i1);
  lo += static_cast<int>(i0);
}

}  // namespace

LaurentPoly::LaurentPoly(int lo, std::vector<double> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {
  for (double x : coeffs_) {
    if (!std::isfinite(x)) throw std::invalid_argument("LaurentPoly: non-finite coefficient");
  }
  trim(lo_, coeffs_);
}

LaurentPoly LaurentPoly::constant(double c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(int degree, double c) { return LaurentPoly(degree, {c}); }

double LaurentPoly::coeff(int degree) const {
  if (is_zero() || degree < lo_ || degree > hi()) return 0.0;
  return coeffs_[degree - lo_];
}

double LaurentPoly::norm1() const {
  double s = 0.0;
  for (double x : coeffs_) s += std::abs(x);
  return s;
}

double LaurentPoly::norm_inf() const {
  double m = 0.0;
  for (double x : coeffs_) m = std::max(m, std::abs(x));
  return m;
}

cplx LaurentPoly::eval(cplx z) const {
  if (is_zero()) return 0.0;
  if (z == cplx(0.0, 0.0)) {
    if (lo_ < 0) throw std::domain_error("LaurentPoly::eval: z = 0 with negative-degree terms");
    return lo_ == 0 ? cplx(coeffs_[0]) : cplx(0.0);
  }
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc * std::pow(z, lo_);
}

double LaurentPoly::eval(double x) const {
  if (is_zero()) return 0.0;
  if (x == 0.0) {
    if (lo_ < 0) throw std::domain_error("LaurentPoly::eval: z = 0 with negative-degree terms");
    return lo_ == 0 ? coeffs_[0] : 0.0;
  }
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc * std::pow(x, lo_);
}

LaurentPoly LaurentPoly::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative: order must be >= 0");
  LaurentPoly p = *this;
  for (int r = 0; r < order; ++r) {
    if (p.is_zero()) return p;
    std::vector<double> c(p.coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs_[i] * (p.lo_ + static_cast<int>(i));
    p = LaurentPoly(p.lo_ - 1, std::move(c));
  }
  return p;
}

LaurentPoly LaurentPoly::reflect() const {
  if (is_zero()) return {};
  std::vector<double> c(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPoly(-hi(), std::move(c));
}

LaurentPoly LaurentPoly::shifted(int s) const {
  if (is_zero()) return {};
  return LaurentPoly(lo_ + s, coeffs_);
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const int lo = std::min(p.lo(), q.lo());
  const int hi = std::max(p.hi(), q.hi());
  std::vector<double> c(hi - lo + 1, 0.0);
  for (int d = p.lo(); d <= p.hi(); ++d) c[d - lo] += p.coeff(d);
  for (int d = q.lo(); d <= q.hi(); ++d) c[d - lo] += q.coeff(d);
  return LaurentPoly(lo, std::move(c));
}

LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<double> c(p.coeffs().size() + q.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return LaurentPoly(p.lo() + q.lo(), std::move(c));
}

LaurentPoly scale(const LaurentPoly& p, double c) {
  if (p.is_zero() || c == 0.0) return {};
  std::vector<double> v = p.coeffs();
  for (double& x : v) x *= c;
  return LaurentPoly(p.lo(), std::move(v));
}

int RootSet::count() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

std::vector<cplx> RootSet::expanded() const {
  std::vector<cplx> out;
  for (const auto& r : roots)
    for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
  return out;
}

namespace {

cplx poly_eval(const std::vector<double>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// One Schroeder step z - p p' / (p'^2 - p p''): quadratic also at multiple roots.
cplx schroeder_step(const std::vector<double>& c, const std::vector<double>& dc,
                    const std::vector<double>& d2c, cplx z) {
  const cplx v = poly_eval(c, z);
  const cplx v1 = poly_eval(dc, z);
  const cplx v2 = poly_eval(d2c, z);
  const cplx den = v1 * v1 - v * v2;
  if (std::abs(den) == 0.0) return z;
  return z - v * v1 / den;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

}  // namespace

RootSet roots(const LaurentPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("roots: polynomial is identically zero");
  const std::vector<double>& c = p.coeffs();  // coefficients of z^{-lo} p
  const int deg = static_cast<int>(c.size()) - 1;
  RootSet rs;
  rs.leading = c.back();
  if (deg == 0) return rs;

  // companion-matrix eigenvalues
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c.back();
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("roots: eigenvalue iteration did not converge");
  std::vector<cplx> raw(deg);
  for (int i = 0; i < deg; ++i) raw[i] = es.eigenvalues()[i];

  // Schroeder polishing collapses eigenvalue clusters of multiple roots
  const std::vector<double> dc = poly_derivative(c);
  const std::vector<double> d2c = poly_derivative(dc);
  for (cplx& z : raw) {
    for (int it = 0; it < 8; ++it) {
      const cplx znew = schroeder_step(c, dc, d2c, z);
      if (!std::isfinite(znew.real()) || !std::isfinite(znew.imag())) break;
      const double move = std::abs(znew - z);
      z = znew;
      if (move < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
  }

  // cluster within kClusterRadius to detect multiplicities
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> members{i};
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) < kClusterRadius) {
        members.push_back(j);
        used[j] = true;
      }
    }
    used[i] = true;
    cplx mean = 0.0;
    for (auto t : members) mean += raw[t];
    mean /= static_cast<double>(members.size());
    for (int it = 0; it < 4; ++it) mean = schroeder_step(c, dc, d2c, mean);
    rs.roots.push_back({mean, static_cast<int>(members.size())});
  }

  // residual check, scaled by the polynomial size at the root
  for (const auto& r : rs.roots) {
    const double scale = p.norm1() * std::pow(std::max(1.0, std::abs(r.value)), deg);
    if (std::abs(poly_eval(c, r.value)) > 1e-10 * scale)
      throw std::runtime_error("roots: residual above tolerance after polishing");
  }
  return rs;
}

LaurentPoly from_roots(const RootSet& rs) {
  std::vector<cplx> acc{1.0};
  for (const cplx& r : rs.expanded()) {
    std::vector<cplx> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * (-r);
      next[i + 1] += acc[i];
    }
    acc = std::move(next);
  }
  double maxabs = 0.0, maximag = 0.0;
  for (const cplx& v : acc) {
    maxabs = std::max(maxabs, std::abs(v));
    maximag = std::max(maximag, std::abs(v.imag()));
  }
  if (maximag > 1e-12 * std::max(1.0, maxabs))
    throw std::runtime_error("from_roots: roots not closed under conjugation, coefficients not real");
  std::vector<double> c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = acc[i].real() * rs.leading;
  return LaurentPoly(0, std::move(c));
}

InversePairing inverse_pairs(const RootSet& rs, double tol) {
  InversePairing out;
  std::vector<cplx> rem;
  for (const cplx& z : rs.expanded()) {
    if (std::abs(z - 1.0) <= tol || std::abs(z + 1.0) <= tol)
      out.exceptional.push_back(z);
    else
      rem.push_back(z);
  }
  std::vector<bool> used(rem.size(), false);
  for (std::size_t i = 0; i < rem.size(); ++i) {
    if (used[i]) continue;
    double best = -1.0;
    std::size_t bj = i;
    for (std::size_t j = 0; j < rem.size(); ++j) {
      if (j == i || used[j]) continue;
      const double d = std::abs(rem[i] * rem[j] - 1.0);
      if (best < 0.0 || d < best) {
        best = d;
        bj = j;
      }
    }
    if (best < 0.0 || best >= tol)
      throw std::runtime_error("inverse_pairs: unpaired root (tolerance too small?)");
    used[i] = used[bj] = true;
    out.pairs.push_back({rem[i], rem[bj]});
  }
  // group conjugate quadruples
  const double imag_tol = 1e-9;
  std::vector<bool> quaded(out.pairs.size(), false);
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    if (quaded[i] || std::abs(out.pairs[i].z.imag()) <= imag_tol) continue;
    for (std::size_t j = i + 1; j < out.pairs.size(); ++j) {
      if (quaded[j]) continue;
      const cplx zc = std::conj(out.pairs[i].z);
      if (std::abs(out.pairs[j].z - zc) <= tol || std::abs(out.pairs[j].w - zc) <= tol) {
        out.conjugate_quads.push_back({static_cast<int>(i), static_cast<int>(j)});
        quaded[i] = quaded[j] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace nswave
