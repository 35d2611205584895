#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace nswave {

using cplx = std::complex<double>;

/// Finitely supported real coefficient sequence over integer degrees,
/// p(z) = sum_j c_j z^j with c_lo != 0 and c_hi != 0 unless p == 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;  // identically zero
  LaurentPoly(int lo, std::vector<double> coeffs);

  static LaurentPoly constant(double c);
  static LaurentPoly monomial(int degree, double c = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int degree) const;

  double norm1() const;
  double norm_inf() const;

  cplx eval(cplx z) const;
  double eval(double x) const;
  cplx operator()(cplx z) const { return eval(z); }

  LaurentPoly derivative(int order = 1) const;
  LaurentPoly reflect() const;            // p(1/z)
  LaurentPoly shifted(int s) const;       // z^s p(z)

 private:
  int lo_ = 0;
  std::vector<double> coeffs_;  // ascending degree from lo_; empty means zero
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly scale(const LaurentPoly& p, double c);

inline LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) { return add(p, q); }
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) { return mul(p, q); }
inline LaurentPoly operator*(double c, const LaurentPoly& p) { return scale(p, c); }

/// Roots of z^{-lo} p(z), with the leading coefficient of that polynomial.
struct RootSet {
  struct Root {
    cplx value;
    int multiplicity = 1;
  };
  std::vector<Root> roots;
  double leading = 1.0;

  int count() const;                    // number of roots with multiplicity
  std::vector<cplx> expanded() const;   // flattened, multiplicity copies each
};

RootSet roots(const LaurentPoly& p);
LaurentPoly from_roots(const RootSet& rs);

struct InversePair {
  cplx z;
  cplx w;  // z * w ~ 1
};

struct InversePairing {
  std::vector<InversePair> pairs;
  // indices into `pairs` of pairs that are complex conjugates of each other
  std::vector<std::pair<int, int>> conjugate_quads;
  std::vector<cplx> exceptional;  // roots at ±1 (self-inverse up to sign)
};

InversePairing inverse_pairs(const RootSet& rs, double tol = 1e-6);

}  // namespace nswave
