#pragma once

// The vertical and horizontal reduction families: square matrices of degree-<=1
// polynomials in one variable with a degree-<=1 scalar denominator, and single
// reduction steps applied to coefficient vectors of differentials.

#include "frobzeta/curve.hpp"

namespace frobzeta {

struct MatrixFamily {
  RingCtxPtr ctx;
  int dim = 0;
  RingMatrix m0, m1;  // M(X) = m0 + X*m1
  mpz_class d0, d1;   // D(X) = d0 + X*d1
  char var = 'x';     // 't' for vertical, 's' for horizontal
  mpz_class t_value;  // for horizontal families, the fixed t they were built at
};

RingMatrix family_eval(const MatrixFamily& f, const mpz_class& x);
mpz_class family_eval_den(const MatrixFamily& f, const mpz_class& x);
/// The family X -> M(c - X) (same denominator treatment); used to run
/// ascending-argument reduction products through the descending-order engine.
MatrixFamily reversed_family(const MatrixFamily& f, const mpz_class& c);
/// The denominator as a 1x1 family.
MatrixFamily denominator_family(const MatrixFamily& f);

/// Coefficient vector of an element of W_{s,t}: length 2g+1 for s >= 0
/// (basis x^(i+s) y^(-2t) dx/y), length 2g for s = -1.
struct DifferentialVec {
  RingCtxPtr ctx;
  long long s = 0;
  long long t = 0;
  std::vector<mpz_class> coeffs;
};

/// M_V as a family in t: column i+1 holds the coefficients of
/// (2t-1)R_i + 2S_i', i.e. constant part 2S_i' - R_i and linear part 2R_i;
/// D_V(t) = 2t - 1. Dimension 2g.
MatrixFamily vertical_family(const CurveData& curve, RingCtxPtr ctx);

/// M_H^t as a family in s: subdiagonal D(s) = (2g+1)(2t-1) - 2s, last column
/// C_h(s) = 2s P_h - (2t-1) h P_h. Dimension 2g+1.
MatrixFamily horizontal_family(const CurveData& curve, const mpz_class& t, RingCtxPtr ctx);

/// One reduction step: v <- M(x) v, optionally divided by D(x) entrywise via
/// div_exact. Decrements the s-index (horizontal) or t-index (vertical).
DifferentialVec apply_step(const MatrixFamily& f, long long x, const DifferentialVec& v,
                           bool divide);

/// Drops the (exactly zero) first coordinate of a length-(2g+1) vector in
/// W_{0,t} image, producing the W_{-1,t} representation.
DifferentialVec to_minus_one_space(const DifferentialVec& v);

}  // namespace frobzeta
