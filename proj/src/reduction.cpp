#include "frobzeta/reduction.hpp"

namespace frobzeta {

RingMatrix family_eval(const MatrixFamily& f, const mpz_class& x) {
  RingMatrix r = f.m0;
  const mpz_class xs = f.ctx->reduced(x);
  for (std::size_t i = 0; i < r.a.size(); ++i) {
    if (f.m1.a[i] == 0) continue;
    addmul(r.a[i], xs, f.m1.a[i]);
    f.ctx->reduce(r.a[i]);
  }
  return r;
}

mpz_class family_eval_den(const MatrixFamily& f, const mpz_class& x) {
  return f.ctx->reduced(f.d0 + x * f.d1);
}

MatrixFamily reversed_family(const MatrixFamily& f, const mpz_class& c) {
  MatrixFamily r;
  r.ctx = f.ctx;
  r.dim = f.dim;
  r.m0 = f.m0;
  const mpz_class cs = f.ctx->reduced(c);
  for (std::size_t i = 0; i < r.m0.a.size(); ++i) {
    addmul(r.m0.a[i], cs, f.m1.a[i]);
    f.ctx->reduce(r.m0.a[i]);
  }
  r.m1 = mat_scalar_mul(f.m1, mpz_class(-1));
  r.d0 = f.ctx->reduced(f.d0 + c * f.d1);
  r.d1 = f.ctx->reduced(-f.d1);
  r.var = f.var;
  r.t_value = f.t_value;
  return r;
}

MatrixFamily denominator_family(const MatrixFamily& f) {
  MatrixFamily r;
  r.ctx = f.ctx;
  r.dim = 1;
  r.m0 = RingMatrix(f.ctx, 1, 1);
  r.m1 = RingMatrix(f.ctx, 1, 1);
  r.m0.at(0, 0) = f.d0;
  r.m1.at(0, 0) = f.d1;
  r.d0 = 1;
  r.d1 = 0;
  r.var = f.var;
  r.t_value = f.t_value;
  return r;
}

MatrixFamily vertical_family(const CurveData& curve, RingCtxPtr ctx) {
  const int g = curve.g;
  MatrixFamily f;
  f.ctx = ctx;
  f.dim = 2 * g;
  f.m0 = RingMatrix(ctx, 2 * g, 2 * g);
  f.m1 = RingMatrix(ctx, 2 * g, 2 * g);
  for (int i = 0; i < 2 * g; ++i) {
    BezoutPair bz = compute_bezout(curve, i);
    RingPoly R = rebase(bz.R, ctx);
    RingPoly Sd = rebase(poly_derivative(bz.S), ctx);
    // column i+1: (2t-1)R_i + 2S_i' = t*(2R_i) + (2S_i' - R_i); degrees <= 2g-1
    for (int r = 0; r < 2 * g; ++r) {
      mpz_class cst = (std::size_t(r) < Sd.c.size() ? 2 * Sd.c[std::size_t(r)] : mpz_class(0)) -
                      (std::size_t(r) < R.c.size() ? R.c[std::size_t(r)] : mpz_class(0));
      f.m0.at(r, i) = ctx->reduced(cst);
      f.m1.at(r, i) =
          ctx->reduced(std::size_t(r) < R.c.size() ? 2 * R.c[std::size_t(r)] : mpz_class(0));
    }
  }
  f.d0 = ctx->reduced(mpz_class(-1));
  f.d1 = ctx->reduced(mpz_class(2));
  f.var = 't';
  return f;
}

MatrixFamily horizontal_family(const CurveData& curve, const mpz_class& t, RingCtxPtr ctx) {
  const int g = curve.g;
  const int m = 2 * g + 1;
  MatrixFamily f;
  f.ctx = ctx;
  f.dim = m;
  f.m0 = RingMatrix(ctx, m, m);
  f.m1 = RingMatrix(ctx, m, m);
  const mpz_class two_t_minus_1 = ctx->reduced(2 * t - 1);
  const mpz_class dconst = ctx->reduced(mpz_class(2 * g + 1) * two_t_minus_1);
  for (int h = 1; h < m; ++h) {
    f.m0.at(h, h - 1) = dconst;            // D(s) constant part on the subdiagonal
    f.m1.at(h, h - 1) = ctx->reduced(-2);  // and -2s
  }
  // last column: C_h(s) = 2 P_h s - (2t-1) h P_h
  for (int h = 0; h < m; ++h) {
    const mpz_class& Ph = curve.P[std::size_t(h)];
    f.m0.at(h, m - 1) = ctx->reduced(-two_t_minus_1 * h * Ph);
    f.m1.at(h, m - 1) = ctx->reduced(2 * Ph);
  }
  f.d0 = dconst;
  f.d1 = ctx->reduced(-2);
  f.var = 's';
  f.t_value = t;
  return f;
}

DifferentialVec apply_step(const MatrixFamily& f, long long x, const DifferentialVec& v,
                           bool divide) {
  if (int(v.coeffs.size()) != f.dim) raise(Errc::ShapeMismatch, "apply_step dimension mismatch");
  const RingCtx& R = *f.ctx;
  const mpz_class xz(static_cast<long>(x));
  DifferentialVec out;
  out.ctx = v.ctx;
  out.s = v.s;
  out.t = v.t;
  out.coeffs.assign(v.coeffs.size(), mpz_class(0));
  const mpz_class D = family_eval_den(f, xz);
  if (f.var == 's') {
    // sparse shape: subdiagonal D(s), last column C(s)
    const int m = f.dim;
    const mpz_class& top = v.coeffs[std::size_t(m - 1)];
    for (int h = 0; h < m; ++h) {
      mpz_class acc = 0;
      if (h > 0) addmul(acc, D, v.coeffs[std::size_t(h - 1)]);
      if (top != 0) {
        mpz_class ch = R.reduced(f.m0.at(h, m - 1) + xz * f.m1.at(h, m - 1));
        addmul(acc, ch, top);
      }
      out.coeffs[std::size_t(h)] = R.reduced(acc);
    }
    out.s = v.s - 1;
  } else {
    RingMatrix M = family_eval(f, xz);
    out.coeffs = mat_vec_mul(M, v.coeffs);
    out.t = v.t - 1;
  }
  if (divide) {
    if (R.is_unit(D)) {
      const mpz_class di = inv_unit_raw(R, D);
      for (auto& c : out.coeffs) mul_mod(R, c, c, di);
    } else {
      for (auto& c : out.coeffs) c = div_exact_raw(R, c, D);
    }
  }
  return out;
}

DifferentialVec to_minus_one_space(const DifferentialVec& v) {
  if (v.s != -1 || v.coeffs.empty() || v.coeffs.front() != 0)
    raise(Errc::InternalError, "vector is not in the image of the s = 0 step");
  DifferentialVec out;
  out.ctx = v.ctx;
  out.s = -1;
  out.t = v.t;
  out.coeffs.assign(v.coeffs.begin() + 1, v.coeffs.end());
  return out;
}

}  // namespace frobzeta
