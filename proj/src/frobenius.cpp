#include "frobzeta/frobenius.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace frobzeta {

namespace {

mpz_class half_odd_t(const mpz_class& p, int j) {
  // ((2j+1)p - 1)/2, an integer since p is odd
  mpz_class t = (2 * j + 1) * p - 1;
  mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 2);
  return t;
}

std::vector<RingMatrix> run_engine(const MatrixFamily& f, const IntervalRequest& req,
                                   bool naive) {
  return naive ? naive_interval_products(f, req) : interval_products(f, req);
}

// Inverse of the N x N Vandermonde matrix V[r][i] = (r+1)^i; invertible mod p
// since its determinant is a product of integers below N < p.
RingMatrix vandermonde_inverse(const RingCtxPtr& ctx, int N) {
  RingMatrix V(ctx, N, N);
  for (int r = 0; r < N; ++r) {
    mpz_class pw = 1;
    for (int i = 0; i < N; ++i) {
      V.at(r, i) = pw;
      pw = ctx->reduced(pw * (r + 1));
    }
  }
  return mat_inverse(V);
}

}  // namespace

HorizontalBlocks horizontal_block_matrices(const CurveData& curve, int j,
                                           const FrobeniusOptions& opts) {
  const int g = curve.g, N = curve.N;
  const long long p = curve.p_ll();
  HorizontalBlocks hb;
  hb.t = half_odd_t(curve.p, j);
  hb.L = (2 * g + 1) * j + 2 * g;
  hb.Lprime = std::min(N, hb.L);
  const int L = hb.L, Lp = hb.Lprime;

  MatrixFamily fam = horizontal_family(curve, hb.t, curve.ctxN);
  // run the ascending-argument products through the descending-order engine
  const mpz_class c = mpz_class(Lp) * curve.p - 2 * g - 1;
  MatrixFamily revM = reversed_family(fam, c);
  MatrixFamily revD = reversed_family(denominator_family(fam), c);
  IntervalRequest req;
  for (int k = 0; k < Lp; ++k)
    req.intervals.emplace_back(k * p, k * p + p - 2 * g - 2);
  std::vector<RingMatrix> mres = run_engine(revM, req, opts.use_naive_engine);
  std::vector<RingMatrix> dres = run_engine(revD, req, opts.use_naive_engine);

  hb.M.resize(std::size_t(L), RingMatrix(curve.ctxN, 2 * g + 1, 2 * g + 1));
  hb.D.resize(std::size_t(L), mpz_class(0));
  for (int k = 1; k <= Lp; ++k) {
    hb.M[std::size_t(k - 1)] = std::move(mres[std::size_t(Lp - k)]);
    hb.D[std::size_t(k - 1)] = dres[std::size_t(Lp - k)].at(0, 0);
  }

  if (L > N) {
    // Taylor pieces G_i = F^(i)(0) p^i / i! from M(k) = F(kp), k = 1..N,
    // then the remaining M(k) by evaluating the series at k.
    RingMatrix Vinv = vandermonde_inverse(curve.ctxN, N);
    std::vector<RingMatrix> Gm(std::size_t(N), RingMatrix(curve.ctxN, 2 * g + 1, 2 * g + 1));
    std::vector<mpz_class> Gd(std::size_t(N), mpz_class(0));
    for (int i = 0; i < N; ++i) {
      RingMatrix acc(curve.ctxN, 2 * g + 1, 2 * g + 1);
      mpz_class accd = 0;
      for (int k = 1; k <= N; ++k) {
        const mpz_class& w = Vinv.at(i, k - 1);
        if (w == 0) continue;
        acc = mat_add(acc, mat_scalar_mul(hb.M[std::size_t(k - 1)], w));
        accd += w * hb.D[std::size_t(k - 1)];
      }
      Gm[std::size_t(i)] = std::move(acc);
      Gd[std::size_t(i)] = curve.ctxN->reduced(accd);
    }
    for (int k = N + 1; k <= L; ++k) {
      const mpz_class kz(k);
      RingMatrix A = Gm[std::size_t(N - 1)];
      mpz_class Ad = Gd[std::size_t(N - 1)];
      for (int i = N - 2; i >= 0; --i) {
        A = mat_add(mat_scalar_mul(A, kz), Gm[std::size_t(i)]);
        Ad = curve.ctxN->reduced(Ad * kz + Gd[std::size_t(i)]);
      }
      hb.M[std::size_t(k - 1)] = std::move(A);
      hb.D[std::size_t(k - 1)] = Ad;
    }
  }

  for (int k = 1; k <= L; ++k)
    if (!curve.ctxN->is_unit(hb.D[std::size_t(k - 1)]))
      raise(Errc::InternalError, "horizontal block denominator D(k) is not a unit");
  return hb;
}

std::vector<DifferentialVec> horizontal_phase(const CurveData& curve, const BCoeffTable& btable,
                                              int j, const FrobeniusOptions& opts) {
  const int g = curve.g;
  const long long p = curve.p_ll();
  const RingCtxPtr& R1 = curve.ctxN1;

  HorizontalBlocks hb = horizontal_block_matrices(curve, j, opts);
  MatrixFamily fam = horizontal_family(curve, hb.t, R1);
  const long long t_ll = ((2 * j + 1) * p - 1) / 2;

  // lift block matrices into R1 by least representatives; denominators are
  // units mod p, hence invertible in R1
  std::vector<RingMatrix> liftM;
  std::vector<mpz_class> liftDinv;
  liftM.reserve(std::size_t(hb.L));
  liftDinv.reserve(std::size_t(hb.L));
  for (int k = 1; k <= hb.L; ++k) {
    liftM.push_back(rebase(hb.M[std::size_t(k - 1)], R1));
    liftDinv.push_back(inv_unit_raw(*R1, hb.D[std::size_t(k - 1)]));
  }

  auto check_one_correct = [&](const DifferentialVec& v) {
    if (!opts.check_invariants) return;
    if (!mpz_divisible_p(v.coeffs[0].get_mpz_t(), curve.p.get_mpz_t()))
      raise(Errc::DivisibilityViolated, "horizontal vector lost 1-correctness");
  };

  std::vector<DifferentialVec> out;
  out.reserve(std::size_t(2 * g));
  for (int i = 0; i < 2 * g; ++i) {
    const int mstart = i + (2 * g + 1) * j + 1;
    DifferentialVec v;
    v.ctx = R1;
    v.s = (long long)mstart * p - 1;
    v.t = t_ll;
    v.coeffs.assign(std::size_t(2 * g + 1), mpz_class(0));
    v.coeffs[0] = btable.b(j, (2 * g + 1) * j);
    check_one_correct(v);
    for (int m = mstart; m >= 1; --m) {
      for (int l = 1; l <= 2 * g + 1; ++l) v = apply_step(fam, (long long)m * p - l, v, true);
      // transport across ((m-1)p, mp-2g-2] with the precomputed block
      v.coeffs = mat_vec_mul(liftM[std::size_t(m - 1)], v.coeffs);
      for (auto& x : v.coeffs) mul_mod(*R1, x, x, liftDinv[std::size_t(m - 1)]);
      v.s = (long long)(m - 1) * p;
      v = apply_step(fam, (long long)(m - 1) * p, v, true);
      const long r = long(m - 1) - i - 1;
      if (r >= 0) {
        v.coeffs[0] += btable.b(j, r);
        R1->reduce(v.coeffs[0]);
      }
      check_one_correct(v);
    }
    if (v.s != -1) raise(Errc::InternalError, "horizontal reduction did not land at s = -1");
    out.push_back(to_minus_one_space(v));
  }
  return out;
}

VerticalBlocks vertical_block_matrices(const CurveData& curve, const FrobeniusOptions& opts) {
  const int N = curve.N;
  const RingCtxPtr ctxv = (N == 1) ? curve.ctxN : curve.ctxN1;
  MatrixFamily fam = vertical_family(curve, ctxv);

  auto thi = [&](int j) { return ((2 * j + 1) * curve.p_ll() - 1) / 2; };
  auto tlo = [&](int j) { return j == 0 ? 0LL : thi(j - 1); };
  const long long c = thi(N - 1) + 1;
  MatrixFamily revM = reversed_family(fam, mpz_class(static_cast<long>(c)));
  MatrixFamily revD = reversed_family(denominator_family(fam), mpz_class(static_cast<long>(c)));
  IntervalRequest req;
  for (int j = N - 1; j >= 0; --j) req.intervals.emplace_back(c - thi(j) - 1, c - tlo(j) - 1);
  std::vector<RingMatrix> mres = run_engine(revM, req, opts.use_naive_engine);
  std::vector<RingMatrix> dres = run_engine(revD, req, opts.use_naive_engine);

  VerticalBlocks vb;
  vb.M.resize(std::size_t(N), RingMatrix(ctxv, fam.dim, fam.dim));
  vb.D.resize(std::size_t(N));
  vb.X.resize(std::size_t(N), RingMatrix(ctxv, fam.dim, fam.dim));
  for (int j = 0; j < N; ++j) {
    vb.M[std::size_t(j)] = std::move(mres[std::size_t(N - 1 - j)]);
    vb.D[std::size_t(j)] = dres[std::size_t(N - 1 - j)].at(0, 0);
  }
  for (int j = 0; j < N; ++j) {
    RingMatrix& X = vb.X[std::size_t(j)];
    if (j == 0) {
      X = mat_scalar_mul(vb.M[0], inv_unit_raw(*ctxv, vb.D[0]));
    } else {
      if (valuation_raw(*ctxv, vb.D[std::size_t(j)]) != 1)
        raise(Errc::ValuationAssertionFailed,
              "vertical block denominator D_" + std::to_string(j) + " has valuation != 1");
      if (opts.check_invariants) {
        for (const auto& e : vb.M[std::size_t(j)].a)
          if (!mpz_divisible_p(e.get_mpz_t(), curve.p.get_mpz_t()))
            raise(Errc::InternalError, "vertical block M_j is not zero mod p");
      }
      X = vb.M[std::size_t(j)];
      for (auto& e : X.a) e = div_exact_raw(*ctxv, e, vb.D[std::size_t(j)]);
    }
  }
  return vb;
}

std::vector<DifferentialVec> vertical_phase(const CurveData& curve,
                                            const std::vector<std::vector<DifferentialVec>>& w,
                                            const FrobeniusOptions& opts) {
  const int g = curve.g, N = curve.N;
  const RingCtxPtr ctxv = (N == 1) ? curve.ctxN : curve.ctxN1;
  VerticalBlocks vb = vertical_block_matrices(curve, opts);

  std::vector<DifferentialVec> out;
  out.reserve(std::size_t(2 * g));
  for (int i = 0; i < 2 * g; ++i) {
    std::vector<mpz_class> v(std::size_t(2 * g), mpz_class(0));
    for (std::size_t k = 0; k < v.size(); ++k)
      v[k] = ctxv->reduced(w[std::size_t(N - 1)][std::size_t(i)].coeffs[k]);
    for (int j = N - 1; j >= 1; --j) {
      v = mat_vec_mul(vb.X[std::size_t(j)], v);
      for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] += w[std::size_t(j - 1)][std::size_t(i)].coeffs[k];
        ctxv->reduce(v[k]);
      }
    }
    v = mat_vec_mul(vb.X[0], v);
    DifferentialVec d;
    d.ctx = curve.ctxN;
    d.s = -1;
    d.t = 0;
    d.coeffs.resize(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) d.coeffs[k] = curve.ctxN->reduced(v[k]);
    out.push_back(std::move(d));
  }
  return out;
}

RingMatrix frobenius_matrix(const mpz_class& p, int N, const std::vector<mpz_class>& Qcoeffs,
                            const FrobeniusOptions& opts) {
  CurveData curve = validate(p, N, Qcoeffs);
  BCoeffTable bt = compute_b_table(curve);
  std::vector<std::vector<DifferentialVec>> w{std::size_t(N)};
  if (opts.threads > 1 && N > 1) {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    int nthreads = std::min(opts.threads, N);
    for (int tn = 0; tn < nthreads; ++tn)
      pool.emplace_back([&]() {
        for (;;) {
          std::size_t j;
          {
            std::lock_guard<std::mutex> lk(mu);
            if (next >= std::size_t(N)) return;
            j = next++;
          }
          w[j] = horizontal_phase(curve, bt, int(j), opts);
        }
      });
    for (auto& th : pool) th.join();
  } else {
    for (int j = 0; j < N; ++j) w[std::size_t(j)] = horizontal_phase(curve, bt, j, opts);
  }
  std::vector<DifferentialVec> ws = vertical_phase(curve, w, opts);
  RingMatrix F(curve.ctxN, 2 * curve.g, 2 * curve.g);
  for (int i = 0; i < 2 * curve.g; ++i)
    for (int r = 0; r < 2 * curve.g; ++r)
      F.at(r, i) = ws[std::size_t(i)].coeffs[std::size_t(r)];
  return F;
}

mpz_class wilson_denominator_mod_p(const CurveData& curve) {
  RingCtx Rp(curve.p, 1);
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), unsigned(2 * curve.g + 1));
  mpz_class d = Rp.reduced(pow_mod_ui(Rp, mpz_class(2), unsigned(2 * curve.g + 1)) * f);
  return inv_unit_raw(Rp, d);
}

}  // namespace frobzeta
