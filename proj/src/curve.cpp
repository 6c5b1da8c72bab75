#include "frobzeta/curve.hpp"

#include <algorithm>

namespace frobzeta {

namespace {

// gcd of univariate polynomials over F_p (coefficients canonical mod p)
std::vector<mpz_class> fp_gcd(const mpz_class& p, std::vector<mpz_class> a,
                              std::vector<mpz_class> b) {
  auto trim = [](std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto modp = [&](mpz_class x) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return x;
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b
    mpz_class lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t()) == 0)
      raise(Errc::InternalError, "fp_gcd: leading coefficient not invertible");
    while (a.size() >= b.size()) {
      mpz_class f = modp(a.back() * lead_inv);
      std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = modp(a[off + i] - f * b[i]);
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace

CurveData validate(const mpz_class& p, int N, const std::vector<mpz_class>& Qcoeffs) {
  if (N < 1) raise(Errc::BadExponent, "N must be >= 1");
  if (N > 1024) raise(Errc::TooLarge, "N beyond the supported desk-scale range");
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > 50)
    raise(Errc::TooLarge, "p beyond the supported machine-word range");
  if (Qcoeffs.size() % 2 != 0 || Qcoeffs.empty() || Qcoeffs.back() != 1)
    raise(Errc::EvenDegreeOrNotMonic, "Q must be monic of odd degree 2g+1");
  if (Qcoeffs.size() == 2) raise(Errc::GenusZero, "deg Q = 1 gives genus 0");
  const int g = int(Qcoeffs.size() - 2) / 2;

  CurveData cd;
  cd.p = p;
  cd.N = N;
  cd.g = g;
  cd.ctxN = ring_create(p, unsigned(N));        // checks p >= 3 prime, rejects p = 2
  cd.ctxN1 = ring_create(p, unsigned(N) + 1);

  const long bound = (2L * N - 1) * (2L * g + 1);
  if (p <= mpz_class(bound))
    raise(Errc::PrecisionAssumptionViolated,
          "p must exceed (2N-1)(2g+1) = " + std::to_string(bound));

  // squarefree check on the reduction: gcd(Q mod p, Q' mod p) constant
  std::vector<mpz_class> qp(Qcoeffs.size()), dqp(Qcoeffs.size() - 1);
  for (std::size_t i = 0; i < Qcoeffs.size(); ++i)
    mpz_fdiv_r(qp[i].get_mpz_t(), Qcoeffs[i].get_mpz_t(), p.get_mpz_t());
  for (std::size_t i = 1; i < Qcoeffs.size(); ++i) {
    dqp[i - 1] = Qcoeffs[i] * mpz_class(long(i));
    mpz_fdiv_r(dqp[i - 1].get_mpz_t(), dqp[i - 1].get_mpz_t(), p.get_mpz_t());
  }
  std::vector<mpz_class> gq = fp_gcd(p, qp, dqp);
  if (gq.size() != 1)
    raise(Errc::SingularCurve, "disc(Q) = 0 mod p (Q mod p has a repeated root)");

  cd.Q.resize(Qcoeffs.size());
  for (std::size_t i = 0; i < Qcoeffs.size(); ++i) cd.Q[i] = cd.ctxN1->reduced(Qcoeffs[i]);
  cd.P.assign(cd.Q.begin(), cd.Q.end() - 1);  // drop the monic x^(2g+1) term
  return cd;
}

BCoeffTable compute_b_table(const CurveData& curve) {
  const int N = curve.N, g = curve.g;
  const RingCtxPtr& R1 = curve.ctxN1;
  BCoeffTable t;
  t.N = N;
  t.g = g;
  t.ctx = R1;
  t.C.resize(std::size_t(N));
  t.B.resize(std::size_t(N));

  RingPoly Qp(R1, curve.Q);
  RingPoly power(R1);
  power.c = {mpz_class(1)};
  for (int j = 0; j < N; ++j) {
    t.C[std::size_t(j)] = power.c;
    t.C[std::size_t(j)].resize(std::size_t((2 * g + 1) * j) + 1, mpz_class(0));
    if (j + 1 < N) power = poly_mul(power, Qp);
  }

  // S_j = sum_{k=j}^{N-1} (-1)^(k+j) binom(-1/2,k) binom(k,j)
  //     = (-1)^j sum_k binom(2k,k) binom(k,j) / 4^k
  std::vector<mpz_class> S(std::size_t(N), mpz_class(0));
  mpz_class inv4 = inv_unit_raw(*R1, mpz_class(4));
  for (int j = 0; j < N; ++j) {
    mpz_class acc = 0;
    for (int k = j; k < N; ++k) {
      mpz_class term, bk, kj;
      mpz_bin_uiui(bk.get_mpz_t(), 2 * unsigned(k), unsigned(k));
      mpz_bin_uiui(kj.get_mpz_t(), unsigned(k), unsigned(j));
      mul_mod(*R1, term, R1->reduced(bk), R1->reduced(kj));
      mul_mod(*R1, term, term, pow_mod_ui(*R1, inv4, unsigned(k)));
      acc += term;
    }
    if (j % 2) acc = -acc;
    S[std::size_t(j)] = R1->reduced(acc);
  }

  for (int j = 0; j < N; ++j) {
    mpz_class factor;
    mul_mod(*R1, factor, R1->reduced(curve.p), S[std::size_t(j)]);
    auto& row = t.B[std::size_t(j)];
    row.resize(t.C[std::size_t(j)].size());
    for (std::size_t r = 0; r < row.size(); ++r)
      mul_mod(*R1, row[r], factor, t.C[std::size_t(j)][r]);
  }
  return t;
}

BezoutPair compute_bezout(const CurveData& curve, int i) {
  const int g = curve.g;
  if (i < 0 || i >= 2 * g) raise(Errc::InternalError, "compute_bezout index out of range");
  const RingCtxPtr& R1 = curve.ctxN1;
  const int n = 4 * g + 1;  // unknowns: 2g coeffs of R, 2g+1 coeffs of S

  // Columns: x^j * Q (j < 2g), then x^j * Q' (j <= 2g); rows are coefficients
  // of x^0..x^4g. The determinant is the resultant of (Q, Q'), a unit here.
  RingMatrix Syl(R1, n, n);
  std::vector<mpz_class> dQ(std::size_t(2 * g) + 1);
  for (std::size_t k = 1; k < curve.Q.size(); ++k)
    dQ[k - 1] = R1->reduced(curve.Q[k] * mpz_class(long(k)));
  for (int j = 0; j < 2 * g; ++j)
    for (int k = 0; k <= 2 * g + 1; ++k) Syl.at(j + k, j) = curve.Q[std::size_t(k)];
  for (int j = 0; j <= 2 * g; ++j)
    for (int k = 0; k <= 2 * g; ++k) Syl.at(j + k, 2 * g + j) = dQ[std::size_t(k)];

  RingMatrix SylInv = mat_inverse(Syl);  // InternalNonUnitPivot if validation was bypassed
  BezoutPair out;
  out.i = i;
  out.R = RingPoly(R1);
  out.S = RingPoly(R1);
  out.R.c.resize(std::size_t(2 * g));
  out.S.c.resize(std::size_t(2 * g) + 1);
  for (int r = 0; r < 2 * g; ++r) out.R.c[std::size_t(r)] = SylInv.at(r, i);
  for (int r = 0; r <= 2 * g; ++r) out.S.c[std::size_t(r)] = SylInv.at(2 * g + r, i);
  return out;
}

}  // namespace frobzeta
