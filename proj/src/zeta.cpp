#include "frobzeta/zeta.hpp"

#include <algorithm>

namespace frobzeta {

CharPolyModP charpoly_frobenius(const RingMatrix& M) {
  if (M.rows != M.cols) raise(Errc::ShapeMismatch, "charpoly of a non-square matrix");
  CharPolyModP cp;
  cp.ctx = M.ctx;
  cp.coeffs = charpoly_berkowitz(M).c;
  return cp;
}

mpz_class ZetaNumerator::charpoly_coeff(int m) const {
  // c_{2g-i} = a_i with a_0 = 1, a_{2g-i} = p^(g-i) a_i
  const int i = 2 * g - m;
  if (i == 0) return 1;
  if (i <= g) return a[std::size_t(i - 1)];
  const int j = 2 * g - i;  // 0 <= j < g
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), unsigned(i - g));
  return j == 0 ? pw : mpz_class(pw * a[std::size_t(j - 1)]);
}

ZetaNumerator recover_zeta(const CharPolyModP& cp, const mpz_class& p, int g, int N) {
  ZetaNumerator z;
  z.g = g;
  z.p = p;
  z.a.resize(std::size_t(g));
  z.exact.assign(std::size_t(g), false);
  mpz_class pN;
  mpz_pow_ui(pN.get_mpz_t(), p.get_mpz_t(), unsigned(N));
  for (int i = 1; i <= g; ++i) {
    const mpz_class& c = cp.coeffs[std::size_t(2 * g - i)];
    z.a[std::size_t(i - 1)] = lift_signed(*cp.ctx, c);
    // exact iff 2 binom(2g,i) p^(i/2) < p^N, squared to stay in integers
    mpz_class bin, pi;
    mpz_bin_uiui(bin.get_mpz_t(), unsigned(2 * g), unsigned(i));
    mpz_pow_ui(pi.get_mpz_t(), p.get_mpz_t(), unsigned(i));
    z.exact[std::size_t(i - 1)] = 4 * bin * bin * pi < pN * pN;
  }
  z.complete = std::all_of(z.exact.begin(), z.exact.end(), [](bool b) { return b; });
  if (z.complete) {
    mpz_class sum = 0;
    for (int m = 0; m <= 2 * g; ++m) sum += z.charpoly_coeff(m);
    z.jacobian_order = sum;  // charpoly evaluated at 1
  }
  return z;
}

namespace {

// quadratic-residue table for F_p (index < p)
std::vector<bool> square_table(long long p) {
  std::vector<bool> qr(std::size_t(p), false);
  for (long long y = 0; 2 * y <= p; ++y) qr[std::size_t((y * y) % p)] = true;
  return qr;
}

long long least_non_residue(long long p, const std::vector<bool>& qr) {
  for (long long d = 2; d < p; ++d)
    if (!qr[std::size_t(d)]) return d;
  raise(Errc::InternalError, "no quadratic non-residue found");
}

}  // namespace

long long point_count_naive(long long p, const std::vector<mpz_class>& Qcoeffs, int k) {
  if (k != 1 && k != 2) raise(Errc::MalformedRequest, "k must be 1 or 2");
  mpz_class pk = mpz_class(static_cast<long>(p));
  if (k == 2) pk = pk * static_cast<long>(p);
  if (pk > 1000000) raise(Errc::TooLarge, "p^k exceeds the 10^6 brute-force cap");

  std::vector<long long> q(Qcoeffs.size());
  for (std::size_t i = 0; i < Qcoeffs.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), Qcoeffs[i].get_mpz_t(), static_cast<unsigned long>(p));
    q[i] = mpz_get_si(r.get_mpz_t());
  }
  std::vector<bool> qr = square_table(p);

  long long count = 1;  // point at infinity
  if (k == 1) {
    for (long long x = 0; x < p; ++x) {
      long long z = 0;
      for (std::size_t i = q.size(); i-- > 0;) z = (z * x + q[i]) % p;
      if (z == 0)
        count += 1;
      else if (qr[std::size_t(z)])
        count += 2;
    }
    return count;
  }

  // F_{p^2} = F_p[u]/(u^2 - d), d the least non-residue; an element za + zb*u
  // is a square iff its norm za^2 - d zb^2 is a square in F_p.
  const long long d = least_non_residue(p, qr);
  for (long long xa = 0; xa < p; ++xa)
    for (long long xb = 0; xb < p; ++xb) {
      long long za = 0, zb = 0;
      for (std::size_t i = q.size(); i-- > 0;) {
        // (za + zb u) * (xa + xb u) + q_i
        long long na = (za * xa + (zb * xb) % p * d + q[i]) % p;
        long long nb = (za * xb + zb * xa) % p;
        za = na;
        zb = nb;
      }
      if (za == 0 && zb == 0) {
        count += 1;
      } else {
        long long norm = ((za * za - (zb * zb) % p * d) % p + p) % p;
        if (qr[std::size_t(norm)]) count += 2;
      }
    }
  return count;
}

}  // namespace frobzeta
