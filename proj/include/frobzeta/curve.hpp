#pragma once

// Input validation for y^2 = Q(x) over F_p, the coefficient table of the
// truncated Frobenius series, and the Bezout data x^i = R_i Q + S_i Q'.

#include "frobzeta/ring.hpp"

namespace frobzeta {

struct CurveData {
  mpz_class p;
  int N = 0;  // target precision exponent
  int g = 0;  // genus; deg Q = 2g+1
  std::vector<mpz_class> Q;  // length 2g+2, monic, canonical mod p^(N+1)
  std::vector<mpz_class> P;  // Q - x^(2g+1), length 2g+1, canonical mod p^(N+1)
  RingCtxPtr ctxN;   // R0 = Z/p^N
  RingCtxPtr ctxN1;  // R1 = Z/p^(N+1)

  long long p_ll() const { return mpz_get_si(p.get_mpz_t()); }
};

/// Gate for all inputs: primality, odd degree, monic, genus >= 1,
/// squarefree reduction, and p > (2N-1)(2g+1).
CurveData validate(const mpz_class& p, int N, const std::vector<mpz_class>& Qcoeffs);

struct BCoeffTable {
  int N = 0;
  int g = 0;
  RingCtxPtr ctx;  // R1
  // C[j][r] = coefficient of x^r in Q^j, 0 <= r <= (2g+1)j
  std::vector<std::vector<mpz_class>> C;
  // B[j][r] = p * C[j][r] * sum_{k=j}^{N-1} (-1)^(k+j) binom(-1/2,k) binom(k,j)
  std::vector<std::vector<mpz_class>> B;

  /// B[j][r] with the r < 0 (and r out of range) convention of zero.
  mpz_class b(int j, long r) const {
    if (r < 0 || r >= long(B[std::size_t(j)].size())) return 0;
    return B[std::size_t(j)][std::size_t(r)];
  }
};

BCoeffTable compute_b_table(const CurveData& curve);

struct BezoutPair {
  int i = 0;
  RingPoly R;  // deg <= 2g-1
  RingPoly S;  // deg <= 2g
};

/// Solves x^i = R_i Q + S_i Q' over R1 (0 <= i < 2g).
BezoutPair compute_bezout(const CurveData& curve, int i);

}  // namespace frobzeta
