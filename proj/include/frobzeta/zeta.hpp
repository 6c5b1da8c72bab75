#pragma once

// Characteristic polynomial of Frobenius mod p^N, exact zeta-numerator
// recovery through the Weil bounds and the functional equation, and the
// brute-force point-counting oracle.

#include "frobzeta/frobenius.hpp"

namespace frobzeta {

struct CharPolyModP {
  RingCtxPtr ctx;                // R0
  std::vector<mpz_class> coeffs; // ascending, monic, length 2g+1
};

CharPolyModP charpoly_frobenius(const RingMatrix& M);

struct ZetaNumerator {
  int g = 0;
  mpz_class p;
  std::vector<mpz_class> a;   // signed a_1..a_g (balanced lifts; exact where flagged)
  std::vector<bool> exact;    // per-coefficient: Weil bound pins the lift
  bool complete = false;      // all of a_1..a_g exact
  mpz_class jacobian_order;   // charpoly(1) when complete

  /// Full charpoly coefficient c_m (ascending) from a_1..a_g via the
  /// functional equation; only meaningful when complete.
  mpz_class charpoly_coeff(int m) const;
};

/// Lifts c_{2g-i} to the signed residue in (-p^N/2, p^N/2], marks it exact iff
/// 2 binom(2g,i) p^(i/2) < p^N, and fills the reflected half by the functional
/// equation a_{2g-i} = p^(g-i) a_i.
ZetaNumerator recover_zeta(const CharPolyModP& cp, const mpz_class& p, int g, int N);

/// Number of projective points of the smooth model of y^2 = Q(x) over F_{p^k},
/// k in {1,2} (one point at infinity for the odd-degree model). TooLarge above
/// p^k = 10^6.
long long point_count_naive(long long p, const std::vector<mpz_class>& Qcoeffs, int k);

/// CLI entry point (subcommands frobenius / zeta / count / selftest).
int cli_main(int argc, char** argv);

}  // namespace frobzeta
