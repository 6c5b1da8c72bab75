#pragma once

// The main algorithm: assemble the truncated Frobenius series terms, run the
// horizontal reduction phase per row (block products + Taylor/Vandermonde
// extension), then the vertical phase, producing the 2g x 2g Frobenius matrix
// to precision p^N.

#include "frobzeta/recurrence.hpp"

namespace frobzeta {

struct FrobeniusOptions {
  bool use_naive_engine = false;  // swap the BGS engine for the naive oracle
  bool check_invariants = true;   // assert the divisibility discipline as executed
  int threads = 1;                // parallelism across horizontal rows
};

struct HorizontalBlocks {
  mpz_class t;   // ((2j+1)p - 1)/2
  int L = 0;     // (2g+1)j + 2g
  int Lprime = 0;
  // M[k-1], D[k-1] = products over ((k-1)p, kp-2g-2], 1 <= k <= L, entries in R0
  std::vector<RingMatrix> M;
  std::vector<mpz_class> D;
};

HorizontalBlocks horizontal_block_matrices(const CurveData& curve, int j,
                                           const FrobeniusOptions& opts = {});

/// Reduces T_{i,j} to w_{i,j} in W_{-1,t} for i = 0..2g-1, correct mod p^N.
std::vector<DifferentialVec> horizontal_phase(const CurveData& curve, const BCoeffTable& btable,
                                              int j, const FrobeniusOptions& opts = {});

struct VerticalBlocks {
  std::vector<RingMatrix> M;  // M_j, 0 <= j < N
  std::vector<mpz_class> D;   // D_j (valuation 1 for j >= 1, unit for j = 0)
  std::vector<RingMatrix> X;  // X_j = D_j^{-1} M_j
};

VerticalBlocks vertical_block_matrices(const CurveData& curve, const FrobeniusOptions& opts = {});

/// Accumulates w_i = X_0 (w_{i,0} + X_1 (w_{i,1} + ...)) in W_{-1,0}, mod p^N.
std::vector<DifferentialVec> vertical_phase(const CurveData& curve,
                                            const std::vector<std::vector<DifferentialVec>>& w,
                                            const FrobeniusOptions& opts = {});

/// The 2g x 2g Frobenius matrix over R0; column i+1 is the reduction of the
/// image of x^i dx/y.
RingMatrix frobenius_matrix(const mpz_class& p, int N, const std::vector<mpz_class>& Qcoeffs,
                            const FrobeniusOptions& opts = {});

/// (2^(2g+1) (2g+1)!)^{-1} mod p: the closed form every horizontal block
/// denominator reduces to when N = 1.
mpz_class wilson_denominator_mod_p(const CurveData& curve);

}  // namespace frobzeta
