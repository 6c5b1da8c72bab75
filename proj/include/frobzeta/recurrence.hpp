#pragma once

// Interval products M(K_i, L_i) = M(L_i) M(L_i - 1) ... M(K_i + 1) of a linear
// matrix family over Z/p^e in soft-O(sqrt(K)) ring operations (baby-step /
// giant-step block products, grid extension by shifted evaluation, refining
// and gluing), plus the naive sequential oracle.

#include "frobzeta/reduction.hpp"

namespace frobzeta {

struct IntervalRequest {
  // pairs (K_i, L_i) with 0 <= K_1 < L_1 <= K_2 < L_2 <= ... <= K_r < L_r <= K
  std::vector<std::pair<long long, long long>> intervals;
  long long bound = 0;  // overall K; defaults to L_r when zero
};

struct EngineParams {
  long long H = 0;  // baby-step stride (power of two)
  long long B = 0;  // number of giant blocks, H*B >= K
  int s = 0;        // floor(log4 K)
  bool use_naive = false;
};

/// H = 2^ceil(log2 sqrt(K)) halved while the integers the scheme must invert
/// could meet a multiple of p; falls back to the naive product when no stride
/// is safe (never in the p > (2N-1)(2g+1) regime).
EngineParams choose_engine_params(long long K, const RingCtx& R);

std::vector<RingMatrix> naive_interval_products(const MatrixFamily& f, const IntervalRequest& req);
std::vector<RingMatrix> interval_products(const MatrixFamily& f, const IntervalRequest& req);

/// Given F(shift0), F(shift0 + alpha), ..., F(shift0 + d*alpha) for the unique
/// degree-<=d matrix polynomial through them (shift0 = 0), returns F at
/// shift, shift + alpha, ..., shift + d*alpha via factorial-weighted
/// convolution. All abscissa differences involved must be units.
std::vector<RingMatrix> shift_evaluations(const std::vector<RingMatrix>& values,
                                          const RingElem& alpha, const RingElem& shift);

namespace detail {
/// Scalar core: n_out values starting at `shift`, stride `alpha`.
std::vector<mpz_class> shift_eval_scalar(const RingCtx& R, const std::vector<mpz_class>& vals,
                                         const mpz_class& alpha, const mpz_class& shift,
                                         std::size_t n_out);
}  // namespace detail

}  // namespace frobzeta
