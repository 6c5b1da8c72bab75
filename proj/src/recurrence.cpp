#include "frobzeta/recurrence.hpp"

#include <algorithm>

namespace frobzeta {

namespace {

void check_request(const IntervalRequest& req) {
  long long prev_end = 0;
  bool first = true;
  for (auto [k, l] : req.intervals) {
    if (k < 0 || l <= k) raise(Errc::MalformedRequest, "intervals must satisfy 0 <= K_i < L_i");
    if (!first && k < prev_end) raise(Errc::MalformedRequest, "intervals must be sorted and disjoint");
    first = false;
    prev_end = l;
  }
  if (req.bound != 0 && !req.intervals.empty() && req.bound < req.intervals.back().second)
    raise(Errc::MalformedRequest, "bound K below the last interval end");
}

long long request_bound(const IntervalRequest& req) {
  if (req.bound != 0) return req.bound;
  return req.intervals.empty() ? 0 : req.intervals.back().second;
}

long long isqrt_ll(long long k) {
  mpz_class z(static_cast<long>(k)), r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return mpz_get_si(r.get_mpz_t());
}

// product M(b) M(b-1) ... M(a+1), sequentially
RingMatrix naive_product(const MatrixFamily& f, long long a, long long b) {
  RingMatrix r = RingMatrix::identity(f.ctx, f.dim);
  for (long long k = a + 1; k <= b; ++k)
    r = mat_mul(family_eval(f, mpz_class(static_cast<long>(k))), r);
  return r;
}

// recursive halving with naive products below length 64
RingMatrix refine_product(const MatrixFamily& f, long long a, long long b) {
  if (b - a <= 64) return naive_product(f, a, b);
  long long mid = a + (b - a) / 2;
  return mat_mul(refine_product(f, mid, b), refine_product(f, a, mid));
}

}  // namespace

EngineParams choose_engine_params(long long K, const RingCtx& R) {
  EngineParams ep;
  long long s2 = 1;  // 2^s with s = floor(log4 K): largest power of 4 <= K, square-rooted
  while (s2 * s2 * 4 <= K) s2 *= 2;
  ep.s = 0;
  for (long long t = s2; t > 1; t /= 2) ++ep.s;

  long long H = 1;
  while (H * H < K) H *= 2;  // 2^ceil(log2 sqrt(K))
  while (H >= 4) {
    long long B = (K + H - 1) / H;
    // hull of integers inverted: grid extensions reach 2H+1, the top-level
    // extension reaches B-1, factorials reach the degree <= H
    long long hull = std::max(2 * H + 1, B - 1);
    if (mpz_class(static_cast<long>(hull)) < R.prime()) {
      ep.H = H;
      ep.B = B;
      return ep;
    }
    H /= 2;
  }
  ep.use_naive = true;
  return ep;
}

std::vector<RingMatrix> naive_interval_products(const MatrixFamily& f, const IntervalRequest& req) {
  check_request(req);
  std::vector<RingMatrix> out;
  out.reserve(req.intervals.size());
  for (auto [a, b] : req.intervals) out.push_back(naive_product(f, a, b));
  return out;
}

namespace detail {

std::vector<mpz_class> shift_eval_scalar(const RingCtx& R, const std::vector<mpz_class>& vals,
                                         const mpz_class& alpha, const mpz_class& shift,
                                         std::size_t n_out) {
  const std::size_t d = vals.size() - 1;
  if (d == 0) return std::vector<mpz_class>(n_out, vals[0]);
  if (R.reduced(shift) == 0) {
    // target grid coincides with the source nodes; copy, then shift for any tail
    std::vector<mpz_class> out(vals.begin(), vals.begin() + long(std::min(n_out, d + 1)));
    if (n_out > d + 1) {
      auto tail = shift_eval_scalar(R, vals, alpha, mpz_class((long(d) + 1) * alpha),
                                    n_out - (d + 1));
      out.insert(out.end(), tail.begin(), tail.end());
    }
    return out;
  }

  // abscissae shift + r*alpha for r in [-d, n_out-1] must be units
  std::vector<mpz_class> absc(n_out + d);
  for (std::size_t idx = 0; idx < absc.size(); ++idx) {
    long r = long(idx) - long(d);
    absc[idx] = R.reduced(shift + r * alpha);
    if (!R.is_unit(absc[idx]))
      raise(Errc::NonUnitAbscissa, "shift abscissa at offset " + std::to_string(r) +
                                       " is divisible by p");
  }
  if (!R.is_unit(R.reduced(alpha))) raise(Errc::NonUnitAbscissa, "stride is divisible by p");

  // factorial inverses 0..d plus the abscissae, one batched inversion
  std::vector<mpz_class> to_inv = absc;
  mpz_class fact = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    fact = R.reduced(fact * long(i));
    if (!R.is_unit(fact)) raise(Errc::NonUnitAbscissa, "factorial not a unit (interval too long)");
    to_inv.push_back(fact);
  }
  to_inv.push_back(R.reduced(alpha));
  std::vector<mpz_class> inv = batch_inverse(R, to_inv);
  const mpz_class* ginv = inv.data();             // inverses of abscissae
  const mpz_class* finv = inv.data() + absc.size() - 1;  // finv[i] = 1/i! (finv[0] unused slot)
  const mpz_class inv_alpha = inv.back();

  // c_i = vals[i] * (-1)^(d-i) / (alpha^d i! (d-i)!)
  const mpz_class inv_alpha_d = pow_mod_ui(R, inv_alpha, static_cast<unsigned long>(d));
  std::vector<mpz_class> c(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    mpz_class t;
    mul_mod(R, t, vals[i], i == 0 ? mpz_class(1) : finv[i]);
    mul_mod(R, t, t, (d - i) == 0 ? mpz_class(1) : finv[d - i]);
    mul_mod(R, t, t, inv_alpha_d);
    if ((d - i) % 2) t = R.reduced(-t);
    c[i] = t;
  }

  // out_j = W_j * sum_i c_i / (shift + (j-i) alpha); the sum is the coefficient
  // of z^(j+d) in C(z) * G(z) with G_r = 1/(shift + (r-d) alpha)
  std::vector<mpz_class> conv = poly_mul_dispatch(R, c, std::vector<mpz_class>(ginv, ginv + absc.size()));
  mpz_class W = 1;
  for (std::size_t k = 0; k <= d; ++k) mul_mod(R, W, W, absc[d - k]);  // prod over r in [-d, 0]
  std::vector<mpz_class> out(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    mul_mod(R, out[j], W, conv[j + d]);
    if (j + 1 < n_out) {
      // W_{j+1} = W_j * (shift + (j+1) alpha) / (shift + (j-d) alpha)
      mul_mod(R, W, W, absc[j + 1 + d]);
      mul_mod(R, W, W, ginv[j]);
    }
  }
  return out;
}

}  // namespace detail

std::vector<RingMatrix> shift_evaluations(const std::vector<RingMatrix>& values,
                                          const RingElem& alpha, const RingElem& shift) {
  if (values.empty()) return {};
  const RingCtxPtr ctx = values[0].ctx;
  const std::size_t n = values.size();
  const int rows = values[0].rows, cols = values[0].cols;
  std::vector<RingMatrix> out(n, RingMatrix(ctx, rows, cols));
  std::vector<mpz_class> vals(n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      for (std::size_t k = 0; k < n; ++k) vals[k] = values[k].at(r, c);
      std::vector<mpz_class> sh = detail::shift_eval_scalar(*ctx, vals, alpha.v, shift.v, n);
      for (std::size_t k = 0; k < n; ++k) out[k].at(r, c) = std::move(sh[k]);
    }
  return out;
}

namespace {

// Extends values of a degree-<=deg matrix polynomial known on 0..cur-1 (cur >=
// deg+1) to 0..target-1 along the unit-stride grid.
void extend_grid(const MatrixFamily& f, std::vector<RingMatrix>& vals, std::size_t deg,
                 std::size_t target) {
  if (vals.size() >= target) return;
  const RingCtx& R = *f.ctx;
  const std::size_t base = deg + 1;
  const std::size_t cur = vals.size();
  const std::size_t n_out = target - cur;
  const int m = f.dim;
  std::vector<RingMatrix> ext(n_out, RingMatrix(f.ctx, m, m));
  std::vector<mpz_class> entry(base);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      for (std::size_t k = 0; k < base; ++k) entry[k] = vals[k].at(r, c);
      std::vector<mpz_class> sh = detail::shift_eval_scalar(
          R, entry, mpz_class(1), mpz_class(static_cast<long>(cur)), n_out);
      for (std::size_t k = 0; k < n_out; ++k) ext[k].at(r, c) = std::move(sh[k]);
    }
  for (auto& e : ext) vals.push_back(std::move(e));
}

}  // namespace

std::vector<RingMatrix> interval_products(const MatrixFamily& f, const IntervalRequest& req) {
  check_request(req);
  if (req.intervals.empty()) return {};
  const long long K = request_bound(req);
  if (K >= (1LL << 60)) raise(Errc::TooLarge, "interval bound beyond the supported range");
  if (mpz_class(static_cast<long>(isqrt_ll(K) + 1)) >= f.ctx->prime())
    raise(Errc::IntervalTooLong, "sqrt(K) + 1 must be below p");
  if (K < 64) return naive_interval_products(f, req);

  EngineParams ep = choose_engine_params(K, *f.ctx);
  if (ep.use_naive) return naive_interval_products(f, req);
  const long long H = ep.H, B = ep.B;

  // Step 0: giant blocks G(k) = M(kH, (k+1)H) for 0 <= k < B by repeated
  // doubling of P_i(k) = M(k 2^i, (k+1) 2^i), a degree-2^i polynomial in k,
  // held on just enough grid points and extended by shifted evaluation.
  int levels = 0;
  while ((1LL << levels) < H) ++levels;
  std::size_t n1 = std::size_t(std::min<long long>(2 + 1, H + 1));  // 2^1 + 1
  std::vector<RingMatrix> vals;
  vals.reserve(2 * n1);
  for (std::size_t k = 0; k < 2 * n1; ++k)
    vals.push_back(family_eval(f, mpz_class(static_cast<long>(k + 1))));
  for (int i = 1; i <= levels; ++i) {
    const std::size_t ni = std::size_t((1LL << i) + 1);
    const std::size_t count = std::min(vals.size() / 2, ni);
    std::vector<RingMatrix> next;
    next.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
      next.push_back(mat_mul(vals[2 * k + 1], vals[2 * k]));
    vals = std::move(next);
    if (i < levels) {
      const std::size_t ni1 = std::size_t((1LL << (i + 1)) + 1);
      extend_grid(f, vals, std::size_t(1LL << i), 2 * ni1);
    }
  }
  if (std::size_t(B) > vals.size()) extend_grid(f, vals, std::size_t(H), std::size_t(B));
  std::vector<RingMatrix>& G = vals;  // G[k] = M(kH, (k+1)H)

  // Refine partial blocks and glue full blocks in descending-index order.
  auto product = [&](long long a, long long b) -> RingMatrix {
    long long lo_full = (a + H - 1) / H;
    long long hi_full = b / H;
    if (lo_full >= hi_full) return refine_product(f, a, b);
    RingMatrix r = (b > hi_full * H) ? refine_product(f, hi_full * H, b)
                                     : RingMatrix::identity(f.ctx, f.dim);
    for (long long k = hi_full - 1; k >= lo_full; --k) r = mat_mul(r, G[std::size_t(k)]);
    if (a < lo_full * H) r = mat_mul(r, refine_product(f, a, lo_full * H));
    return r;
  };
  std::vector<RingMatrix> out;
  out.reserve(req.intervals.size());
  for (auto [a, b] : req.intervals) out.push_back(product(a, b));
  return out;
}

}  // namespace frobzeta
