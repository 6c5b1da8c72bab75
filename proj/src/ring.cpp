#include "frobzeta/ring.hpp"

#include <algorithm>
#include <cstring>

namespace frobzeta {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::EvenPrime: return "EvenPrime";
    case Errc::BadExponent: return "BadExponent";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::DivisibilityViolated: return "DivisibilityViolated";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NonUnitAbscissa: return "NonUnitAbscissa";
    case Errc::IntervalTooLong: return "IntervalTooLong";
    case Errc::MalformedRequest: return "MalformedRequest";
    case Errc::InternalNonUnitPivot: return "InternalNonUnitPivot";
    case Errc::ValuationAssertionFailed: return "ValuationAssertionFailed";
    case Errc::EvenDegreeOrNotMonic: return "EvenDegreeOrNotMonic";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::PrecisionAssumptionViolated: return "PrecisionAssumptionViolated";
    case Errc::GenusZero: return "GenusZero";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InternalError: return "InternalError";
  }
  return "UnknownError";
}

std::uint64_t& op_counter() {
  thread_local std::uint64_t n = 0;
  return n;
}

RingCtx::RingCtx(mpz_class prime, unsigned exponent) : p_(std::move(prime)), e_(exponent) {
  mpz_pow_ui(m_.get_mpz_t(), p_.get_mpz_t(), e_);
}

RingCtxPtr ring_create(const mpz_class& p, unsigned e) {
  if (e < 1) raise(Errc::BadExponent, "precision exponent must be >= 1");
  if (p == 2) raise(Errc::EvenPrime, "p = 2 is not supported (p >= 3 required)");
  if (p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    raise(Errc::NotPrime, p.get_str() + " is not prime");
  return std::make_shared<RingCtx>(p, e);
}

// ---- raw helpers ----

void mul_mod(const RingCtx& R, mpz_class& out, const mpz_class& a, const mpz_class& b) {
  ++op_counter();
  out = a * b;
  R.reduce(out);
}

void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  ++op_counter();
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

void submul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
  ++op_counter();
  mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

mpz_class inv_unit_raw(const RingCtx& R, const mpz_class& a) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), R.modulus().get_mpz_t()) == 0)
    raise(Errc::NotAUnit, a.get_str() + " has no inverse mod " + R.modulus().get_str());
  return r;
}

unsigned valuation_raw(const RingCtx& R, const mpz_class& a) {
  if (a == 0) return R.exponent();
  mpz_class t = a;
  unsigned v = 0;
  while (v < R.exponent() && mpz_divisible_p(t.get_mpz_t(), R.prime().get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), R.prime().get_mpz_t());
    ++v;
  }
  return v;
}

mpz_class div_exact_raw(const RingCtx& R, const mpz_class& a, const mpz_class& b) {
  unsigned v = valuation_raw(R, b);
  if (v == 0) {
    mpz_class r;
    mul_mod(R, r, a, inv_unit_raw(R, b));
    return r;
  }
  if (valuation_raw(R, a) < v)
    raise(Errc::DivisibilityViolated,
          "v_p(" + b.get_str() + ") = " + std::to_string(v) + " exceeds v_p(" + a.get_str() + ")");
  if (v >= R.exponent()) return 0;  // quotient ring is trivial
  mpz_class pv;
  mpz_pow_ui(pv.get_mpz_t(), R.prime().get_mpz_t(), v);
  mpz_class a1, b1;
  mpz_divexact(a1.get_mpz_t(), a.get_mpz_t(), pv.get_mpz_t());
  mpz_divexact(b1.get_mpz_t(), b.get_mpz_t(), pv.get_mpz_t());
  RingCtx Rv(R.prime(), R.exponent() - v);
  Rv.reduce(a1);
  Rv.reduce(b1);
  mpz_class r;
  mul_mod(Rv, r, a1, inv_unit_raw(Rv, b1));
  return r;  // least nonnegative representative; top v digits are unspecified
}

mpz_class pow_mod_ui(const RingCtx& R, const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), e, R.modulus().get_mpz_t());
  return r;
}

mpz_class lift_signed(const RingCtx& R, const mpz_class& x) {
  mpz_class r = R.reduced(x);
  if (2 * r > R.modulus()) r -= R.modulus();
  return r;
}

std::vector<mpz_class> batch_inverse(const RingCtx& R, const std::vector<mpz_class>& xs) {
  std::size_t n = xs.size();
  std::vector<mpz_class> pre(n);
  mpz_class acc = 1;
  for (std::size_t i = 0; i < n; ++i) {
    pre[i] = acc;
    mul_mod(R, acc, acc, xs[i]);
  }
  mpz_class inv = inv_unit_raw(R, acc);  // throws NotAUnit if any element is not
  std::vector<mpz_class> out(n);
  for (std::size_t i = n; i-- > 0;) {
    mul_mod(R, out[i], inv, pre[i]);
    mul_mod(R, inv, inv, xs[i]);
  }
  return out;
}

// ---- RingElem ----

static void require_same(const RingElem& a, const RingElem& b) {
  assert(a.ctx && b.ctx && same_ring(*a.ctx, *b.ctx));
  (void)a;
  (void)b;
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  return {a.ctx, a.v + b.v};
}

RingElem operator-(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  return {a.ctx, a.v - b.v};
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  RingElem r;
  r.ctx = a.ctx;
  mul_mod(*a.ctx, r.v, a.v, b.v);
  return r;
}

RingElem operator-(const RingElem& a) { return {a.ctx, -a.v}; }

bool operator==(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  return a.v == b.v;
}

RingElem inv_unit(const RingElem& a) { return {a.ctx, inv_unit_raw(*a.ctx, a.v)}; }

unsigned valuation(const RingElem& a) { return valuation_raw(*a.ctx, a.v); }

RingElem div_exact(const RingElem& a, const RingElem& b) {
  require_same(a, b);
  return {a.ctx, div_exact_raw(*a.ctx, a.v, b.v)};
}

// ---- polynomials ----

RingPoly::RingPoly(RingCtxPtr ctxp, std::vector<mpz_class> coeffs)
    : ctx(std::move(ctxp)), c(std::move(coeffs)) {
  for (auto& x : c) ctx->reduce(x);
}

long RingPoly::degree() const {
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return long(i);
  return -1;
}

RingPoly poly_add(const RingPoly& a, const RingPoly& b) {
  RingPoly r(a.ctx);
  r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] += b.c[i];
    a.ctx->reduce(r.c[i]);
  }
  return r;
}

RingPoly poly_sub(const RingPoly& a, const RingPoly& b) {
  RingPoly r(a.ctx);
  r.c.resize(std::max(a.c.size(), b.c.size()), mpz_class(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] += a.c[i];
    if (i < b.c.size()) r.c[i] -= b.c[i];
    a.ctx->reduce(r.c[i]);
  }
  return r;
}

RingPoly poly_scalar_mul(const RingPoly& a, const mpz_class& s) {
  RingPoly r(a.ctx);
  r.c.resize(a.c.size());
  mpz_class sc = a.ctx->reduced(s);
  for (std::size_t i = 0; i < a.c.size(); ++i) mul_mod(*a.ctx, r.c[i], a.c[i], sc);
  return r;
}

RingPoly poly_derivative(const RingPoly& a) {
  RingPoly r(a.ctx);
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    mul_mod(*a.ctx, r.c[i - 1], a.c[i], mpz_class(long(i)));
  }
  return r;
}

mpz_class poly_eval(const RingPoly& a, const mpz_class& x) {
  mpz_class xs = a.ctx->reduced(x);
  mpz_class r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    mul_mod(*a.ctx, r, r, xs);
    r += a.c[i];
    a.ctx->reduce(r);
  }
  return r;
}

bool operator==(const RingPoly& a, const RingPoly& b) {
  std::size_t n = std::max(a.c.size(), b.c.size());
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class za = i < a.c.size() ? a.c[i] : mpz_class(0);
    const mpz_class zb = i < b.c.size() ? b.c[i] : mpz_class(0);
    if (za != zb) return false;
  }
  return true;
}

namespace detail {

std::vector<mpz_class> poly_mul_schoolbook(const RingCtx& R, const std::vector<mpz_class>& a,
                                           const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) addmul(r[i + j], a[i], b[j]);
  }
  for (auto& x : r) R.reduce(x);
  return r;
}

// Unreduced schoolbook used inside Karatsuba recursion.
static std::vector<mpz_class> school_raw(const std::vector<mpz_class>& a,
                                         const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) addmul(r[i + j], a[i], b[j]);
  }
  return r;
}

static std::vector<mpz_class> karatsuba_raw(const std::vector<mpz_class>& a,
                                            const std::vector<mpz_class>& b) {
  if (a.size() < 32 || b.size() < 32) return school_raw(a, b);
  std::size_t h = std::max(a.size(), b.size()) / 2;
  auto split = [&](const std::vector<mpz_class>& v) {
    std::vector<mpz_class> lo(v.begin(), v.begin() + std::min(h, v.size()));
    std::vector<mpz_class> hi(v.begin() + std::min(h, v.size()), v.end());
    return std::make_pair(std::move(lo), std::move(hi));
  };
  auto [a0, a1] = split(a);
  auto [b0, b1] = split(b);
  auto z0 = karatsuba_raw(a0, b0);
  auto z2 = karatsuba_raw(a1, b1);
  auto padd = [](std::vector<mpz_class> x, const std::vector<mpz_class>& y) {
    if (y.size() > x.size()) x.resize(y.size(), mpz_class(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return x;
  };
  auto z1 = karatsuba_raw(padd(a0, a1), padd(b0, b1));
  // z1 -= z0 + z2
  if (std::max(z0.size(), z2.size()) > z1.size()) z1.resize(std::max(z0.size(), z2.size()), mpz_class(0));
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  std::vector<mpz_class> r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < z0.size(); ++i) r[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i)
    if (i + h < r.size()) r[i + h] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i)
    if (i + 2 * h < r.size()) r[i + 2 * h] += z2[i];
  return r;
}

std::vector<mpz_class> poly_mul_karatsuba(const RingCtx& R, const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b) {
  auto r = karatsuba_raw(a, b);
  for (auto& x : r) R.reduce(x);
  return r;
}

std::vector<mpz_class> poly_mul_kronecker(const RingCtx& R, const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t na = a.size(), nb = b.size();
  std::size_t mbits = mpz_sizeinbase(R.modulus().get_mpz_t(), 2);
  std::size_t lbits = 1;
  while ((std::size_t(1) << lbits) < std::min(na, nb)) ++lbits;
  std::size_t slot_bits = 2 * mbits + lbits + 1;
  std::size_t slot_bytes = (slot_bits + 7) / 8;

  auto pack = [&](const std::vector<mpz_class>& v) {
    std::vector<unsigned char> buf(v.size() * slot_bytes, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      std::size_t written = 0;
      mpz_export(buf.data() + i * slot_bytes, &written, -1, 1, 0, 0, v[i].get_mpz_t());
      assert(written <= slot_bytes);
    }
    return buf;
  };
  std::vector<unsigned char> ba = pack(a), bb = pack(b);
  mpz_class A, B;
  mpz_import(A.get_mpz_t(), ba.size(), -1, 1, 0, 0, ba.data());
  mpz_import(B.get_mpz_t(), bb.size(), -1, 1, 0, 0, bb.data());
  mpz_class C = A * B;

  std::size_t nc = na + nb - 1;
  std::vector<unsigned char> bc(nc * slot_bytes + slot_bytes, 0);
  std::size_t cw = 0;
  mpz_export(bc.data(), &cw, -1, 1, 0, 0, C.get_mpz_t());
  assert(cw <= bc.size());
  std::vector<mpz_class> r(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    mpz_import(r[k].get_mpz_t(), slot_bytes, -1, 1, 0, 0, bc.data() + k * slot_bytes);
    R.reduce(r[k]);
  }
  op_counter() += na + nb;  // per-coefficient pack/unpack work
  return r;
}

std::vector<mpz_class> poly_mul_dispatch(const RingCtx& R, const std::vector<mpz_class>& a,
                                         const std::vector<mpz_class>& b) {
  std::size_t mn = std::min(a.size(), b.size());
  std::size_t mx = std::max(a.size(), b.size());
  if (mn < 32) return poly_mul_schoolbook(R, a, b);
  if (mx <= 96) return poly_mul_karatsuba(R, a, b);
  return poly_mul_kronecker(R, a, b);
}

}  // namespace detail

RingPoly poly_mul(const RingPoly& a, const RingPoly& b) {
  assert(a.ctx && b.ctx && same_ring(*a.ctx, *b.ctx));
  RingPoly r(a.ctx);
  r.c = detail::poly_mul_dispatch(*a.ctx, a.c, b.c);
  return r;
}

RingPoly poly_rem_monic(const RingPoly& num, const RingPoly& den) {
  long dd = den.degree();
  if (dd < 0 || den.c[std::size_t(dd)] != 1)
    raise(Errc::InternalError, "poly_rem_monic requires a monic divisor");
  RingPoly r = num;
  long dn = r.degree();
  while (dn >= dd) {
    const mpz_class lead = r.c[std::size_t(dn)];
    if (lead != 0) {
      for (long i = 0; i < dd; ++i) {
        submul(r.c[std::size_t(dn - dd + i)], lead, den.c[std::size_t(i)]);
        num.ctx->reduce(r.c[std::size_t(dn - dd + i)]);
      }
      r.c[std::size_t(dn)] = 0;
    }
    --dn;
    while (dn >= 0 && r.c[std::size_t(dn)] == 0) --dn;
  }
  if (long(r.c.size()) > dd) r.c.resize(std::size_t(dd));
  return r;
}

namespace {

struct SubproductTree {
  // level 0 holds (x - p_i); level k holds pairwise products
  std::vector<std::vector<RingPoly>> levels;
};

SubproductTree build_tree(const RingCtxPtr& ctx, const std::vector<mpz_class>& pts) {
  SubproductTree t;
  std::vector<RingPoly> cur;
  cur.reserve(pts.size());
  for (const auto& p : pts) {
    RingPoly leaf(ctx);
    leaf.c = {ctx->reduced(-p), 1};
    cur.push_back(std::move(leaf));
  }
  t.levels.push_back(cur);
  while (t.levels.back().size() > 1) {
    const auto& prev = t.levels.back();
    std::vector<RingPoly> next;
    next.reserve((prev.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < prev.size(); i += 2) next.push_back(poly_mul(prev[i], prev[i + 1]));
    if (prev.size() % 2) next.push_back(prev.back());
    t.levels.push_back(std::move(next));
  }
  return t;
}

void eval_down(const SubproductTree& t, std::size_t level, std::size_t idx, const RingPoly& f,
               std::size_t lo, std::size_t count, std::vector<mpz_class>& out) {
  if (count == 0) return;
  if (level == 0) {
    // remainder mod (x - p) is f(p); f already has degree <= 0 here
    out[lo] = f.c.empty() ? mpz_class(0) : f.c[0];
    return;
  }
  const auto& prev = t.levels[level - 1];
  std::size_t left_idx = 2 * idx;
  std::size_t right_idx = 2 * idx + 1;
  // count of leaves under the left child
  std::size_t leaf_span = std::size_t(1) << (level - 1);
  std::size_t left_count = std::min(count, leaf_span);
  RingPoly fl = poly_rem_monic(f, prev[left_idx]);
  eval_down(t, level - 1, left_idx, fl, lo, left_count, out);
  if (right_idx < prev.size() && count > left_count) {
    RingPoly fr = poly_rem_monic(f, prev[right_idx]);
    eval_down(t, level - 1, right_idx, fr, lo + left_count, count - left_count, out);
  }
}

}  // namespace

std::vector<mpz_class> poly_eval_multi(const RingPoly& f, const std::vector<mpz_class>& pts) {
  std::vector<mpz_class> out(pts.size());
  if (pts.size() < 32) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = poly_eval(f, pts[i]);
    return out;
  }
  SubproductTree t = build_tree(f.ctx, pts);
  std::size_t top = t.levels.size() - 1;
  RingPoly fr = f;
  if (f.degree() >= t.levels[top][0].degree()) fr = poly_rem_monic(f, t.levels[top][0]);
  eval_down(t, top, 0, fr, 0, pts.size(), out);
  return out;
}

// ---- matrices ----

RingMatrix::RingMatrix(RingCtxPtr ctxp, int r, int c)
    : ctx(std::move(ctxp)), rows(r), cols(c), a(std::size_t(r) * c, mpz_class(0)) {}

RingMatrix RingMatrix::identity(RingCtxPtr ctx, int n) {
  RingMatrix I(ctx, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

RingMatrix mat_mul(const RingMatrix& A, const RingMatrix& B) {
  if (A.cols != B.rows) raise(Errc::ShapeMismatch, "mat_mul dimension mismatch");
  assert(same_ring(*A.ctx, *B.ctx));
  RingMatrix C(A.ctx, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const mpz_class& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) addmul(C.at(i, j), aik, B.at(k, j));
    }
  for (auto& x : C.a) A.ctx->reduce(x);
  return C;
}

RingMatrix mat_add(const RingMatrix& A, const RingMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) raise(Errc::ShapeMismatch, "mat_add dimension mismatch");
  RingMatrix C(A.ctx, A.rows, A.cols);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.ctx->reduced(A.a[i] + B.a[i]);
  return C;
}

RingMatrix mat_scalar_mul(const RingMatrix& A, const mpz_class& s) {
  RingMatrix C(A.ctx, A.rows, A.cols);
  mpz_class sc = A.ctx->reduced(s);
  for (std::size_t i = 0; i < C.a.size(); ++i) mul_mod(*A.ctx, C.a[i], A.a[i], sc);
  return C;
}

std::vector<mpz_class> mat_vec_mul(const RingMatrix& A, const std::vector<mpz_class>& v) {
  if (A.cols != int(v.size())) raise(Errc::ShapeMismatch, "mat_vec_mul dimension mismatch");
  std::vector<mpz_class> r(std::size_t(A.rows), mpz_class(0));
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) addmul(r[std::size_t(i)], A.at(i, j), v[std::size_t(j)]);
    A.ctx->reduce(r[std::size_t(i)]);
  }
  return r;
}

bool operator==(const RingMatrix& A, const RingMatrix& B) {
  return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

RingMatrix rebase(const RingMatrix& A, RingCtxPtr ctx) {
  RingMatrix C(std::move(ctx), A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = C.ctx->reduced(A.a[i]);
  return C;
}

RingPoly rebase(const RingPoly& f, RingCtxPtr ctx) {
  RingPoly r(std::move(ctx));
  r.c.resize(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) r.c[i] = r.ctx->reduced(f.c[i]);
  return r;
}

RingPoly charpoly_berkowitz(const RingMatrix& A) {
  if (A.rows != A.cols) raise(Errc::ShapeMismatch, "charpoly of a non-square matrix");
  const int n = A.rows;
  const RingCtx& R = *A.ctx;
  // C holds coefficients leading-first: char poly of the k x k principal minor.
  std::vector<mpz_class> C{mpz_class(1)};
  for (int k = 0; k < n; ++k) {
    // Toeplitz column q_0..q_{k+1} from row A[k][0..k), column A[0..k)[k], corner A[k][k]
    std::vector<mpz_class> q(std::size_t(k) + 2);
    q[0] = 1;
    q[1] = R.reduced(-A.at(k, k));
    std::vector<mpz_class> w(std::size_t(k), mpz_class(0));
    for (int i = 0; i < k; ++i) w[std::size_t(i)] = A.at(i, k);
    for (int j = 0; j < k; ++j) {
      if (j > 0) {
        std::vector<mpz_class> w2(std::size_t(k), mpz_class(0));
        for (int i = 0; i < k; ++i) {
          for (int l = 0; l < k; ++l) addmul(w2[std::size_t(i)], A.at(i, l), w[std::size_t(l)]);
          R.reduce(w2[std::size_t(i)]);
        }
        w = std::move(w2);
      }
      mpz_class dot = 0;
      for (int l = 0; l < k; ++l) addmul(dot, A.at(k, l), w[std::size_t(l)]);
      q[std::size_t(j) + 2] = R.reduced(-dot);
    }
    std::vector<mpz_class> C2(C.size() + 1, mpz_class(0));
    for (std::size_t i = 0; i < C2.size(); ++i) {
      for (std::size_t j = 0; j <= i && j < C.size(); ++j)
        if (i - j < q.size()) addmul(C2[i], q[i - j], C[j]);
      R.reduce(C2[i]);
    }
    C = std::move(C2);
  }
  RingPoly out(A.ctx);
  out.c.assign(C.rbegin(), C.rend());
  return out;
}

mpz_class mat_det(const RingMatrix& A) {
  RingPoly cp = charpoly_berkowitz(A);
  mpz_class d = cp.c.empty() ? mpz_class(1) : cp.c[0];
  if (A.rows % 2) d = -d;
  return A.ctx->reduced(d);
}

RingMatrix mat_inverse(const RingMatrix& A) {
  if (A.rows != A.cols) raise(Errc::ShapeMismatch, "inverse of a non-square matrix");
  const int n = A.rows;
  const RingCtx& R = *A.ctx;
  RingMatrix M = A;
  RingMatrix Inv = RingMatrix::identity(A.ctx, n);
  std::vector<std::pair<int, int>> colswaps;
  for (int s = 0; s < n; ++s) {
    int pr = -1, pc = -1;
    for (int i = s; i < n && pr < 0; ++i)
      for (int j = s; j < n; ++j)
        if (R.is_unit(M.at(i, j))) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) raise(Errc::InternalNonUnitPivot, "no unit pivot (matrix singular mod p)");
    if (pr != s)
      for (int j = 0; j < n; ++j) {
        std::swap(M.at(pr, j), M.at(s, j));
        std::swap(Inv.at(pr, j), Inv.at(s, j));
      }
    if (pc != s) {
      for (int i = 0; i < n; ++i) std::swap(M.at(i, pc), M.at(i, s));
      colswaps.emplace_back(s, pc);
    }
    mpz_class d = inv_unit_raw(R, M.at(s, s));
    for (int j = 0; j < n; ++j) {
      mul_mod(R, M.at(s, j), M.at(s, j), d);
      mul_mod(R, Inv.at(s, j), Inv.at(s, j), d);
    }
    for (int i = 0; i < n; ++i) {
      if (i == s) continue;
      mpz_class f = M.at(i, s);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        submul(M.at(i, j), f, M.at(s, j));
        R.reduce(M.at(i, j));
        submul(Inv.at(i, j), f, Inv.at(s, j));
        R.reduce(Inv.at(i, j));
      }
    }
  }
  // column swaps in M correspond to row swaps in the inverse, undone in reverse
  for (auto it = colswaps.rbegin(); it != colswaps.rend(); ++it)
    for (int j = 0; j < n; ++j) std::swap(Inv.at(it->first, j), Inv.at(it->second, j));
  return Inv;
}

}  // namespace frobzeta
