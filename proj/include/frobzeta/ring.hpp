#pragma once

// Fixed-precision arithmetic in Z/p^e (p an odd prime): scalars, polynomials,
// matrices, exact division by non-units, and a division-free characteristic
// polynomial. Representatives are canonical in [0, p^e).

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frobzeta {

enum class Errc {
  NotPrime,
  EvenPrime,
  BadExponent,
  NotAUnit,
  DivisibilityViolated,
  ShapeMismatch,
  NonUnitAbscissa,
  IntervalTooLong,
  MalformedRequest,
  InternalNonUnitPivot,
  ValuationAssertionFailed,
  EvenDegreeOrNotMonic,
  SingularCurve,
  PrecisionAssumptionViolated,
  GenusZero,
  TooLarge,
  InternalError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc c, const std::string& what) { throw Error(c, what); }

/// Thread-local count of modular coefficient multiplications (coarse work measure).
std::uint64_t& op_counter();

class RingCtx {
 public:
  RingCtx(mpz_class prime, unsigned exponent);

  const mpz_class& prime() const { return p_; }
  unsigned exponent() const { return e_; }
  const mpz_class& modulus() const { return m_; }

  void reduce(mpz_class& x) const { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m_.get_mpz_t()); }
  mpz_class reduced(mpz_class x) const {
    reduce(x);
    return x;
  }
  /// Unit test on a canonical representative: unit iff p does not divide it.
  bool is_unit(const mpz_class& x) const {
    return mpz_divisible_p(x.get_mpz_t(), p_.get_mpz_t()) == 0;
  }

 private:
  mpz_class p_;
  unsigned e_;
  mpz_class m_;
};

using RingCtxPtr = std::shared_ptr<const RingCtx>;

/// Builds Z/p^e. Rejects p = 2, composite p, e < 1.
RingCtxPtr ring_create(const mpz_class& p, unsigned e);

inline bool same_ring(const RingCtx& a, const RingCtx& b) {
  return &a == &b || (a.exponent() == b.exponent() && a.prime() == b.prime());
}

// ---- raw (ctx, canonical mpz) helpers used by the hot paths ----

/// out = a*b mod m. Bumps op_counter.
void mul_mod(const RingCtx& R, mpz_class& out, const mpz_class& a, const mpz_class& b);
/// acc += a*b (no reduction; caller reduces). Bumps op_counter.
void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b);
/// acc -= a*b (no reduction; caller reduces). Bumps op_counter.
void submul(mpz_class& acc, const mpz_class& a, const mpz_class& b);

mpz_class inv_unit_raw(const RingCtx& R, const mpz_class& a);
unsigned valuation_raw(const RingCtx& R, const mpz_class& a);
mpz_class div_exact_raw(const RingCtx& R, const mpz_class& a, const mpz_class& b);
mpz_class pow_mod_ui(const RingCtx& R, const mpz_class& base, unsigned long e);
/// Balanced lift into (-m/2, m/2] (m odd).
mpz_class lift_signed(const RingCtx& R, const mpz_class& x);
/// Inverts every element of `xs` (all must be units) with one modular inversion.
std::vector<mpz_class> batch_inverse(const RingCtx& R, const std::vector<mpz_class>& xs);

// ---- scalar wrapper ----

struct RingElem {
  RingCtxPtr ctx;
  mpz_class v;

  RingElem() = default;
  RingElem(RingCtxPtr c, mpz_class x) : ctx(std::move(c)), v(std::move(x)) { ctx->reduce(v); }
};

RingElem operator+(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a, const RingElem& b);
RingElem operator*(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a);
bool operator==(const RingElem& a, const RingElem& b);

/// Inverse of a unit; NotAUnit if p | a.
RingElem inv_unit(const RingElem& a);
/// Largest v <= e with p^v | a (e for a = 0).
unsigned valuation(const RingElem& a);
/// a/b with v_p(b) <= v_p(a): result c satisfies b*c = a mod p^(e-v_p(b)),
/// embedded by its least nonnegative representative. DivisibilityViolated otherwise.
RingElem div_exact(const RingElem& a, const RingElem& b);

// ---- polynomials (ascending coefficients, shared ctx) ----

struct RingPoly {
  RingCtxPtr ctx;
  std::vector<mpz_class> c;

  RingPoly() = default;
  explicit RingPoly(RingCtxPtr ctxp) : ctx(std::move(ctxp)) {}
  RingPoly(RingCtxPtr ctxp, std::vector<mpz_class> coeffs);

  /// Degree ignoring zero leading terms; -1 for the zero polynomial.
  long degree() const;
};

RingPoly poly_add(const RingPoly& a, const RingPoly& b);
RingPoly poly_sub(const RingPoly& a, const RingPoly& b);
RingPoly poly_mul(const RingPoly& a, const RingPoly& b);
RingPoly poly_scalar_mul(const RingPoly& a, const mpz_class& s);
RingPoly poly_derivative(const RingPoly& a);
mpz_class poly_eval(const RingPoly& a, const mpz_class& x);
/// Evaluations at many points: subproduct tree for >= 32 points, Horner below.
std::vector<mpz_class> poly_eval_multi(const RingPoly& f, const std::vector<mpz_class>& pts);
/// Remainder of num modulo a monic divisor.
RingPoly poly_rem_monic(const RingPoly& num, const RingPoly& den);
bool operator==(const RingPoly& a, const RingPoly& b);

namespace detail {
std::vector<mpz_class> poly_mul_schoolbook(const RingCtx& R, const std::vector<mpz_class>& a,
                                           const std::vector<mpz_class>& b);
std::vector<mpz_class> poly_mul_karatsuba(const RingCtx& R, const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b);
std::vector<mpz_class> poly_mul_kronecker(const RingCtx& R, const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b);
std::vector<mpz_class> poly_mul_dispatch(const RingCtx& R, const std::vector<mpz_class>& a,
                                         const std::vector<mpz_class>& b);
}  // namespace detail

// ---- matrices (row-major, shared ctx) ----

struct RingMatrix {
  RingCtxPtr ctx;
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> a;

  RingMatrix() = default;
  RingMatrix(RingCtxPtr ctxp, int r, int c);
  static RingMatrix identity(RingCtxPtr ctx, int n);

  mpz_class& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const mpz_class& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }
};

RingMatrix mat_mul(const RingMatrix& A, const RingMatrix& B);
RingMatrix mat_add(const RingMatrix& A, const RingMatrix& B);
RingMatrix mat_scalar_mul(const RingMatrix& A, const mpz_class& s);
std::vector<mpz_class> mat_vec_mul(const RingMatrix& A, const std::vector<mpz_class>& v);
bool operator==(const RingMatrix& A, const RingMatrix& B);

/// Re-reduce entries under a different precision context (lift R0->R1 by least
/// representative, or reduce R1->R0).
RingMatrix rebase(const RingMatrix& A, RingCtxPtr ctx);
RingPoly rebase(const RingPoly& f, RingCtxPtr ctx);

/// Monic char poly det(T*I - A), ascending coefficients (division-free Berkowitz).
RingPoly charpoly_berkowitz(const RingMatrix& A);
/// det via Berkowitz: (-1)^m * charpoly(0).
mpz_class mat_det(const RingMatrix& A);
/// Inverse by Gauss-Jordan with full pivoting on unit entries.
/// InternalNonUnitPivot if the remaining submatrix is ever zero mod p.
RingMatrix mat_inverse(const RingMatrix& A);

}  // namespace frobzeta
