#include <doctest.h>

#include "oracles.hpp"

using namespace frobzeta;

namespace {

MatrixFamily scalar_family(RingCtxPtr ctx, long d0, long d1) {
  MatrixFamily f;
  f.ctx = ctx;
  f.dim = 1;
  f.m0 = RingMatrix(ctx, 1, 1);
  f.m1 = RingMatrix(ctx, 1, 1);
  f.m0.at(0, 0) = ctx->reduced(mpz_class(d0));
  f.m1.at(0, 0) = ctx->reduced(mpz_class(d1));
  f.d0 = 1;
  f.d1 = 0;
  f.var = 'x';
  return f;
}

IntervalRequest req_of(std::vector<std::pair<long long, long long>> iv, long long bound = 0) {
  IntervalRequest r;
  r.intervals = std::move(iv);
  r.bound = bound;
  return r;
}

}  // namespace

TEST_CASE("scalar factorial") {
  RingCtxPtr ctx = ring_create(101, 3);
  MatrixFamily f = scalar_family(ctx, 0, 1);  // M(X) = X
  auto r1 = interval_products(f, req_of({{0, 4}}));
  auto r2 = naive_interval_products(f, req_of({{0, 4}}));
  CHECK(r1[0].at(0, 0) == 24);
  CHECK(r2[0].at(0, 0) == 24);
}

TEST_CASE("identity family") {
  RingCtxPtr ctx = ring_create(10007, 2);
  MatrixFamily f;
  f.ctx = ctx;
  f.dim = 3;
  f.m0 = RingMatrix::identity(ctx, 3);
  f.m1 = RingMatrix(ctx, 3, 3);
  f.d0 = 1;
  f.d1 = 0;
  f.var = 'x';
  for (auto& M : interval_products(f, req_of({{0, 100}, {150, 4000}})))
    CHECK(M == RingMatrix::identity(ctx, 3));
}

TEST_CASE("random 4x4 family over Z/1009^2 matches the naive oracle") {
  std::mt19937_64 rng(41);
  RingCtxPtr ctx = ring_create(1009, 2);
  MatrixFamily f = oracles::random_family(rng, ctx, 4);
  IntervalRequest req = req_of({{0, 50}, {60, 200}, {350, 351}});
  auto fast = interval_products(f, req);
  auto naive = naive_interval_products(f, req);
  REQUIRE(fast.size() == naive.size());
  for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == naive[i]);
}

TEST_CASE("naive single-length interval is one evaluation") {
  std::mt19937_64 rng(42);
  RingCtxPtr ctx = ring_create(127, 2);
  MatrixFamily f = oracles::random_family(rng, ctx, 3);
  auto r = naive_interval_products(f, req_of({{17, 18}}));
  CHECK(r[0] == family_eval(f, 18));
}

TEST_CASE("denominator product over an interval matches the explicit loop") {
  // D_V(t0, t1) = D_V(t0+1) D_V(t0+2) ... D_V(t1) with D_V(t) = 2t - 1
  RingCtxPtr ctx = ring_create(10007, 2);
  MatrixFamily f = scalar_family(ctx, -1, 2);
  long long t0 = 37, t1 = 1500;
  auto r = interval_products(f, req_of({{t0, t1}}));
  mpz_class want = 1;
  for (long long t = t0 + 1; t <= t1; ++t) want = ctx->reduced(want * oracles::Z(2 * t - 1));
  CHECK(r[0].at(0, 0) == want);
}

TEST_CASE("oracle equivalence on random families and requests") {
  std::mt19937_64 rng(43);
  const std::vector<long long> primes{127, 257, 1009, 10007};
  for (int it = 0; it < 40; ++it) {
    int m = 1 + int(rng() % 8);
    unsigned e = 1 + unsigned(rng() % 4);
    long long p = primes[rng() % primes.size()];
    long long K = 64 + long(rng() % (m <= 3 ? 4000 : 600));
    RingCtxPtr ctx = ring_create(oracles::Z(p), e);
    MatrixFamily f = oracles::random_family(rng, ctx, m);
    int r = 1 + int(rng() % 5);
    std::vector<std::pair<long long, long long>> iv;
    long long lo = 0;
    for (int i = 0; i < r && lo < K; ++i) {
      long long a = lo + long(rng() % std::max<long long>(1, (K - lo) / 3));
      long long b = a + 1 + long(rng() % std::max<long long>(1, (K - a) / 2));
      if (b > K) break;
      iv.emplace_back(a, b);
      lo = b;
    }
    if (iv.empty()) iv.emplace_back(0, K);
    IntervalRequest req = req_of(iv, K);
    auto fast = interval_products(f, req);
    auto naive = naive_interval_products(f, req);
    REQUIRE(fast.size() == naive.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == naive[i]);
  }
}

TEST_CASE("gluing identity") {
  std::mt19937_64 rng(44);
  RingCtxPtr ctx = ring_create(4999, 2);
  MatrixFamily f = oracles::random_family(rng, ctx, 3);
  for (auto [a, b, c] : std::vector<std::array<long long, 3>>{
           {{0, 10, 30}}, {{5, 64, 200}}, {{100, 101, 102}}}) {
    auto pieces = naive_interval_products(f, req_of({{a, b}, {b, c}}));
    auto whole = naive_interval_products(f, req_of({{a, c}}));
    CHECK(whole[0] == mat_mul(pieces[1], pieces[0]));  // M(a,c) = M(b,c) M(a,b)
  }
}

TEST_CASE("determinant multiplicativity of interval products") {
  std::mt19937_64 rng(45);
  RingCtxPtr ctx = ring_create(211, 2);
  for (int m = 2; m <= 4; ++m) {
    MatrixFamily f = oracles::random_family(rng, ctx, m);
    long long a = 3, b = 40;
    auto r = interval_products(f, req_of({{a, b}}, 64));
    mpz_class want = 1;
    for (long long k = a + 1; k <= b; ++k)
      want = ctx->reduced(want * mat_det(family_eval(f, oracles::Z(k))));
    CHECK(mat_det(r[0]) == want);
  }
}

TEST_CASE("shift_evaluations") {
  RingCtxPtr c101 = ring_create(101, 1);
  SUBCASE("constants stay constant") {
    std::vector<RingMatrix> vals(3, RingMatrix::identity(c101, 2));
    auto out = shift_evaluations(vals, RingElem(c101, 1), RingElem(c101, 55));
    for (const auto& M : out) CHECK(M == vals[0]);
  }
  SUBCASE("F(X) = X on {0,1,2} shifted by 10") {
    std::vector<RingMatrix> vals;
    for (long v : {0L, 1L, 2L}) {
      RingMatrix M(c101, 1, 1);
      M.at(0, 0) = v;
      vals.push_back(M);
    }
    auto out = shift_evaluations(vals, RingElem(c101, 1), RingElem(c101, 10));
    CHECK(out[0].at(0, 0) == 10);
    CHECK(out[1].at(0, 0) == 11);
    CHECK(out[2].at(0, 0) == 12);
  }
  SUBCASE("random cubic against Horner") {
    std::mt19937_64 rng(46);
    RingCtxPtr ctx = ring_create(10007, 2);
    RingPoly F(ctx);
    for (int i = 0; i < 4; ++i) F.c.push_back(ctx->reduced(mpz_class(static_cast<unsigned long>(rng()))));
    std::vector<RingMatrix> vals;
    for (long x = 0; x <= 3; ++x) {
      RingMatrix M(ctx, 1, 1);
      M.at(0, 0) = poly_eval(F, x);
      vals.push_back(M);
    }
    auto out = shift_evaluations(vals, RingElem(ctx, 1), RingElem(ctx, 55));
    for (long j = 0; j <= 3; ++j) CHECK(out[std::size_t(j)].at(0, 0) == poly_eval(F, 55 + j));
  }
  SUBCASE("round trip: shift by a then re-anchor and shift by -a") {
    std::mt19937_64 rng(47);
    RingCtxPtr ctx = ring_create(101, 3);
    std::vector<RingMatrix> vals;
    for (int i = 0; i < 5; ++i) vals.push_back(oracles::random_matrix(rng, ctx, 2, 2));
    auto zero = shift_evaluations(vals, RingElem(ctx, 1), RingElem(ctx, 0));
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(zero[i] == vals[i]);
    auto fwd = shift_evaluations(vals, RingElem(ctx, 1), RingElem(ctx, 10));
    auto back = shift_evaluations(fwd, RingElem(ctx, 1), RingElem(ctx, -10));
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(back[i] == vals[i]);
  }
  SUBCASE("non-unit abscissa is rejected") {
    std::vector<RingMatrix> vals;
    for (long v : {3L, 4L, 7L}) {
      RingMatrix M(c101, 1, 1);
      M.at(0, 0) = v;
      vals.push_back(M);
    }
    // shift 103 puts 101 among the abscissae 101..105
    CHECK_THROWS_WITH_AS(shift_evaluations(vals, RingElem(c101, 1), RingElem(c101, 103)),
                         doctest::Contains("NonUnitAbscissa"), Error);
    // a stride divisible by p is rejected as well
    CHECK_THROWS_WITH_AS(shift_evaluations(vals, RingElem(c101, 101), RingElem(c101, 7)),
                         doctest::Contains("NonUnitAbscissa"), Error);
  }
}

TEST_CASE("request validation and preconditions") {
  RingCtxPtr ctx = ring_create(11, 2);
  std::mt19937_64 rng(48);
  MatrixFamily f = oracles::random_family(rng, ctx, 2);
  CHECK_THROWS_WITH_AS(interval_products(f, req_of({{5, 3}})),
                       doctest::Contains("MalformedRequest"), Error);
  CHECK_THROWS_WITH_AS(interval_products(f, req_of({{0, 10}, {5, 20}})),
                       doctest::Contains("MalformedRequest"), Error);
  // sqrt(200) + 1 = 15 >= p = 11
  CHECK_THROWS_WITH_AS(interval_products(f, req_of({{0, 200}})),
                       doctest::Contains("IntervalTooLong"), Error);
  CHECK(interval_products(f, req_of({})).empty());
}

TEST_CASE("engine parameters") {
  RingCtxPtr big = ring_create(10007, 2);
  EngineParams ep = choose_engine_params(10000, *big);
  CHECK(!ep.use_naive);
  CHECK(ep.H * ep.B >= 10000);
  CHECK((ep.H & (ep.H - 1)) == 0);
  CHECK(ep.H >= 100);   // >= sqrt(K)
  CHECK(ep.H < 2 * 101);  // < 2 sqrt(K) rounded
  // 2, ..., 2^s + 1 are units when sqrt(K) + 1 < p
  CHECK((1 << ep.s) <= 100);
  for (long n = 2; n <= (1 << ep.s) + 1; ++n) CHECK(big->is_unit(big->reduced(mpz_class(n))));

  // a prime in the awkward window forces the stride down or naive
  RingCtxPtr small = ring_create(103, 2);
  EngineParams ep2 = choose_engine_params(10000, *small);
  if (!ep2.use_naive) CHECK(std::max(2 * ep2.H + 1, ep2.B - 1) < 103);
}

TEST_CASE("soft complexity growth") {
  // informational: ring-op growth from K to 4K should be roughly sqrt-like
  std::mt19937_64 rng(49);
  RingCtxPtr ctx = ring_create(1000003, 2);
  MatrixFamily f = oracles::random_family(rng, ctx, 4);
  auto run = [&](long long K) {
    std::uint64_t before = op_counter();
    interval_products(f, req_of({{K / 3, K / 2}, {K - 10, K}}, K));
    return op_counter() - before;
  };
  std::uint64_t a = run(50000);
  std::uint64_t b = run(200000);
  MESSAGE("ops at K: ", a, ", ops at 4K: ", b, ", ratio: ", double(b) / double(a));
  WARN_LE(double(b), 3.0 * double(a));
}
