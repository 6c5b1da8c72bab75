#include "frobzeta/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace frobzeta {

namespace {

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::PrecisionAssumptionViolated:
      return 3;
    case Errc::NotPrime:
    case Errc::EvenPrime:
    case Errc::BadExponent:
    case Errc::EvenDegreeOrNotMonic:
    case Errc::SingularCurve:
    case Errc::GenusZero:
    case Errc::TooLarge:
    case Errc::MalformedRequest:
      return 2;
    default:
      return 4;  // internal invariant failure
  }
}

std::vector<mpz_class> parse_q(const std::string& s) {
  std::vector<mpz_class> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) raise(Errc::MalformedRequest, "empty coefficient in --Q");
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0)
      raise(Errc::MalformedRequest, "bad integer '" + tok + "' in --Q");
    out.push_back(std::move(c));
  }
  if (out.empty()) raise(Errc::MalformedRequest, "--Q must list coefficients c0,c1,...");
  return out;
}

void print_matrix_text(std::ostream& os, const RingMatrix& M) {
  std::vector<std::size_t> width(std::size_t(M.cols), 0);
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < M.rows; ++i)
      width[std::size_t(j)] = std::max(width[std::size_t(j)], M.at(i, j).get_str().size());
  for (int i = 0; i < M.rows; ++i) {
    os << '[';
    for (int j = 0; j < M.cols; ++j) {
      std::string s = M.at(i, j).get_str();
      if (j) os << ' ';
      os << std::string(width[std::size_t(j)] - s.size(), ' ') << s;
    }
    os << "]\n";
  }
}

nlohmann::json matrix_json(const RingMatrix& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < M.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < M.cols; ++j) row.push_back(M.at(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Job {
  long long p = 0;
  int N = 1;
  std::string qstr;
  std::string format = "text";
  int k = 1;
  int threads = 1;
};

int run_frobenius(const Job& job, bool with_zeta) {
  FrobeniusOptions opts;
  opts.threads = job.threads;
  std::vector<mpz_class> Q = parse_q(job.qstr);
  RingMatrix F = frobenius_matrix(mpz_class(static_cast<long>(job.p)), job.N, Q, opts);
  const int g = F.rows / 2;

  CharPolyModP cp;
  ZetaNumerator z;
  if (with_zeta) {
    cp = charpoly_frobenius(F);
    z = recover_zeta(cp, mpz_class(static_cast<long>(job.p)), g, job.N);
  }

  if (job.format == "json") {
    nlohmann::json out;
    out["p"] = job.p;
    out["N"] = job.N;
    out["g"] = g;
    out["matrix"] = matrix_json(F);
    if (with_zeta) {
      nlohmann::json cpj = nlohmann::json::array();
      for (const auto& c : cp.coeffs) cpj.push_back(c.get_str());
      out["charpoly"] = cpj;
      nlohmann::json za = nlohmann::json::array(), ze = nlohmann::json::array();
      for (int i = 0; i < g; ++i) {
        za.push_back(z.a[std::size_t(i)].get_str());
        ze.push_back(bool(z.exact[std::size_t(i)]));
      }
      out["zeta"] = {{"a", za},
                     {"exact", ze},
                     {"jacobian_order",
                      z.complete ? nlohmann::json(z.jacobian_order.get_str()) : nlohmann::json()}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  if (with_zeta) {
    std::cout << "p = " << job.p << "\nN = " << job.N << "\ng = " << g << '\n'
              << "frobenius matrix mod p^" << job.N << ":\n";
  }
  print_matrix_text(std::cout, F);
  if (with_zeta) {
    std::cout << "charpoly mod p^" << job.N << " (ascending):";
    for (const auto& c : cp.coeffs) std::cout << ' ' << c.get_str();
    std::cout << '\n';
    for (int i = 1; i <= g; ++i)
      std::cout << "a[" << i << "] = " << z.a[std::size_t(i - 1)].get_str()
                << (z.exact[std::size_t(i - 1)] ? " (exact)" : " (mod p^N only)") << '\n';
    if (z.complete)
      std::cout << "#J = " << z.jacobian_order.get_str() << '\n';
    else
      std::cout << "#J = unknown (increase N to pin the zeta function)\n";
  }
  return 0;
}

int run_count(const Job& job) {
  std::vector<mpz_class> Q = parse_q(job.qstr);
  long long n = point_count_naive(job.p, Q, job.k);
  if (job.format == "json") {
    nlohmann::json out;
    out["p"] = job.p;
    out["k"] = job.k;
    out["count"] = n;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << n << '\n';
  }
  return 0;
}

int run_selftest() {
  // p = 10007, N = 3, Q = x^5 + 2x + 1
  static const char* expected[4][4] = {
      {"844821791581", "220205295882", "761288372988", "276316151941"},
      {"380371243619", "656847071320", "602083441024", "781051879529"},
      {"435515877861", "568305615656", "204167847992", "67069787872"},
      {"365277275232", "293850471444", "438804747301", "298366229783"},
  };
  RingMatrix F = frobenius_matrix(10007, 3, {1, 2, 0, 0, 0, 1});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (F.at(i, j) != mpz_class(expected[i][j])) {
        std::cout << "selftest: FAIL at entry (" << i + 1 << "," << j + 1 << ")\n";
        raise(Errc::InternalError, "reference frobenius matrix mismatch");
      }
  std::cout << "selftest: PASS (frobenius matrix, p=10007 N=3 Q=x^5+2x+1)\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"frobzeta: Frobenius matrices and zeta functions of odd-degree "
               "hyperelliptic curves over prime fields"};
  app.require_subcommand(1);

  Job job;
  const char* env_threads = std::getenv("FROBZETA_THREADS");
  if (env_threads != nullptr) job.threads = std::max(1, std::atoi(env_threads));

  auto add_common = [&](CLI::App* sub, bool needs_n) {
    sub->add_option("--p", job.p, "prime p >= 3")->required();
    if (needs_n) sub->add_option("--N", job.N, "precision exponent N >= 1")->required();
    sub->add_option("--Q", job.qstr, "coefficients c0,c1,...,c(2g+1) of Q, ascending")->required();
    sub->add_option("--format", job.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* frob = app.add_subcommand("frobenius", "print the Frobenius matrix mod p^N");
  add_common(frob, true);
  CLI::App* zeta = app.add_subcommand("zeta", "matrix, charpoly mod p^N, and exact zeta data");
  add_common(zeta, true);
  CLI::App* count = app.add_subcommand("count", "brute-force point count over F_p or F_p^2");
  add_common(count, false);
  count->add_option("--k", job.k, "field extension degree (1 or 2)")->check(CLI::Range(1, 2));
  CLI::App* self = app.add_subcommand("selftest", "run the built-in reference computation");
  app.add_option("--threads", job.threads, "horizontal rows computed in parallel")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (frob->parsed()) return run_frobenius(job, false);
    if (zeta->parsed()) return run_frobenius(job, true);
    if (count->parsed()) return run_count(job);
    if (self->parsed()) return run_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}

}  // namespace frobzeta
