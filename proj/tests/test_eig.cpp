#include <doctest.h>

#include <cmath>
#include <random>

#include "helix/discretize.hpp"
#include "helix/eig.hpp"
#include "helix/errors.hpp"
#include "oracles.hpp"

using namespace helix;

namespace {

const std::vector<double> kLapDiag{2.0, 2.0, 2.0};
const std::vector<double> kLapOff{-1.0, -1.0};

struct RandomTridiag {
  std::vector<double> diag, off;
};

RandomTridiag random_tridiag(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::uniform_real_distribution<double> e(0.1, 3.0);
  RandomTridiag t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.off.resize(static_cast<std::size_t>(n - 1));
  for (auto& x : t.diag) x = d(rng);
  for (auto& x : t.off) x = (rng() % 2 ? 1.0 : -1.0) * e(rng);
  return t;
}

}  // namespace

TEST_CASE("count_below on the 3x3 laplacian") {
  CHECK(count_below(kLapDiag, kLapOff, 2.0) == 1);   // eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2
  CHECK(count_below(kLapDiag, kLapOff, 10.0) == 3);
  CHECK(count_below(kLapDiag, kLapOff, 0.0) == 0);
}

TEST_CASE("3x3 laplacian eigenvalues to 1e-12") {
  const auto pairs = lowest_eigenpairs(kLapDiag, kLapOff, EigenRequest{3, 1e-14, 1e-10});
  const double s = std::sqrt(2.0);
  REQUIRE(pairs.size() == 3);
  CHECK(std::abs(pairs[0].lambda - (2.0 - s)) < 1e-12);
  CHECK(std::abs(pairs[1].lambda - 2.0) < 1e-12);
  CHECK(std::abs(pairs[2].lambda - (2.0 + s)) < 1e-12);
}

TEST_CASE("eigenvalues match a dense jacobi oracle on random matrices") {
  std::mt19937 rng(20260810);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 49);  // dimensions 2..50
    const auto t = random_tridiag(rng, n);
    const auto dense = oracle::dense_from_tridiagonal(t.diag, t.off);
    const auto reference = oracle::jacobi_eigenvalues(dense);
    const int count = 1 + static_cast<int>(rng() % n);
    const auto pairs = lowest_eigenpairs(t.diag, t.off, EigenRequest{count, 1e-13, 1e-9});
    for (int j = 0; j < count; ++j) {
      CHECK(std::abs(pairs[j].lambda - reference[j]) < 1e-10);
    }
  }
}

TEST_CASE("sturm consistency of returned eigenvalues") {
  std::mt19937 rng(5150);
  const EigenRequest req{4, 1e-11, 1e-9};
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20 + static_cast<int>(rng() % 30);
    const auto t = random_tridiag(rng, n);
    const auto pairs = lowest_eigenpairs(t.diag, t.off, req);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const double lambda = pairs[j].lambda;
      const double delta = 10.0 * req.tol_lambda * std::max(1.0, std::abs(lambda));
      CHECK(count_below(t.diag, t.off, lambda - delta) == static_cast<int>(j));
      CHECK(count_below(t.diag, t.off, lambda + delta) >= static_cast<int>(j) + 1);
    }
  }
}

TEST_CASE("eigenvectors are orthonormal with small residuals") {
  std::mt19937 rng(777);
  const auto t = random_tridiag(rng, 60);
  const EigenRequest req{6, 1e-12, 1e-9};
  const auto pairs = lowest_eigenpairs(t.diag, t.off, req);
  const std::size_t n = t.diag.size();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    double norm = 0.0;
    for (double x : pairs[a].vector) norm += x * x;
    CHECK(std::abs(norm - 1.0) < 1e-12);

    // residual bound
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = (t.diag[i] - pairs[a].lambda) * pairs[a].vector[i];
      if (i > 0) v += t.off[i - 1] * pairs[a].vector[i - 1];
      if (i + 1 < n) v += t.off[i] * pairs[a].vector[i + 1];
      res += v * v;
    }
    CHECK(std::sqrt(res) <= req.tol_residual * std::max(1.0, std::abs(pairs[a].lambda)));

    for (std::size_t b = 0; b < a; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += pairs[a].vector[i] * pairs[b].vector[i];
      CHECK(std::abs(dot) <= 1e-8);
    }
  }
}

TEST_CASE("sign convention: first significant component positive") {
  std::mt19937 rng(31337);
  const auto t = random_tridiag(rng, 30);
  const auto pairs = lowest_eigenpairs(t.diag, t.off, EigenRequest{5, 1e-11, 1e-9});
  for (const auto& p : pairs) {
    for (double x : p.vector) {
      if (std::abs(x) > 1e-12) {
        CHECK(x > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("oscillation theorem on a sturm-liouville operator") {
  // Assembled operators have strictly negative off-diagonals, so the n-th
  // eigenvector has exactly n interior sign changes.
  const RadialGrid g = build_grid(1e-3, 12.0, 1500);
  const auto op = assemble(g, [](double r) { return r * r; });
  const auto pairs = lowest_eigenpairs(op, EigenRequest{5, 1e-10, 1e-8});
  for (int n = 0; n < 5; ++n) {
    int changes = 0;
    int prev = 0;
    for (double x : pairs[static_cast<std::size_t>(n)].vector) {
      if (std::abs(x) <= 1e-9) continue;
      const int s = x > 0 ? 1 : -1;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    CHECK(changes == n);
  }
}

TEST_CASE("interlacing with the leading principal submatrix") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 12 + static_cast<int>(rng() % 20);
    const auto t = random_tridiag(rng, n);
    const auto full = oracle::jacobi_eigenvalues(oracle::dense_from_tridiagonal(t.diag, t.off));

    std::vector<double> d2(t.diag.begin(), t.diag.end() - 1);
    std::vector<double> e2(t.off.begin(), t.off.end() - 1);
    const int count = n - 1;
    const auto sub = lowest_eigenpairs(d2, e2, EigenRequest{count, 1e-12, 1e-9});
    for (int j = 0; j < count; ++j) {
      CHECK(sub[j].lambda >= full[j] - 1e-9);
      CHECK(sub[j].lambda <= full[j + 1] + 1e-9);
    }
  }
}

TEST_CASE("request validation and failure paths") {
  CHECK_THROWS_AS(lowest_eigenpairs(kLapDiag, kLapOff, EigenRequest{0, 1e-10, 1e-8}),
                  InvalidParameter);
  CHECK_THROWS_AS(lowest_eigenpairs(kLapDiag, kLapOff, EigenRequest{4, 1e-10, 1e-8}),
                  InvalidParameter);
  CHECK_THROWS_AS(lowest_eigenpairs(kLapDiag, kLapOff, EigenRequest{1, -1.0, 1e-8}),
                  InvalidParameter);

  // ConvergenceFailure carries the index and the stalled residual
  const ConvergenceFailure failure(2, 1e-3, 1e-8);
  CHECK(failure.index() == 2);
  CHECK(failure.residual() == 1e-3);
  CHECK(std::string(failure.what()).find("eigenpair 2") != std::string::npos);
}

TEST_CASE("dimension-1 operator") {
  const std::vector<double> d{4.2};
  const std::vector<double> e{};
  const auto pairs = lowest_eigenpairs(d, e, EigenRequest{1, 1e-12, 1e-10});
  CHECK(pairs[0].lambda == doctest::Approx(4.2));
  CHECK(pairs[0].vector == std::vector<double>{1.0});
}
