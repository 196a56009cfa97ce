#include <random>

#include "doctest.h"
#include "ellann/intmat.hpp"

using namespace ellann;

namespace {

std::vector<Int> mat_vec(const Mat& A, const std::vector<Int>& x) {
  return vec_mat(x, transpose(A)); // column-convention A*x
}

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat m(r, c);
  for (auto& v : m.a) v = d(rng);
  return m;
}

// Random product of elementary row operations: unimodular by construction.
Mat random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  Mat u = Mat::identity(n);
  for (int step = 0; step < 20; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int c(coef(rng));
    for (std::size_t k = 0; k < n; ++k) u.at(i, k) += c * u.at(j, k);
  }
  return u;
}

} // namespace

TEST_CASE("determinant on pinned matrices") {
  CHECK(det(Mat{{1, 2}, {3, 4}}) == -2);
  CHECK(det(Mat::identity(5)) == 1);
  CHECK(det(Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  CHECK(det(Mat{{0, 2}, {3, 0}}) == -6); // forces the row-swap path
}

TEST_CASE("smith form of [[2,4],[6,8]] is diag(2,4)") {
  // Oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8.
  Mat m{{2, 4}, {6, 8}};
  SnfResult s = snf(m);
  REQUIRE(s.rank == 2);
  CHECK(s.divisors[0] == 2);
  CHECK(s.divisors[1] == 4);
  CHECK(mat_mul(mat_mul(s.P, m), s.Q) == s.D);
}

TEST_CASE("smith transforms stay consistent on random input") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 5;
    Mat m = random_mat(rng, r, c);
    SnfResult s = snf(m);
    CHECK(mat_mul(mat_mul(s.P, m), s.Q) == s.D);
    CHECK(mat_mul(s.P, s.Pinv) == Mat::identity(r));
    CHECK(mat_mul(s.Q, s.Qinv) == Mat::identity(c));
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      CHECK(mpz_divisible_p(s.divisors[i + 1].get_mpz_t(), s.divisors[i].get_mpz_t()));
    for (const Int& d : s.divisors) CHECK(d > 0);
    // off-diagonal must vanish
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D.at(i, j) == 0);
  }
}

TEST_CASE("hermite form shape and row-space invariance") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t r = 2 + trial % 4, c = 2 + (trial * 3) % 4;
    Mat m = random_mat(rng, r, c);
    HnfResult h = hnf(m);
    CHECK(mat_mul(h.U, m) == h.H);
    Int ud = det(h.U);
    CHECK((ud == 1 || ud == -1));
    for (std::size_t i = 0; i < h.rank; ++i) {
      std::size_t pc = h.pivot_cols[i];
      const Int& piv = h.H.at(i, pc);
      CHECK(piv > 0);
      for (std::size_t j = 0; j < pc; ++j) CHECK(h.H.at(i, j) == 0);
      for (std::size_t i2 = 0; i2 < i; ++i2) {
        CHECK(h.H.at(i2, pc) >= 0);
        CHECK(h.H.at(i2, pc) < piv);
      }
    }
    for (std::size_t i = h.rank; i < r; ++i) CHECK(h.H.row_is_zero(i));
    // same row lattice => same canonical form
    Mat t = mat_mul(random_unimodular(rng, r), m);
    CHECK(hnf(t).H == h.H);
  }
}

TEST_CASE("integer solve: pinned kernel example") {
  auto s = solve_integer(Mat{{1, 1}}, {Int(0)});
  REQUIRE(s.has_value());
  CHECK(vec_is_zero(mat_vec(Mat{{1, 1}}, s->x)));
  REQUIRE(s->kernel.nr == 1);
  bool plus = s->kernel.at(0, 0) == 1 && s->kernel.at(0, 1) == -1;
  bool minus = s->kernel.at(0, 0) == -1 && s->kernel.at(0, 1) == 1;
  CHECK((plus || minus));
}

TEST_CASE("integer solve: divisibility obstructions") {
  CHECK_FALSE(solve_integer(Mat{{2}}, {Int(3)}).has_value());
  CHECK(solve_integer(Mat{{2}}, {Int(-8)}).has_value());
  // inconsistent system: x = 0 and x = 1
  CHECK_FALSE(solve_integer(Mat{{1}, {1}}, {Int(0), Int(1)}).has_value());
}

TEST_CASE("integer solve agrees with planted solutions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial * 5) % 4;
    Mat A = random_mat(rng, r, c);
    std::vector<Int> x0(c);
    std::uniform_int_distribution<int> d(-5, 5);
    for (auto& v : x0) v = d(rng);
    std::vector<Int> b = mat_vec(A, x0);
    auto s = solve_integer(A, b);
    REQUIRE(s.has_value());
    CHECK(mat_vec(A, s->x) == b);
    for (std::size_t i = 0; i < s->kernel.nr; ++i)
      CHECK(vec_is_zero(mat_vec(A, s->kernel.row(i))));
    // planted minus particular must lie in the kernel lattice
    std::vector<Int> diff = vec_sub(x0, s->x);
    CHECK(solve_integer(transpose(s->kernel), diff).has_value());
  }
}

TEST_CASE("left kernel annihilates from the left") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    Mat A = random_mat(rng, 4, 3);
    Mat k = left_kernel(A);
    for (std::size_t i = 0; i < k.nr; ++i) CHECK(vec_is_zero(vec_mat(k.row(i), A)));
    CHECK(k.nr == A.nr - hnf(A).rank);
  }
}

TEST_CASE("determinant magnitude equals product of smith divisors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m = random_mat(rng, 4, 4);
    Int dd = det(m);
    SnfResult s = snf(m);
    Int prod = 1;
    for (const Int& d : s.divisors) prod *= d;
    if (s.rank < 4)
      CHECK(dd == 0);
    else
      CHECK(abs(dd) == prod);
  }
}

TEST_CASE("matrix power and stacking helpers") {
  Mat s{{0, 1}, {1, 0}};
  CHECK(mat_pow(s, 0) == Mat::identity(2));
  CHECK(mat_pow(s, 2) == Mat::identity(2));
  CHECK(mat_pow(s, 5) == s);
  Mat v = vstack(Mat{{1, 2}}, Mat{{3, 4}});
  CHECK(v == Mat{{1, 2}, {3, 4}});
}
