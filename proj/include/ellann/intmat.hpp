#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "ellann/bigint.hpp"

namespace ellann {

/* Dense row-major matrix over Z.  Everything downstream (normal forms,
 * lattices, module presentations) is built on this one type. */
struct Mat {
  std::size_t nr = 0, nc = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : nr(r), nc(c), a(r * c) {}
  Mat(std::initializer_list<std::initializer_list<long>> rows);

  Int& at(std::size_t i, std::size_t j) { return a[i * nc + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * nc + j]; }

  bool operator==(const Mat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }

  std::vector<Int> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<Int>& v);
  bool row_is_zero(std::size_t i) const;
};

Mat transpose(const Mat& m);
Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_scal(const Int& c, const Mat& x);
Mat mat_pow(const Mat& x, unsigned long e);
Mat vstack(const Mat& top, const Mat& bottom);

std::vector<Int> vec_sub(const std::vector<Int>& x, const std::vector<Int>& y);
std::vector<Int> vec_add(const std::vector<Int>& x, const std::vector<Int>& y);
std::vector<Int> vec_scal(const Int& c, const std::vector<Int>& x);
bool vec_is_zero(const std::vector<Int>& v);
// Row vector times matrix; the standard way group elements act here.
std::vector<Int> vec_mat(const std::vector<Int>& v, const Mat& m);

// Exact determinant (fraction-free Gaussian elimination); square input.
Int det(const Mat& m);

/* Row Hermite normal form.  H = U*M with U unimodular; pivots positive,
 * entries above each pivot reduced into [0, pivot); zero rows at the
 * bottom.  H is the canonical form of the row space, so lattice equality
 * is matrix equality. */
struct HnfResult {
  Mat H;
  Mat U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols; // one per nonzero row of H
};
HnfResult hnf(const Mat& m);

/* Smith normal form D = P*M*Q with unimodular P, Q and d_1 | d_2 | ...
 * Inverse transforms are tracked alongside (they are needed for
 * saturation and quotient coordinates, and inverting unimodular
 * matrices afterwards would cost more than carrying them). */
struct SnfResult {
  Mat D, P, Q, Pinv, Qinv;
  std::size_t rank = 0;
  std::vector<Int> divisors; // d_1..d_rank
};
SnfResult snf(const Mat& m);

/* One particular solution of A*x = b (column convention) plus a basis of
 * the integer kernel of A, or nullopt when no integer solution exists. */
struct SolveResult {
  std::vector<Int> x;
  Mat kernel; // rows form a basis of {x : A*x = 0}
};
std::optional<SolveResult> solve_integer(const Mat& A, const std::vector<Int>& b);

// Basis of the *left* kernel {x : x*A = 0}, as rows.  This is the shape
// most lattice computations want (rows = vectors).
Mat left_kernel(const Mat& A);

} // namespace ellann
