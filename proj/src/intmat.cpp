#include "ellann/intmat.hpp"

#include "ellann/errors.hpp"

namespace ellann {

Mat::Mat(std::initializer_list<std::initializer_list<long>> rows) {
  nr = rows.size();
  nc = nr ? rows.begin()->size() : 0;
  a.reserve(nr * nc);
  for (const auto& r : rows) {
    check(r.size() == nc, errc::internal, "ragged matrix initializer");
    for (long v : r) a.emplace_back(v);
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<Int> Mat::row(std::size_t i) const {
  return std::vector<Int>(a.begin() + i * nc, a.begin() + (i + 1) * nc);
}

void Mat::set_row(std::size_t i, const std::vector<Int>& v) {
  check(v.size() == nc, errc::internal, "row length mismatch");
  std::copy(v.begin(), v.end(), a.begin() + i * nc);
}

bool Mat::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < nc; ++j)
    if (at(i, j) != 0) return false;
  return true;
}

Mat transpose(const Mat& m) {
  Mat t(m.nc, m.nr);
  for (std::size_t i = 0; i < m.nr; ++i)
    for (std::size_t j = 0; j < m.nc; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  check(x.nc == y.nr, errc::internal, "mat_mul shape mismatch");
  Mat z(x.nr, y.nc);
  for (std::size_t i = 0; i < x.nr; ++i)
    for (std::size_t k = 0; k < x.nc; ++k) {
      const Int& xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.nc; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

Mat mat_add(const Mat& x, const Mat& y) {
  check(x.nr == y.nr && x.nc == y.nc, errc::internal, "mat_add shape mismatch");
  Mat z(x.nr, x.nc);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] + y.a[i];
  return z;
}

Mat mat_sub(const Mat& x, const Mat& y) {
  check(x.nr == y.nr && x.nc == y.nc, errc::internal, "mat_sub shape mismatch");
  Mat z(x.nr, x.nc);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = x.a[i] - y.a[i];
  return z;
}

Mat mat_scal(const Int& c, const Mat& x) {
  Mat z(x.nr, x.nc);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = c * x.a[i];
  return z;
}

Mat mat_pow(const Mat& x, unsigned long e) {
  check(x.nr == x.nc, errc::internal, "mat_pow needs a square matrix");
  Mat acc = Mat::identity(x.nr), base = x;
  while (e) {
    if (e & 1) acc = mat_mul(acc, base);
    e >>= 1;
    if (e) base = mat_mul(base, base);
  }
  return acc;
}

Mat vstack(const Mat& top, const Mat& bottom) {
  if (top.nr == 0) return bottom;
  if (bottom.nr == 0) return top;
  check(top.nc == bottom.nc, errc::internal, "vstack width mismatch");
  Mat z(top.nr + bottom.nr, top.nc);
  std::copy(top.a.begin(), top.a.end(), z.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), z.a.begin() + top.a.size());
  return z;
}

std::vector<Int> vec_sub(const std::vector<Int>& x, const std::vector<Int>& y) {
  check(x.size() == y.size(), errc::internal, "vec_sub length mismatch");
  std::vector<Int> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

std::vector<Int> vec_add(const std::vector<Int>& x, const std::vector<Int>& y) {
  check(x.size() == y.size(), errc::internal, "vec_add length mismatch");
  std::vector<Int> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

std::vector<Int> vec_scal(const Int& c, const std::vector<Int>& x) {
  std::vector<Int> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = c * x[i];
  return z;
}

bool vec_is_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<Int> vec_mat(const std::vector<Int>& v, const Mat& m) {
  check(v.size() == m.nr, errc::internal, "vec_mat shape mismatch");
  std::vector<Int> z(m.nc);
  for (std::size_t i = 0; i < m.nr; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.nc; ++j) z[j] += v[i] * m.at(i, j);
  }
  return z;
}

static Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

static int cmpabs(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

Int det(const Mat& m) {
  check(m.nr == m.nc, errc::internal, "det needs a square matrix");
  std::size_t n = m.nr;
  if (n == 0) return 1;
  Mat w = m;
  int sign = 1;
  Int prev = 1;
  // Bareiss: fraction-free elimination, every division exact.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w.at(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && w.at(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(i, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign < 0 ? Int(-w.at(n - 1, n - 1)) : w.at(n - 1, n - 1);
}

namespace {

// Row operations applied in lockstep to H and U so H = U*M stays true.
struct RowOps {
  Mat& H;
  Mat& U;
  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < H.nc; ++c) std::swap(H.at(i, c), H.at(j, c));
    for (std::size_t c = 0; c < U.nc; ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void negate(std::size_t i) {
    for (std::size_t c = 0; c < H.nc; ++c) H.at(i, c) = -H.at(i, c);
    for (std::size_t c = 0; c < U.nc; ++c) U.at(i, c) = -U.at(i, c);
  }
  void addmul(std::size_t i, std::size_t j, const Int& c) { // row i += c * row j
    if (c == 0) return;
    for (std::size_t k = 0; k < H.nc; ++k) H.at(i, k) += c * H.at(j, k);
    for (std::size_t k = 0; k < U.nc; ++k) U.at(i, k) += c * U.at(j, k);
  }
};

} // namespace

HnfResult hnf(const Mat& m) {
  HnfResult r;
  r.H = m;
  r.U = Mat::identity(m.nr);
  RowOps ops{r.H, r.U};
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.nc && row < m.nr; ++col) {
    // Repeatedly reduce by the least |entry| in this column until one
    // nonzero entry survives; the minimum shrinks every pass.
    for (;;) {
      std::size_t best = m.nr;
      for (std::size_t i = row; i < m.nr; ++i) {
        if (r.H.at(i, col) == 0) continue;
        if (best == m.nr || cmpabs(r.H.at(i, col), r.H.at(best, col)) < 0) best = i;
      }
      if (best == m.nr) break; // column already clear
      ops.swap(row, best);
      if (r.H.at(row, col) < 0) ops.negate(row);
      bool clear = true;
      for (std::size_t i = row + 1; i < m.nr; ++i) {
        if (r.H.at(i, col) == 0) continue;
        ops.addmul(i, row, -fdiv(r.H.at(i, col), r.H.at(row, col)));
        if (r.H.at(i, col) != 0) clear = false;
      }
      if (clear) {
        for (std::size_t i = 0; i < row; ++i)
          ops.addmul(i, row, -fdiv(r.H.at(i, col), r.H.at(row, col)));
        r.pivot_cols.push_back(col);
        ++row;
        break;
      }
    }
  }
  r.rank = row;
  return r;
}

namespace {

// The four transforms of a Smith reduction, kept consistent under
// elementary operations: D = P*M*Q, P*Pinv = I, Q*Qinv = I.
struct SnfOps {
  Mat& D;
  Mat& P;
  Mat& Pinv;
  Mat& Q;
  Mat& Qinv;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.nc; ++c) std::swap(D.at(i, c), D.at(j, c));
    for (std::size_t c = 0; c < P.nc; ++c) std::swap(P.at(i, c), P.at(j, c));
    for (std::size_t r = 0; r < Pinv.nr; ++r) std::swap(Pinv.at(r, i), Pinv.at(r, j));
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < D.nc; ++c) D.at(i, c) = -D.at(i, c);
    for (std::size_t c = 0; c < P.nc; ++c) P.at(i, c) = -P.at(i, c);
    for (std::size_t r = 0; r < Pinv.nr; ++r) Pinv.at(r, i) = -Pinv.at(r, i);
  }
  void row_addmul(std::size_t i, std::size_t j, const Int& c) { // row i += c * row j
    if (c == 0) return;
    for (std::size_t k = 0; k < D.nc; ++k) D.at(i, k) += c * D.at(j, k);
    for (std::size_t k = 0; k < P.nc; ++k) P.at(i, k) += c * P.at(j, k);
    for (std::size_t r = 0; r < Pinv.nr; ++r) Pinv.at(r, j) -= c * Pinv.at(r, i);
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.nr; ++r) std::swap(D.at(r, i), D.at(r, j));
    for (std::size_t r = 0; r < Q.nr; ++r) std::swap(Q.at(r, i), Q.at(r, j));
    for (std::size_t c = 0; c < Qinv.nc; ++c) std::swap(Qinv.at(i, c), Qinv.at(j, c));
  }
  void col_negate(std::size_t i) {
    for (std::size_t r = 0; r < D.nr; ++r) D.at(r, i) = -D.at(r, i);
    for (std::size_t r = 0; r < Q.nr; ++r) Q.at(r, i) = -Q.at(r, i);
    for (std::size_t c = 0; c < Qinv.nc; ++c) Qinv.at(i, c) = -Qinv.at(i, c);
  }
  void col_addmul(std::size_t j, std::size_t i, const Int& c) { // col j += c * col i
    if (c == 0) return;
    for (std::size_t r = 0; r < D.nr; ++r) D.at(r, j) += c * D.at(r, i);
    for (std::size_t r = 0; r < Q.nr; ++r) Q.at(r, j) += c * Q.at(r, i);
    for (std::size_t k = 0; k < Qinv.nc; ++k) Qinv.at(i, k) -= c * Qinv.at(j, k);
  }
};

} // namespace

SnfResult snf(const Mat& m) {
  SnfResult r;
  r.D = m;
  r.P = Mat::identity(m.nr);
  r.Pinv = Mat::identity(m.nr);
  r.Q = Mat::identity(m.nc);
  r.Qinv = Mat::identity(m.nc);
  SnfOps ops{r.D, r.P, r.Pinv, r.Q, r.Qinv};

  std::size_t t = 0;
  std::size_t lim = std::min(m.nr, m.nc);
  for (; t < lim; ++t) {
    // Locate the least |entry| of the live submatrix as pivot.
    std::size_t pi = m.nr, pj = m.nc;
    for (std::size_t i = t; i < m.nr; ++i)
      for (std::size_t j = t; j < m.nc; ++j) {
        if (r.D.at(i, j) == 0) continue;
        if (pi == m.nr || cmpabs(r.D.at(i, j), r.D.at(pi, pj)) < 0) pi = i, pj = j;
      }
    if (pi == m.nr) break; // submatrix is zero
    ops.row_swap(t, pi);
    ops.col_swap(t, pj);

    for (;;) {
      if (r.D.at(t, t) < 0) ops.row_negate(t);
      bool clear = true;
      for (std::size_t i = t + 1; i < m.nr; ++i) {
        if (r.D.at(i, t) == 0) continue;
        ops.row_addmul(i, t, -fdiv(r.D.at(i, t), r.D.at(t, t)));
        if (r.D.at(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < m.nc; ++j) {
        if (r.D.at(t, j) == 0) continue;
        ops.col_addmul(j, t, -fdiv(r.D.at(t, j), r.D.at(t, t)));
        if (r.D.at(t, j) != 0) clear = false;
      }
      if (!clear) {
        // A remainder smaller than the pivot appeared; promote it.
        std::size_t qi = t, qj = t;
        for (std::size_t i = t; i < m.nr; ++i)
          for (std::size_t j = t; j < m.nc; ++j) {
            if (r.D.at(i, j) == 0 || (i == t && j == t)) continue;
            if (cmpabs(r.D.at(i, j), r.D.at(qi, qj)) < 0) qi = i, qj = j;
          }
        ops.row_swap(t, qi);
        ops.col_swap(t, qj);
        continue;
      }
      // Cross is clear; enforce that the pivot divides the rest, which
      // is what makes the divisor chain work out.
      bool fixed = true;
      for (std::size_t i = t + 1; i < m.nr && fixed; ++i)
        for (std::size_t j = t + 1; j < m.nc && fixed; ++j)
          if (!mpz_divisible_p(r.D.at(i, j).get_mpz_t(), r.D.at(t, t).get_mpz_t())) {
            ops.row_addmul(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
  }
  r.rank = t;
  for (std::size_t i = 0; i < t; ++i) r.divisors.push_back(r.D.at(i, i));
  return r;
}

std::optional<SolveResult> solve_integer(const Mat& A, const std::vector<Int>& b) {
  check(b.size() == A.nr, errc::internal, "solve_integer shape mismatch");
  SnfResult s = snf(A);
  // A*x = b  <=>  D*y = P*b with x = Q*y.
  std::vector<Int> c = vec_mat(b, transpose(s.P));
  std::vector<Int> y(A.nc, Int(0));
  for (std::size_t i = 0; i < A.nr; ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), s.divisors[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), s.divisors[i].get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  SolveResult out;
  out.x = vec_mat(y, transpose(s.Q));
  out.kernel = Mat(A.nc - s.rank, A.nc);
  for (std::size_t k = s.rank; k < A.nc; ++k)
    for (std::size_t j = 0; j < A.nc; ++j) out.kernel.at(k - s.rank, j) = s.Q.at(j, k);
  return out;
}

Mat left_kernel(const Mat& A) {
  HnfResult h = hnf(A);
  Mat k(A.nr - h.rank, A.nr);
  for (std::size_t i = h.rank; i < A.nr; ++i)
    for (std::size_t j = 0; j < A.nr; ++j) k.at(i - h.rank, j) = h.U.at(i, j);
  return k;
}

} // namespace ellann
