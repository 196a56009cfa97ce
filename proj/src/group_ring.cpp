#include "ellann/group_ring.hpp"

#include <cctype>

#include "ellann/errors.hpp"

namespace ellann {

GroupRing::GroupRing(unsigned long p_, unsigned long k_) : p(p_), k(k_) {
  check(p >= 3 && is_probable_prime(Int(p)), errc::validation, "group order base must be an odd prime");
  check(k >= 1, errc::validation, "group order exponent must be positive");
  Int n = ipow(Int(p), k);
  order = to_ulong_checked(n, "group order");
}

GrElem gr_zero(const GroupRing& R) { return GrElem{std::vector<Int>(R.order)}; }

GrElem gr_one(const GroupRing& R) { return gr_sigma(R, 0); }

GrElem gr_const(const GroupRing& R, const Int& v) {
  GrElem x = gr_zero(R);
  x.c[0] = v;
  return x;
}

GrElem gr_sigma(const GroupRing& R, unsigned long e) {
  GrElem x = gr_zero(R);
  x.c[e % R.order] = 1;
  return x;
}

GrElem gr_add(const GrElem& x, const GrElem& y) { return GrElem{vec_add(x.c, y.c)}; }
GrElem gr_sub(const GrElem& x, const GrElem& y) { return GrElem{vec_sub(x.c, y.c)}; }
GrElem gr_neg(const GrElem& x) { return GrElem{vec_scal(Int(-1), x.c)}; }
GrElem gr_scal(const Int& a, const GrElem& x) { return GrElem{vec_scal(a, x.c)}; }
bool gr_is_zero(const GrElem& x) { return vec_is_zero(x.c); }

GrElem gr_mul(const GroupRing& R, const GrElem& x, const GrElem& y) {
  check(x.c.size() == R.order && y.c.size() == R.order, errc::internal, "element/ring mismatch");
  GrElem z = gr_zero(R);
  for (unsigned long i = 0; i < R.order; ++i) {
    if (x.c[i] == 0) continue;
    for (unsigned long j = 0; j < R.order; ++j) {
      if (y.c[j] == 0) continue;
      z.c[(i + j) % R.order] += x.c[i] * y.c[j];
    }
  }
  return z;
}

GrElem norm_element(const GroupRing& R, unsigned long d) {
  check(d >= 1 && R.order % d == 0, errc::validation, "norm parameter must divide the group order");
  GrElem x = gr_zero(R);
  for (unsigned long i = 1; i <= R.order / d; ++i) x.c[(i * d) % R.order] = 1;
  return x;
}

GrElem delta_element(const GroupRing& R, unsigned long d) {
  check(d >= 1 && R.order % d == 0, errc::validation, "weight-sum parameter must divide the group order");
  GrElem x = gr_zero(R);
  for (unsigned long i = 1; i < R.order / d; ++i) x.c[i * d] = i;
  return x;
}

GrElem delta_twisted(const GroupRing& R, unsigned long c, unsigned long n) {
  check(n >= 1 && R.order % n == 0, errc::validation, "weight-sum parameter must divide the group order");
  check(c >= 1 && c % R.p != 0, errc::internal, "twist must be prime to p");
  GrElem x = gr_zero(R);
  for (unsigned long i = 1; i < R.order / n; ++i) {
    unsigned long e = (unsigned long)(((unsigned long long)i * c * n) % R.order);
    x.c[e] += i;
  }
  return x;
}

Mat gr_mult_matrix(const GroupRing& R, const GrElem& x) {
  Mat m(R.order, R.order);
  for (unsigned long i = 0; i < R.order; ++i)
    for (unsigned long j = 0; j < R.order; ++j)
      if (x.c[j] != 0) m.at(i, (i + j) % R.order) = x.c[j];
  return m;
}

std::optional<GrElem> gr_divides(const GroupRing& R, const GrElem& x, const GrElem& y) {
  // q*x = y reads as vec(q) * M_x = vec(y); transpose into column form.
  auto s = solve_integer(transpose(gr_mult_matrix(R, x)), y.c);
  if (!s) return std::nullopt;
  return GrElem{s->x};
}

/* --- element text syntax ---------------------------------------------
 * element := term (('+'|'-') term)*   with an optional leading sign
 * term    := integer | integer '*'? power | power
 * power   := 's' ('^' integer)?
 * Whitespace is free.  Exponents reduce mod the group order. */

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return s[i];
  }
};

Int parse_uint(Cursor& c) {
  c.skip();
  std::string digits;
  while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) digits += c.s[c.i++];
  check(!digits.empty(), errc::parse, "expected a number in element expression");
  return int_from_decimal(digits);
}

} // namespace

GrElem gr_parse(const GroupRing& R, const std::string& text) {
  GrElem out = gr_zero(R);
  Cursor c{text};
  check(!c.eof(), errc::parse, "empty element expression");
  bool first = true;
  while (!c.eof()) {
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = ch == '-' ? -1 : 1;
      ++c.i;
    } else {
      check(first, errc::parse, "expected '+' or '-' between terms");
    }
    first = false;
    check(!c.eof(), errc::parse, "dangling sign in element expression");
    ch = c.peek();
    Int coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit((unsigned char)ch)) {
      coeff = parse_uint(c);
      saw_coeff = true;
      if (!c.eof() && c.peek() == '*') ++c.i;
    }
    unsigned long exp = 0;
    if (!c.eof() && c.peek() == 's') {
      ++c.i;
      exp = 1;
      if (!c.eof() && c.peek() == '^') {
        ++c.i;
        Int e = parse_uint(c);
        exp = mpz_fdiv_ui(e.get_mpz_t(), R.order);
      }
    } else {
      check(saw_coeff, errc::parse, "expected a coefficient or 's' in element expression");
    }
    out.c[exp % R.order] += sign < 0 ? Int(-coeff) : coeff;
  }
  return out;
}

std::string gr_format(const GrElem& x) {
  std::string out;
  for (std::size_t e = 0; e < x.c.size(); ++e) {
    const Int& v = x.c[e];
    if (v == 0) continue;
    bool neg = v < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    Int m = abs(v);
    if (e == 0) {
      out += m.get_str();
    } else {
      if (m != 1) out += m.get_str();
      out += "s";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out.empty() ? "0" : out;
}

QuotRing::QuotRing(const GroupRing& R, unsigned long n_) : base(R), n(n_) {
  check(n >= 1 && n < R.order && R.order % n == 0, errc::validation,
        "quotient parameter must be a proper divisor of the group order");
  deg = R.order - n;
  f.assign(deg + 1, Int(0));
  for (unsigned long i = 0; i * n <= deg; ++i) f[i * n] = 1;
}

QuotElem quot_zero(const QuotRing& Q) { return QuotElem{std::vector<Int>(Q.deg)}; }

QuotElem quot_one(const QuotRing& Q) {
  QuotElem x = quot_zero(Q);
  x.c[0] = 1;
  return x;
}

// Remainder of a coefficient vector modulo the monic modulus f.
static std::vector<Int> poly_rem(std::vector<Int> a, const std::vector<Int>& f, std::size_t deg) {
  for (std::size_t i = a.size(); i-- > deg;) {
    if (a[i] == 0) continue;
    Int q = a[i];
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= q * f[j];
  }
  a.resize(deg);
  return a;
}

QuotElem quot_reduce(const QuotRing& Q, const GrElem& x) {
  check(x.c.size() == Q.base.order, errc::internal, "element/ring mismatch");
  return QuotElem{poly_rem(x.c, Q.f, Q.deg)};
}

GrElem quot_lift(const QuotRing& Q, const QuotElem& x) {
  GrElem g = gr_zero(Q.base);
  std::copy(x.c.begin(), x.c.end(), g.c.begin());
  return g;
}

QuotElem quot_add(const QuotElem& x, const QuotElem& y) { return QuotElem{vec_add(x.c, y.c)}; }
QuotElem quot_sub(const QuotElem& x, const QuotElem& y) { return QuotElem{vec_sub(x.c, y.c)}; }
QuotElem quot_neg(const QuotElem& x) { return QuotElem{vec_scal(Int(-1), x.c)}; }
QuotElem quot_scal(const Int& a, const QuotElem& x) { return QuotElem{vec_scal(a, x.c)}; }
bool quot_is_zero(const QuotElem& x) { return vec_is_zero(x.c); }

QuotElem quot_mul(const QuotRing& Q, const QuotElem& x, const QuotElem& y) {
  std::vector<Int> prod(2 * Q.deg, Int(0));
  for (std::size_t i = 0; i < Q.deg; ++i) {
    if (x.c[i] == 0) continue;
    for (std::size_t j = 0; j < Q.deg; ++j)
      if (y.c[j] != 0) prod[i + j] += x.c[i] * y.c[j];
  }
  return QuotElem{poly_rem(std::move(prod), Q.f, Q.deg)};
}

Mat quot_mult_matrix(const QuotRing& Q, const QuotElem& x) {
  Mat m(Q.deg, Q.deg);
  QuotElem pw = x; // x * X^i, advanced one degree per row
  for (std::size_t i = 0; i < Q.deg; ++i) {
    for (std::size_t j = 0; j < Q.deg; ++j) m.at(i, j) = pw.c[j];
    if (i + 1 < Q.deg) {
      std::vector<Int> shifted(Q.deg + 1, Int(0));
      for (std::size_t j = 0; j < Q.deg; ++j) shifted[j + 1] = pw.c[j];
      pw = QuotElem{poly_rem(std::move(shifted), Q.f, Q.deg)};
    }
  }
  return m;
}

static std::size_t poly_deg(const std::vector<Int>& a) {
  std::size_t d = a.size();
  while (d > 0 && a[d - 1] == 0) --d;
  return d; // number of meaningful coefficients; 0 means the zero poly
}

Int poly_resultant(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::size_t la = poly_deg(a), lb = poly_deg(b);
  if (la == 0 || lb == 0) return 0;
  std::size_t da = la - 1, db = lb - 1;
  if (da == 0 && db == 0) return 1;
  Mat syl(da + db, da + db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j <= da; ++j) syl.at(i, i + j) = a[da - j];
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j <= db; ++j) syl.at(db + i, i + j) = b[db - j];
  return det(syl);
}

bool quot_is_nonzerodivisor(const QuotRing& Q, const QuotElem& x) {
  if (quot_is_zero(x)) return false;
  return poly_resultant(x.c, Q.f) != 0;
}

std::optional<QuotElem> quot_divides(const QuotRing& Q, const QuotElem& x, const QuotElem& y) {
  auto s = solve_integer(transpose(quot_mult_matrix(Q, x)), y.c);
  if (!s) return std::nullopt;
  return QuotElem{s->x};
}

} // namespace ellann
