#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellann/bigint.hpp"
#include "ellann/intmat.hpp"

namespace ellann {

/* Group ring Z[G] for G = <s> cyclic of prime-power order p^k.
 * Elements are coefficient vectors indexed by the exponent of s. */
struct GroupRing {
  unsigned long p = 0, k = 0;
  unsigned long order = 1; // p^k
  GroupRing() = default;
  GroupRing(unsigned long p_, unsigned long k_);
  bool operator==(const GroupRing&) const = default;
};

struct GrElem {
  std::vector<Int> c; // c[i] multiplies s^i
  bool operator==(const GrElem&) const = default;
};

GrElem gr_zero(const GroupRing& R);
GrElem gr_one(const GroupRing& R);
GrElem gr_const(const GroupRing& R, const Int& v);
GrElem gr_sigma(const GroupRing& R, unsigned long e); // s^e
GrElem gr_add(const GrElem& x, const GrElem& y);
GrElem gr_sub(const GrElem& x, const GrElem& y);
GrElem gr_neg(const GrElem& x);
GrElem gr_scal(const Int& a, const GrElem& x);
GrElem gr_mul(const GroupRing& R, const GrElem& x, const GrElem& y);
bool gr_is_zero(const GrElem& x);

/* Sum of s^{id} over i = 1..p^k/d, i.e. the sum over the subgroup
 * generated by s^d.  Requires d | p^k. */
GrElem norm_element(const GroupRing& R, unsigned long d);

// Weighted sum of i * s^{id} over i = 1..p^k/d - 1.
GrElem delta_element(const GroupRing& R, unsigned long d);

/* Same weights along the twisted orbit s^{icn}: i * s^{icn} summed over
 * i = 1..p^k/n - 1.  Picks up the plain version at c = 1; the twist c
 * must be prime to p so the orbit covers the subgroup. */
GrElem delta_twisted(const GroupRing& R, unsigned long c, unsigned long n);

/* Matrix of right multiplication by x in the basis {s^i}, row
 * convention: vec(y*x) = vec(y) * M. */
Mat gr_mult_matrix(const GroupRing& R, const GrElem& x);

// A witness q with q*x = y, if one exists (not unique: the ring has
// zero divisors).
std::optional<GrElem> gr_divides(const GroupRing& R, const GrElem& x, const GrElem& y);

/* Parser/printer for the element syntax used on the command line:
 * "1 - s", "2 + s - 2s^3 - s^4", "-3s^2".  Exponents reduce mod p^k. */
GrElem gr_parse(const GroupRing& R, const std::string& text);
std::string gr_format(const GrElem& x);

/* Quotient of Z[G] by the ideal generated by the n-norm, for n | p^k,
 * n < p^k.  Identifying Z[G] with Z[X]/(X^{p^k}-1), the quotient is
 * Z[X]/(f) with f = (X^{p^k}-1)/(X^n-1) = sum_{i} X^{in}, monic of
 * degree p^k - n; elements are canonical remainders mod f. */
struct QuotRing {
  GroupRing base;
  unsigned long n = 1;
  unsigned long deg = 0;  // p^k - n
  std::vector<Int> f;     // modulus, length deg + 1, f[deg] = 1
  QuotRing() = default;
  QuotRing(const GroupRing& R, unsigned long n_);
};

struct QuotElem {
  std::vector<Int> c; // length deg, c[i] multiplies X^i
  bool operator==(const QuotElem&) const = default;
};

QuotElem quot_zero(const QuotRing& Q);
QuotElem quot_one(const QuotRing& Q);
// Canonical image of a group-ring element (poly remainder mod f).
QuotElem quot_reduce(const QuotRing& Q, const GrElem& x);
// Canonical lift back: the remainder, read as an element of Z[G].
GrElem quot_lift(const QuotRing& Q, const QuotElem& x);
QuotElem quot_add(const QuotElem& x, const QuotElem& y);
QuotElem quot_sub(const QuotElem& x, const QuotElem& y);
QuotElem quot_neg(const QuotElem& x);
QuotElem quot_scal(const Int& a, const QuotElem& x);
QuotElem quot_mul(const QuotRing& Q, const QuotElem& x, const QuotElem& y);
bool quot_is_zero(const QuotElem& x);

// Multiplication-by-x matrix on the power basis, row convention.
Mat quot_mult_matrix(const QuotRing& Q, const QuotElem& x);

/* x is a nonzerodivisor iff gcd(x, f) = 1 over Q, decided exactly via
 * the resultant (f is squarefree, so a common factor means a shared
 * root). */
bool quot_is_nonzerodivisor(const QuotRing& Q, const QuotElem& x);

// A witness q with q*x = y in the quotient, if one exists.
std::optional<QuotElem> quot_divides(const QuotRing& Q, const QuotElem& x, const QuotElem& y);

// Resultant of two integer polynomials (coefficient vectors, low degree
// first); zero iff they share a complex root.
Int poly_resultant(const std::vector<Int>& a, const std::vector<Int>& b);

} // namespace ellann
