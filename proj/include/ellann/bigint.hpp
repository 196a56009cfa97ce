#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "ellann/errors.hpp"

namespace ellann {

/* All coefficients, indices and class-number data are exact integers.
 * mpz_class is the one external arithmetic dependency of the project. */
using Int = mpz_class;

// Strict decimal parse: optional leading '-', then digits only.
Int int_from_decimal(const std::string& s);

Int ipow(const Int& base, unsigned long e);

bool is_probable_prime(const Int& n);

// Exact base-p logarithm: returns e with p^e = x, or nullopt when x is
// not a power of p.  p must be >= 2.
std::optional<unsigned long> exact_plog(const Int& x, const Int& p);

// Narrowing with a diagnostic: sizes that index memory must fit a word.
unsigned long to_ulong_checked(const Int& x, const std::string& what);

} // namespace ellann
