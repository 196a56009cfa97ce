#include "ellann/bigint.hpp"

namespace ellann {

Int int_from_decimal(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) fail(errc::parse, "empty integer literal '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      fail(errc::parse, "bad integer literal '" + s + "'");
  return Int(s, 10);
}

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<unsigned long> exact_plog(const Int& x, const Int& p) {
  if (x <= 0) return std::nullopt;
  Int v = x;
  unsigned long e = 0;
  while (v > 1) {
    if (!mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

unsigned long to_ulong_checked(const Int& x, const std::string& what) {
  if (x < 0 || !x.fits_ulong_p())
    fail(errc::validation, what + " out of supported range: " + x.get_str());
  return x.get_ui();
}

} // namespace ellann
