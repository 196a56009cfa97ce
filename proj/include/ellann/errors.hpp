#pragma once

#include <stdexcept>
#include <string>

namespace ellann {

/* Error taxonomy shared by the library and the command-line front end.
 * The category decides the process exit code (see tools/main.cpp):
 * validation-type failures exit 2, model/consistency failures exit 3,
 * I/O and parse failures exit 4. */
enum class errc {
  invalid_input,     // malformed arguments or mismatched operands
  validation,        // instance data violates a structural hypothesis
  model_discrepancy, // a fact the theory guarantees failed numerically
  not_sublattice,    // index requested for a non-contained lattice
  internal,          // two independent computations disagree (hard failure)
  io,                // unreadable or unwritable file
  parse,             // unparseable file, flag, or polynomial
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), cls_(c) {}
  errc cls() const { return cls_; }

private:
  errc cls_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void check(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

} // namespace ellann
