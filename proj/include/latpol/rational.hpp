#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latpol {

// Exact scalar types. mpq_class keeps values reduced with positive
// denominator, which is exactly the invariant the rest of the library
// relies on for structural equality.
using Int = mpz_class;
using Rat = mpq_class;

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline bool is_even_integer(const Rat& r) {
  return is_integer(r) && mpz_even_p(r.get_num().get_mpz_t());
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

// Parses "p", "-p" or "p/q". Exact; no floating point anywhere.
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw Error("cannot parse rational '" + s + "'");
  if (r.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace latpol
