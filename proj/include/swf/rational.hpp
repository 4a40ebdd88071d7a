#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace swf {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Canonical "num/den" form, denominator always spelled out.
inline std::string rat_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "num/den" or a bare integer.
inline Rational rat_parse(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline int sgn(const Rational& q) { return sgn(q.get_num()); }

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Large-table guard. SWF_BUDGET_MB (env) caps single allocations; unset
// means only the structural n <= 24 cap applies.
void budget_check(std::size_t bytes, const char* what);

}  // namespace swf
