#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ohmlab {

// Always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q" and "-p/q".  Rejects a zero denominator.
Rational parse_rational(const std::string& s);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// n/d reduced; mpq_class(n, d) alone does not canonicalize.
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ohmlab
