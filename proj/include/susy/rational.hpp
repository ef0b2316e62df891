#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace susy {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for malformed input data (bad rational strings, points off the curve, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's mathematical precondition does not hold.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw InputError("empty rational");
  s = s.substr(first, last - first + 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational: " + s);
  if (r.get_den() == 0) throw InputError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// True iff r is the square of a rational; the nonnegative root is written to *root.
inline bool is_rational_square(const Rational& r, Rational* root = nullptr) {
  if (r < 0) return false;
  if (mpz_perfect_square_p(r.get_num_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(r.get_den_mpz_t()) == 0) return false;
  if (root != nullptr) {
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    *root = Rational(n, d);
    root->canonicalize();
  }
  return true;
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace susy
