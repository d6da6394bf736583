#pragma once

// Exact arithmetic over factored positive integers and rationals.
//
// A Factorization is the canonical prime-power decomposition of a positive
// integer; an ExponentVector is the same for a positive rational, with
// signed exponents. Both keep entries strictly ascending by prime and never
// store a zero exponent, so equality is structural and serialization is
// byte-stable.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "totrep/budgets.hpp"

namespace totrep {

using Natural = mpz_class;
using Exponent = std::int64_t;

struct PrimePower {
  Natural prime;
  Exponent exponent = 0;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.exponent == b.exponent && a.prime == b.prime;
  }
};

class ExponentVector;

class Factorization {
 public:
  Factorization() = default;

  // Accepts entries in any order; repeated primes are merged. Throws
  // InvalidArgument on a non-positive exponent or a prime below 2. Keys are
  // not primality-tested here (factorize() is the checked entry point).
  explicit Factorization(std::vector<PrimePower> entries);

  static Factorization prime_power(Natural p, Exponent e);

  const std::vector<PrimePower>& entries() const noexcept { return entries_; }
  bool is_one() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  Exponent exponent_of(const Natural& p) const;
  // Largest prime, or 1 for the empty factorization.
  Natural max_prime() const;
  Natural value() const;

  Factorization& operator*=(const Factorization& other);
  friend Factorization operator*(Factorization a, const Factorization& b) { return a *= b; }
  Factorization pow(Exponent e) const;

  ExponentVector as_vector() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
};

class ExponentVector {
 public:
  ExponentVector() = default;
  // Entries merged by prime, zero exponents dropped.
  explicit ExponentVector(std::vector<PrimePower> entries);

  static ExponentVector prime_power(Natural p, Exponent e);

  const std::vector<PrimePower>& entries() const noexcept { return entries_; }
  bool is_one() const noexcept { return entries_.empty(); }
  bool is_integer() const noexcept;

  Exponent exponent_of(const Natural& p) const;
  Natural max_prime() const;

  Factorization numerator() const;
  Factorization denominator() const;

  ExponentVector& operator*=(const ExponentVector& other);
  friend ExponentVector operator*(ExponentVector a, const ExponentVector& b) { return a *= b; }
  ExponentVector& operator/=(const ExponentVector& other);
  friend ExponentVector operator/(ExponentVector a, const ExponentVector& b) { return a /= b; }
  ExponentVector pow(Exponent e) const;
  ExponentVector inverse() const { return pow(-1); }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator<(const ExponentVector& a, const ExponentVector& b);

 private:
  std::vector<PrimePower> entries_;
};

// Positive rational in lowest terms.
struct Rational {
  Natural num{1};
  Natural den{1};

  // Reduces; throws InvalidArgument unless both parts are >= 1.
  static Rational make(Natural num, Natural den);
  // "u/v" or "u" in decimal.
  static Rational parse(std::string_view text);

  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

// Decimal, or a product of powers such as "2^8*3^3*3456001^2".
Natural parse_natural(std::string_view text);
// Same syntax, factoring each base on its own.
Factorization parse_factored(std::string_view text, const Budgets& budgets = {});
std::string to_decimal(const Natural& n);
bool fits_u64(const Natural& n);
std::uint64_t to_u64(const Natural& n);
Natural from_u64(std::uint64_t v);
bool is_perfect_square(const Natural& n);

Factorization factorize(const Natural& n, const Budgets& budgets = {});
ExponentVector factorize(const Rational& q, const Budgets& budgets = {});
Rational to_rational(const ExponentVector& v);

// phi(n) in factored form: prod p^(a-1) * factorize(p - 1).
Factorization totient(const Factorization& f, const Budgets& budgets = {});
Factorization radical(const Factorization& f);
// Primes of odd exponent, each to the first power.
Factorization squarefree_kernel(const Factorization& f);
// Halves every exponent; NotASquare if any is odd.
Factorization exact_sqrt(const Factorization& f);

// NotPrime unless p passes is_prime.
Exponent valuation(const ExponentVector& x, const Natural& p);
Exponent valuation(const Factorization& x, const Natural& p);

inline ExponentVector vec_mul(const ExponentVector& a, const ExponentVector& b) { return a * b; }
inline ExponentVector vec_pow(const ExponentVector& a, Exponent e) { return a.pow(e); }

}  // namespace totrep
