#pragma once

// Hand-rolled generators and naive oracles shared by the test binaries. The
// oracles deliberately avoid the library: plain trial division on uint64.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "totrep/arith.hpp"

namespace testing_support {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::uint64_t urange(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(urange(0, xs.size() - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<std::pair<std::uint64_t, int>> naive_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::uint64_t naive_phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (const auto& [p, e] : naive_factor(n)) out = out / p * (p - 1);
  return out;
}

inline bool naive_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline totrep::ExponentVector vec(std::vector<std::pair<unsigned, totrep::Exponent>> xs) {
  std::vector<totrep::PrimePower> entries;
  for (const auto& [p, e] : xs) entries.push_back({totrep::Natural(p), e});
  return totrep::ExponentVector(std::move(entries));
}

inline totrep::Factorization fac(std::vector<std::pair<unsigned, totrep::Exponent>> xs) {
  std::vector<totrep::PrimePower> entries;
  for (const auto& [p, e] : xs) entries.push_back({totrep::Natural(p), e});
  return totrep::Factorization(std::move(entries));
}

// Plain u/v, reduced, as a library rational.
inline totrep::ExponentVector ratio(std::uint64_t u, std::uint64_t v) {
  return totrep::factorize(totrep::Rational::make(totrep::from_u64(u), totrep::from_u64(v)));
}

}  // namespace testing_support
