#include "totrep/primes.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "totrep/error.hpp"

namespace totrep {

namespace {

constexpr std::array<std::uint32_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t a) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_probable_prime(const Natural& n, const Natural& d, unsigned long s, const Natural& a) {
  const Natural n1 = n - 1;
  Natural x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

std::vector<std::uint32_t> sieve(std::uint64_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint32_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint32_t a : kWitnesses) {
    if (!strong_probable_prime_u64(n, d, s, a)) return false;
  }
  return true;
}

bool is_prime(const Natural& n, const Budgets& budgets) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (std::uint32_t p : detail::trial_primes(1000)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Natural d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (std::uint32_t a : kWitnesses) {
    if (!strong_probable_prime(n, d, s, Natural(a))) return false;
  }
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(from_u64(budgets.seed));
  const Natural span = n - 3;
  for (unsigned i = 0; i < budgets.mr_rounds; ++i) {
    const Natural a = rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, d, s, a)) return false;
  }
  return true;
}

Natural find_prime_in_ap(const ApSearchSpec& spec, const Budgets& budgets) {
  require(spec.modulus >= 1, ErrorCode::InvalidArgument, "modulus must be >= 1");
  require(spec.residue >= 0, ErrorCode::InvalidArgument, "residue must be >= 0");
  Natural g;
  mpz_gcd(g.get_mpz_t(), spec.residue.get_mpz_t(), spec.modulus.get_mpz_t());
  if (g != 1) {
    fail(ErrorCode::GcdViolation, "gcd(" + to_decimal(spec.residue) + ", " + to_decimal(spec.modulus) +
                                      ") = " + to_decimal(g));
  }
  Natural candidate = spec.residue;
  if (candidate < spec.min_value) {
    Natural steps;
    const Natural gap = spec.min_value - candidate;
    mpz_cdiv_q(steps.get_mpz_t(), gap.get_mpz_t(), spec.modulus.get_mpz_t());
    candidate += steps * spec.modulus;
  }
  for (std::uint64_t i = 0; i < spec.max_candidates; ++i, candidate += spec.modulus) {
    if (is_prime(candidate, budgets)) return candidate;
  }
  fail(ErrorCode::SearchExhausted, "no prime = " + to_decimal(spec.residue) + " (mod " + to_decimal(spec.modulus) +
                                       ") within " + std::to_string(spec.max_candidates) +
                                       " candidates (prime-budget)");
}

std::vector<std::uint64_t> primes_upto(std::uint64_t x, const Budgets& budgets) {
  require(x >= 2, ErrorCode::InvalidArgument, "primes_upto needs x >= 2");
  if (x > budgets.sieve_limit) {
    fail(ErrorCode::SieveBudgetExceeded,
         std::to_string(x) + " exceeds sieve budget " + std::to_string(budgets.sieve_limit));
  }
  const auto small = sieve(x);
  return {small.begin(), small.end()};
}

namespace detail {

const std::vector<std::uint32_t>& trial_primes(std::uint64_t bound) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<const std::vector<std::uint32_t>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[bound];
  if (!slot) slot = std::make_unique<const std::vector<std::uint32_t>>(sieve(bound));
  return *slot;
}

}  // namespace detail

}  // namespace totrep
