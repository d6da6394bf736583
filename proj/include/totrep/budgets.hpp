#pragma once

#include <cstdint>

namespace totrep {

// Effort caps shared by every module. Defaults are the documented CLI
// defaults; all of them are echoed into serialized documents.
struct Budgets {
  // Trial division runs over primes below this bound before rho kicks in.
  std::uint64_t trial_bound = 1'000'000;
  // Total Pollard-Brent iterations allowed per factorize() call.
  std::uint64_t rho_iterations = 20'000'000;
  // Random Miller-Rabin rounds above 2^64.
  unsigned mr_rounds = 64;
  // Candidates scanned per arithmetic-progression prime search.
  std::uint64_t prime_candidates = 1'000'000;
  // Largest x accepted by primes_upto().
  std::uint64_t sieve_limit = 200'000'000;
  // Continued-fraction period cap for Pell.
  std::uint64_t pell_period = 1'000'000;
  // Strict thm1 construction rejects targets with a larger prime.
  std::uint64_t max_strict_prime = 13;
  // Node budget of the general descent search.
  std::uint64_t descent_nodes = 200'000;
  // Largest modulus exponent tried when the descent needs a boosting prime.
  unsigned max_boost = 8;
  // Seed for every randomized routine (rho, large-n Miller-Rabin bases).
  std::uint64_t seed = 0x7f4a7c15ULL;
};

}  // namespace totrep
