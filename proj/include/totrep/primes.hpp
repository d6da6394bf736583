#pragma once

#include <cstdint>
#include <vector>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"

namespace totrep {

// Deterministic below 2^64 (first twelve prime bases). Above, the same bases
// plus budgets.mr_rounds bases drawn from a generator seeded by
// budgets.seed, for an error bound of 4^-rounds.
bool is_prime(const Natural& n, const Budgets& budgets = {});
bool is_prime_u64(std::uint64_t n);

struct ApSearchSpec {
  Natural residue{1};
  Natural modulus{1};
  Natural min_value{2};
  std::uint64_t max_candidates = 1'000'000;
};

// Smallest prime p = residue (mod modulus) with p >= min_value, scanning
// residue, residue + modulus, ... in order.
Natural find_prime_in_ap(const ApSearchSpec& spec, const Budgets& budgets = {});

std::vector<std::uint64_t> primes_upto(std::uint64_t x, const Budgets& budgets = {});

namespace detail {
// Sieved primes below `bound`, shared read-only after first use.
const std::vector<std::uint32_t>& trial_primes(std::uint64_t bound);
}  // namespace detail

}  // namespace totrep
