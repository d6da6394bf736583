#pragma once

// Witnesses for q = (phi(m^r))^a / (phi(n^s))^b on quadruples the
// classifier places in Gamma.
//
// (1, b, 2, 2) and (a, 1, 2, 2) go through the thm1 constructor (the
// latter on 1/q with m and n exchanged). Everything else uses a descent over
// primes from the largest down: a prime p carrying exponent e in the
// remaining target is assigned m-only, n-only or shared exponents (x, y)
// whose contribution p^e (p - 1)^F is divided out, F being a, -b or a - b.
// Since p - 1 only has smaller primes the descent terminates; when it dead
// ends, a boosting prime Q = 1 mod (B!)^t with a p-neutral contribution
// (Q - 1)^F shifts every small valuation first, as the thm1 seed prime does.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"
#include "totrep/classifier.hpp"
#include "totrep/represent.hpp"
#include "totrep/thm1.hpp"

namespace totrep {

enum class DescentKind { none, m_only, n_only, both };

std::string_view to_string(DescentKind kind);

struct DescentStep {
  Natural prime;
  Exponent exponent = 0;  // p-adic exponent the step accounts for
  DescentKind kind = DescentKind::none;
  Exponent x = 0;
  Exponent y = 0;
};

struct BoostPrime {
  Natural prime;
  Exponent t = 0;
  Natural modulus;
  DescentKind kind = DescentKind::none;
  Exponent x = 0;
  Exponent y = 0;
};

struct GeneralTrace {
  // "trivial", "thm1", "thm1-reciprocal" or "descent".
  std::string strategy;
  std::optional<Thm1Trace> thm1;
  std::optional<BoostPrime> boost;
  std::vector<DescentStep> steps;
  std::uint64_t nodes = 0;
};

std::pair<Witness, GeneralTrace> construct_general(const ExponentVector& q, const Quadruple& t,
                                                   const Budgets& budgets = {});

}  // namespace totrep
