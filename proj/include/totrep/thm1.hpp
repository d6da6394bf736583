#pragma once

// Witnesses for q = phi(m^2) / (phi(n^2))^b, b odd and > 1.
//
// Strict mode follows the constructive argument: a seed prime q1 = 1 modulo
// (p_s!)^t, a cascade over the largest prime factors of the accumulated
// (q_i - 1) terms, then one final step per prime p <= p_s in descending
// order. Compact mode looks for a small seed prime P = 1 modulo the
// primorial of p_s whose P - 1 is p_s-smooth, which skips the cascade.

#include <optional>
#include <utility>
#include <vector>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"
#include "totrep/represent.hpp"

namespace totrep {

enum class Thm1Mode { strict, compact };

struct Thm1Request {
  ExponentVector q;
  Exponent b = 3;
  std::optional<Exponent> t_override;
  Thm1Mode mode = Thm1Mode::strict;
  Budgets budgets;
};

struct CascadeStep {
  Natural prime;
  Exponent alpha = 0;
  Exponent x = 0;
  Exponent y = 0;
};

struct FinalStep {
  Natural prime;
  Exponent alpha = 0;
  bool even = false;
  Exponent x = 0;
  // 0 on the odd branch, where the n-part is 1.
  Exponent y = 0;
  // (p - 1)^(b - 1) on the even branch, 1 / (p - 1) on the odd branch.
  ExponentVector accumulator;
};

struct Thm1Trace {
  Thm1Mode mode = Thm1Mode::strict;
  bool fell_back = false;
  Natural largest_prime{1};
  std::size_t s = 0;
  Exponent t = 0;
  Natural modulus{1};
  std::vector<CascadeStep> cascade;
  ExponentVector a0;
  std::vector<FinalStep> finals;
};

// Least t >= 1 with t(b - 1) > max_j v_{p_j}((1/q) prod_{p <= p_s} (p - 1)).
Exponent required_t(const ExponentVector& q, Exponent b);

struct StepSolution {
  Exponent x = 0;
  Exponent y = 0;
};

// (2x - 1) - (2y - 1) b = target with y = 1; ParityViolation on odd target.
StepSolution solve_step(Exponent target, Exponent b);

std::pair<Witness, Thm1Trace> construct_thm1(const Thm1Request& req);

}  // namespace totrep
