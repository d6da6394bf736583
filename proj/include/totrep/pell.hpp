#pragma once

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"

namespace totrep {

// x^2 - d*y^2 = 1 with the least y >= 1.
struct PellSolution {
  Natural x;
  Natural y;
  Natural d;
  // Length of the continued-fraction period of sqrt(d).
  std::uint64_t period = 0;
  // True when the period was odd and the -1 solution was squared up.
  bool squared_up = false;
  // Nonzero for fundamental_solution_scaled(): the solution is the
  // unit_power-th power of the fundamental solution for base_d, and period and
  // squared_up describe sqrt(base_d).
  Natural base_d{0};
  std::uint64_t unit_power = 1;
};

// NotApplicable for d < 2 or d a perfect square; PeriodBudgetExceeded when the
// period of sqrt(d) is longer than budgets.pell_period.
PellSolution fundamental_solution(const Natural& d, const Budgets& budgets = {});

// Fundamental solution of x^2 - d s^2 y^2 = 1, found as the least power of the
// solution for d whose y is divisible by s. Same answer as
// fundamental_solution(d s^2) without walking the much longer period of
// sqrt(d s^2). The power is located prime power by prime power of s; each
// search is capped by budgets.pell_period as well.
PellSolution fundamental_solution_scaled(const Natural& d, const Factorization& s, const Budgets& budgets = {});

}  // namespace totrep
