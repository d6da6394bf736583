#include "totrep/pell.hpp"

#include <numeric>

#include "totrep/error.hpp"

namespace totrep {

namespace {

struct Unit {
  Natural x, y;
};

Unit mul(const Unit& a, const Unit& b, const Natural& d) { return {a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x}; }

Unit mul_mod(const Unit& a, const Unit& b, const Natural& d, const Natural& mod) {
  return {(a.x * b.x + d * a.y * b.y) % mod, (a.x * b.y + a.y * b.x) % mod};
}

// Least j >= 1 with mod | y_j. The admissible j form a subgroup of Z (units
// congruent to a rational integer mod `mod` are closed under products and
// conjugation), so the first hit is the generator.
std::uint64_t index_mod(const Unit& base, const Natural& d, const Natural& mod, const Budgets& budgets) {
  const Unit step{base.x % mod, base.y % mod};
  Unit cur = step;
  for (std::uint64_t j = 1;; ++j) {
    if (cur.y == 0) return j;
    if (j >= budgets.pell_period) {
      fail(ErrorCode::PeriodBudgetExceeded, "no power of the Pell unit below " + std::to_string(budgets.pell_period) +
                                                " has y divisible by " + to_decimal(mod) + " (pell-budget)");
    }
    cur = mul_mod(cur, step, d, mod);
  }
}

}  // namespace

PellSolution fundamental_solution(const Natural& d, const Budgets& budgets) {
  if (d < 2 || is_perfect_square(d)) {
    fail(ErrorCode::NotApplicable, "Pell coefficient " + to_decimal(d) + " must be a non-square >= 2");
  }
  Natural a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());

  // Continued fraction of sqrt(d) via the (m, q, a) recurrence; (h, k) is
  // the current convergent.
  Natural m = 0, q = 1, a = a0;
  Natural h_prev = 1, h = a0, k_prev = 0, k = 1;
  std::uint64_t period = 0;
  for (;;) {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    if (++period > budgets.pell_period) {
      fail(ErrorCode::PeriodBudgetExceeded, "continued-fraction period of sqrt(" + to_decimal(d) + ") exceeds " +
                                                std::to_string(budgets.pell_period) + " (pell-budget)");
    }
    if (a == 2 * a0) break;
    Natural h_next = a * h + h_prev;
    Natural k_next = a * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
  }

  PellSolution out{h, k, d, period, false};
  if (period % 2 == 1) {
    out.x = h * h + d * k * k;
    out.y = 2 * h * k;
    out.squared_up = true;
  }
  if (out.x * out.x - d * out.y * out.y != 1) {
    fail(ErrorCode::InvariantBroken, "Pell solution for " + to_decimal(d) + " does not satisfy x^2 - d y^2 = 1");
  }
  return out;
}

PellSolution fundamental_solution_scaled(const Natural& d, const Factorization& s, const Budgets& budgets) {
  PellSolution base = fundamental_solution(d, budgets);
  if (s.is_one()) return base;
  const Unit unit{base.x, base.y};
  std::uint64_t power = 1;
  for (const auto& e : s.entries()) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), e.prime.get_mpz_t(), static_cast<unsigned long>(e.exponent));
    power = std::lcm(power, index_mod(unit, d, pe, budgets));
  }

  Unit acc{1, 0}, sq = unit;
  for (std::uint64_t j = power; j > 0; j >>= 1) {
    if (j & 1) acc = mul(acc, sq, d);
    if (j > 1) sq = mul(sq, sq, d);
  }
  const Natural scale = s.value();
  if (acc.y % scale != 0) fail(ErrorCode::InvariantBroken, "scaled Pell power is not divisible by the scale");

  PellSolution out;
  out.d = d * scale * scale;
  out.x = std::move(acc.x);
  out.y = acc.y / scale;
  out.period = base.period;
  out.squared_up = base.squared_up;
  out.base_d = d;
  out.unit_power = power;
  if (out.x * out.x - out.d * out.y * out.y != 1) {
    fail(ErrorCode::InvariantBroken, "scaled Pell solution does not satisfy x^2 - D y^2 = 1");
  }
  return out;
}

}  // namespace totrep
