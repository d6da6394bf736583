#pragma once

// Witnesses for q = phi(k(m^2 - 1)) / phi(l n^2).
//
// With kluv = c^2 a prime P = 1 + v^2 c^2 l t gives m = 2P - 1 and
// n = 2 v^3 c l t k. Otherwise d, the square-free kernel of kluv, is > 1;
// per-prime exponent equations fix M and N, and the fundamental solution of
// x^2 - d M^2 y^2 = 1 gives m = x, n = y N.

#include <optional>
#include <utility>
#include <vector>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"
#include "totrep/pell.hpp"
#include "totrep/represent.hpp"

namespace totrep {

struct Thm2Request {
  Rational q;
  Natural k{1};
  Natural l{1};
  std::optional<Natural> t_override;
  Budgets budgets;
};

struct Thm2PrimeRecord {
  Natural prime;
  Exponent delta = 0;
  // Twice (x - y): v_p(u) - v_p(v) - v_p(k) - v_p(d) + v_p(l).
  Exponent gap = 0;
  Exponent x = 0;
  Exponent y = 0;
};

struct Thm2Trace {
  Rational q;
  Natural k{1}, l{1};
  Factorization kluv;
  Factorization d;
  int which_case = 1;
  // Case 1.
  Natural c{0}, t{0}, prime{0};
  // Case 2.
  std::vector<Thm2PrimeRecord> records;
  Factorization big_m, big_n;
  std::optional<PellSolution> pell;
};

// Pell solutions above a couple of dozen digits are not factored: m and the
// n0 part of n stay as cofactors, and verification cancels them exactly.
std::pair<Witness, Thm2Trace> construct_thm2(const Thm2Request& req);

// phi(k(m^2 - t)) / phi(l n^2) in factored form; InvalidArgument unless
// k(m^2 - t) >= 1 and n >= 1.
ExponentVector quadratic_form_value(const Natural& m, const Natural& n, const Natural& k, const Natural& l,
                                    const Natural& t, const Budgets& budgets = {});

bool verify_thm2(const Natural& m, const Natural& n, const Natural& k, const Natural& l, const Rational& q,
                 const Budgets& budgets = {});

// Recomputes the radical equality the case relies on.
bool radical_guard(const Thm2Trace& trace, const Budgets& budgets = {});

}  // namespace totrep
