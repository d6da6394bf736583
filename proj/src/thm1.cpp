#include "totrep/thm1.hpp"

#include <algorithm>

#include "totrep/error.hpp"
#include "totrep/primes.hpp"

namespace totrep {

namespace {

Exponent floor_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<Natural> primes_through(const Natural& p_s) {
  std::vector<Natural> out;
  if (p_s < 2) return out;
  for (std::uint64_t p : primes_upto(to_u64(p_s))) out.push_back(from_u64(p));
  return out;
}

void check_b(Exponent b) {
  require(b >= 3 && b % 2 == 1, ErrorCode::InvalidArgument, "b must be odd and > 1, got " + std::to_string(b));
}

// phi(p^(2x)) / (phi(p^(2y)))^b for a single prime.
ExponentVector step_contribution(const Natural& p, Exponent x, Exponent y, Exponent b, const Budgets& budgets) {
  return representation_value(Factorization::prime_power(p, x), Factorization::prime_power(p, y), 1, b, 2, 2,
                              budgets);
}

// Final steps over primes (descending). Returns false, leaving `finals`
// partially filled, as soon as some alpha is not positive.
bool finalize(const ExponentVector& q, const ExponentVector& a0, const std::vector<Natural>& primes, Exponent b,
              const Budgets& budgets, std::vector<FinalStep>& finals) {
  finals.clear();
  ExponentVector acc = q * a0;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const Natural& p = *it;
    FinalStep step;
    step.prime = p;
    step.alpha = acc.exponent_of(p);
    if (step.alpha <= 0) return false;
    const auto pm1 = factorize(p - 1, budgets).as_vector();
    step.even = step.alpha % 2 == 0;
    if (step.even) {
      const auto xy = solve_step(step.alpha, b);
      step.x = xy.x;
      step.y = xy.y;
      step.accumulator = pm1.pow(b - 1);
    } else {
      step.x = (step.alpha + 1) / 2;
      step.y = 0;
      step.accumulator = pm1.inverse();
    }
    acc *= step.accumulator;
    finals.push_back(std::move(step));
  }
  return true;
}

std::pair<Witness, Thm1Trace> assemble(const Thm1Request& req, Thm1Trace trace) {
  const Budgets& budgets = req.budgets;
  std::vector<PrimePower> m_parts, n_parts;
  ExponentVector telescoped;
  ExponentVector cascade_product;
  for (const auto& st : trace.cascade) {
    m_parts.push_back({st.prime, st.x});
    n_parts.push_back({st.prime, st.y});
    cascade_product *= step_contribution(st.prime, st.x, st.y, req.b, budgets);
  }
  telescoped = cascade_product;
  for (const auto& st : trace.finals) {
    m_parts.push_back({st.prime, st.x});
    if (st.y > 0) n_parts.push_back({st.prime, st.y});
    telescoped *= step_contribution(st.prime, st.x, st.y, req.b, budgets);
  }
  // Per-step identities must multiply back to 1/A0 and then to q.
  if (cascade_product != trace.a0.inverse()) {
    fail(ErrorCode::InvariantBroken, "cascade contributions do not telescope to 1/A0");
  }
  if (telescoped != req.q) fail(ErrorCode::InvariantBroken, "step contributions do not telescope to q");

  Witness w;
  w.m = Factorization(std::move(m_parts));
  w.n = Factorization(std::move(n_parts));
  w.form = Form::thm1(req.b);
  w.target = req.q;
  w.verified = verify_rep(w.m, w.n, 1, req.b, 2, 2, req.q, budgets);
  return {std::move(w), std::move(trace)};
}

std::pair<Witness, Thm1Trace> construct_strict(const Thm1Request& req, bool fell_back) {
  const Budgets& budgets = req.budgets;
  const Exponent b = req.b;
  Thm1Trace trace;
  trace.mode = Thm1Mode::strict;
  trace.fell_back = fell_back;
  trace.largest_prime = req.q.max_prime();
  if (trace.largest_prime > from_u64(budgets.max_strict_prime)) {
    fail(ErrorCode::ModulusTooLarge, "largest prime " + to_decimal(trace.largest_prime) + " of q exceeds " +
                                         std::to_string(budgets.max_strict_prime) +
                                         " (max-strict-prime); the (p_s!)^t progression is out of reach");
  }
  const auto primes = primes_through(trace.largest_prime);
  trace.s = primes.size();

  const Exponent needed = required_t(req.q, b);
  trace.t = req.t_override.value_or(needed);
  if (trace.t < needed) {
    fail(ErrorCode::InvalidArgument,
         "t override " + std::to_string(trace.t) + " is below the required " + std::to_string(needed));
  }

  Natural factorial = 1;
  mpz_fac_ui(factorial.get_mpz_t(), to_u64(trace.largest_prime));
  mpz_pow_ui(trace.modulus.get_mpz_t(), factorial.get_mpz_t(), static_cast<unsigned long>(trace.t));

  // Seed prime first, then the cascade over maximal prime factors.
  ApSearchSpec ap{1, trace.modulus, 2, budgets.prime_candidates};
  Natural q1 = find_prime_in_ap(ap, budgets);
  auto xy = solve_step(0, b);
  trace.cascade.push_back({q1, 0, xy.x, xy.y});
  ExponentVector remaining = factorize(q1 - 1, budgets).as_vector();
  for (;;) {
    const Natural next = remaining.max_prime();
    if (next <= trace.largest_prime) break;
    if (next >= trace.cascade.back().prime) fail(ErrorCode::InvariantBroken, "cascade primes not decreasing");
    CascadeStep st;
    st.prime = next;
    st.alpha = remaining.exponent_of(next);
    xy = solve_step(st.alpha * (b - 1), b);
    st.x = xy.x;
    st.y = xy.y;
    remaining /= ExponentVector::prime_power(next, st.alpha);
    remaining *= factorize(next - 1, budgets).as_vector();
    trace.cascade.push_back(std::move(st));
  }
  trace.a0 = remaining.pow(b - 1);
  if (!trace.a0.is_integer()) fail(ErrorCode::InvariantBroken, "A0 is not an integer");
  for (const auto& p : primes) {
    if (trace.a0.exponent_of(p) < trace.t * (b - 1)) {
      fail(ErrorCode::InvariantBroken, "v_" + to_decimal(p) + "(A0) is below t(b-1)");
    }
  }

  if (!finalize(req.q, trace.a0, primes, b, budgets, trace.finals)) {
    fail(ErrorCode::InvariantBroken, "a final-step exponent is not positive at prime " +
                                         to_decimal(trace.finals.empty() ? trace.largest_prime
                                                                         : trace.finals.back().prime));
  }
  return assemble(req, std::move(trace));
}

std::pair<Witness, Thm1Trace> construct_compact(const Thm1Request& req) {
  const Budgets& budgets = req.budgets;
  const Exponent b = req.b;
  Thm1Trace trace;
  trace.mode = Thm1Mode::compact;
  trace.largest_prime = req.q.max_prime();
  const auto primes = primes_through(trace.largest_prime);
  trace.s = primes.size();
  Natural primorial = 1;
  for (const auto& p : primes) primorial *= p;
  trace.modulus = primorial;

  const auto xy = solve_step(0, b);
  Natural candidate = primorial + 1;
  for (std::uint64_t i = 0; i < budgets.prime_candidates; ++i, candidate += primorial) {
    if (!is_prime(candidate, budgets)) continue;
    const auto pm1 = factorize(candidate - 1, budgets);
    if (pm1.max_prime() > trace.largest_prime) continue;
    const auto a0 = pm1.as_vector().pow(b - 1);
    if (!finalize(req.q, a0, primes, b, budgets, trace.finals)) continue;
    trace.cascade = {{candidate, 0, xy.x, xy.y}};
    trace.a0 = a0;
    return assemble(req, std::move(trace));
  }
  return construct_strict(req, true);
}

}  // namespace

Exponent required_t(const ExponentVector& q, Exponent b) {
  check_b(b);
  require(!q.is_one(), ErrorCode::InvalidArgument, "required_t needs q != 1");
  ExponentVector x = q.inverse();
  const auto primes = primes_through(q.max_prime());
  for (const auto& p : primes) x *= factorize(p - 1).as_vector();
  Exponent worst = x.exponent_of(primes.front());
  for (const auto& p : primes) worst = std::max(worst, x.exponent_of(p));
  return std::max<Exponent>(1, floor_div(worst, b - 1) + 1);
}

StepSolution solve_step(Exponent target, Exponent b) {
  check_b(b);
  if (target % 2 != 0) {
    fail(ErrorCode::ParityViolation, "step target " + std::to_string(target) +
                                         " is odd; (2x-1) - (2y-1)b is always even for odd b");
  }
  require(target >= 0, ErrorCode::InvalidArgument, "step target must be >= 0");
  return {(target + b + 1) / 2, 1};
}

std::pair<Witness, Thm1Trace> construct_thm1(const Thm1Request& req) {
  check_b(req.b);
  if (req.q.is_one()) {
    Thm1Trace trace;
    trace.mode = req.mode;
    Witness w;
    w.form = Form::thm1(req.b);
    w.target = req.q;
    w.verified = verify_rep(w.m, w.n, 1, req.b, 2, 2, req.q, req.budgets);
    return {std::move(w), std::move(trace)};
  }
  if (req.mode == Thm1Mode::compact) return construct_compact(req);
  return construct_strict(req, false);
}

}  // namespace totrep
