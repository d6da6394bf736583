#include "totrep/thm2.hpp"

#include <algorithm>
#include <tuple>

#include "totrep/error.hpp"
#include "totrep/primes.hpp"

namespace totrep {

namespace {

// Values of up to this many digits are factored outright; rho settles them
// well inside the default budget. Longer Pell solutions stay cofactors.
constexpr std::size_t kFactorDigits = 24;

// Splits x into a factored part and a cofactor (1 when fully factored).
std::pair<Factorization, Natural> split(const Natural& x, const Budgets& budgets) {
  if (mpz_sizeinbase(x.get_mpz_t(), 10) <= kFactorDigits) {
    try {
      return {factorize(x, budgets), Natural(1)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FactorBoundExceeded) throw;
    }
  }
  return {Factorization{}, x};
}

Witness make_witness(const Thm2Request& req, const Natural& m, const Natural& n0, const Factorization& n_known) {
  Witness w;
  std::tie(w.m, w.m_cofactor) = split(m, req.budgets);
  auto [n_fac, n_co] = split(n0, req.budgets);
  w.n = n_fac * n_known;
  w.n_cofactor = std::move(n_co);
  w.form = Form::thm2(req.k, req.l);
  w.target = factorize(req.q, req.budgets);
  w.verified = verify_thm2(w.m_value(), w.n_value(), req.k, req.l, req.q, req.budgets);
  return w;
}

// One side of phi(top) / phi(bottom) as (value, multiplicity) parts.
using Parts = std::vector<std::pair<Natural, Exponent>>;

// Pairwise coprime numbers > 1 whose products generate every input.
std::vector<Natural> coprime_base(const std::vector<Natural>& inputs) {
  std::vector<Natural> base;
  std::vector<Natural> work(inputs.begin(), inputs.end());
  while (!work.empty()) {
    Natural a = std::move(work.back());
    work.pop_back();
    if (a == 1) continue;
    bool split_any = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const Natural g = gcd(a, base[i]);
      if (g == 1) continue;
      Natural b = std::move(base[i]);
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
      work.push_back(a / g);
      work.push_back(b / g);
      work.push_back(g);
      split_any = true;
      break;
    }
    if (!split_any) base.push_back(std::move(a));
  }
  return base;
}

// Exponent of each base element in the product of `parts`.
std::vector<Exponent> exponents_over(const std::vector<Natural>& base, const Parts& parts) {
  std::vector<Exponent> out(base.size(), 0);
  for (const auto& [value, mult] : parts) {
    Natural rest = value;
    for (std::size_t i = 0; i < base.size() && rest != 1; ++i) {
      const auto e = static_cast<Exponent>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), base[i].get_mpz_t()));
      out[i] += e * mult;
    }
    if (rest != 1) fail(ErrorCode::InvariantBroken, "coprime base does not cover its inputs");
  }
  return out;
}

// phi(top) / phi(bottom) over a coprime base. A base element b present on
// both sides contributes b^(e_top - e_bottom) for every prime it holds, so it
// is factored only when the two exponents differ; shared unfactored parts of
// a Pell solution cancel unseen. `hints` are known primes kept apart from
// the rest of the base.
ExponentVector totient_ratio(const Parts& top, const Parts& bottom, const std::vector<Natural>& hints,
                             const Budgets& budgets) {
  std::vector<Natural> inputs = hints;
  for (const auto& p : top) inputs.push_back(p.first);
  for (const auto& p : bottom) inputs.push_back(p.first);
  const auto base = coprime_base(inputs);
  const auto et = exponents_over(base, top), eb = exponents_over(base, bottom);
  ExponentVector out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (et[i] == 0 && eb[i] == 0) continue;
    if (et[i] > 0 && eb[i] > 0) {
      if (et[i] != eb[i]) out *= factorize(base[i], budgets).as_vector().pow(et[i] - eb[i]);
      continue;
    }
    const auto f = factorize(base[i], budgets);
    if (et[i] > 0) out *= totient(f.pow(et[i]), budgets).as_vector();
    if (eb[i] > 0) out /= totient(f.pow(eb[i]), budgets).as_vector();
  }
  return out;
}

std::vector<Natural> primes_of(std::initializer_list<Factorization> fs) {
  std::vector<Natural> out;
  for (const auto& f : fs) {
    for (const auto& e : f.entries()) out.push_back(e.prime);
  }
  return out;
}

ExponentVector form_value(const Natural& m, const Natural& n, const Natural& k, const Natural& l, const Natural& t,
                          std::vector<Natural> hints, const Budgets& budgets) {
  require(k >= 1 && l >= 1 && n >= 1 && m >= 1, ErrorCode::InvalidArgument, "k, l, m, n must be >= 1");
  require(m * m > t, ErrorCode::InvalidArgument, "k(m^2 - t) must be positive");
  const auto more = primes_of({factorize(k, budgets), factorize(l, budgets)});
  hints.insert(hints.end(), more.begin(), more.end());
  Parts top{{k, 1}};
  if (t == 1) {
    top.push_back({m - 1, 1});
    top.push_back({m + 1, 1});
  } else if (t == 0) {
    top.push_back({m, 2});
  } else {
    top.push_back({m * m - t, 1});
  }
  return totient_ratio(top, Parts{{l, 1}, {n, 2}}, hints, budgets);
}

std::pair<Witness, Thm2Trace> case_one(const Thm2Request& req, Thm2Trace trace) {
  const Budgets& budgets = req.budgets;
  const Natural& v = req.q.den;
  trace.which_case = 1;
  trace.c = exact_sqrt(trace.kluv).value();
  const Natural step = v * v * trace.c * trace.c * req.l;
  const Natural floor = std::max(Natural(2), req.k);

  if (req.t_override) {
    trace.t = *req.t_override;
    require(trace.t >= 1, ErrorCode::InvalidArgument, "t override must be >= 1");
    trace.prime = step * trace.t + 1;
    require(is_prime(trace.prime, budgets) && trace.prime > floor, ErrorCode::InvalidArgument,
            "t override " + to_decimal(trace.t) + " gives " + to_decimal(trace.prime) +
                ", which is not a prime above max{2, k}");
  } else {
    bool found = false;
    for (std::uint64_t i = 1; i <= budgets.prime_candidates; ++i) {
      const Natural candidate = step * i + 1;
      if (candidate > floor && is_prime(candidate, budgets)) {
        trace.t = i;
        trace.prime = candidate;
        found = true;
        break;
      }
    }
    if (!found) {
      fail(ErrorCode::SearchExhausted, "no prime 1 + " + to_decimal(step) + "t above max{2, k} within " +
                                           std::to_string(budgets.prime_candidates) + " values of t (prime-budget)");
    }
  }
  const Natural& t = trace.t;
  const Natural m = 2 * step * t + 1;
  const Natural n = 2 * v * v * v * trace.c * req.l * t * req.k;
  if (gcd(trace.prime, 4 * step * t * req.k) != 1) {
    fail(ErrorCode::InvariantBroken, "prime " + to_decimal(trace.prime) + " is not coprime to 4v^2c^2ltk");
  }
  if (!radical_guard(trace, budgets)) fail(ErrorCode::InvariantBroken, "case 1 radical equality fails");
  return {make_witness(req, m, n, Factorization{}), std::move(trace)};
}

std::pair<Witness, Thm2Trace> case_two(const Thm2Request& req, Thm2Trace trace) {
  const Budgets& budgets = req.budgets;
  trace.which_case = 2;
  const auto fk = factorize(req.k, budgets), fl = factorize(req.l, budgets);
  const auto fq = factorize(req.q, budgets);
  std::vector<PrimePower> mm, nn;
  for (const auto& e : trace.kluv.entries()) {
    const Natural& p = e.prime;
    Thm2PrimeRecord rec;
    rec.prime = p;
    rec.delta = trace.d.exponent_of(p);
    rec.gap = fq.exponent_of(p) - fk.exponent_of(p) - rec.delta + fl.exponent_of(p);
    if (rec.gap % 2 != 0) {
      fail(ErrorCode::InvariantBroken, "odd exponent gap at prime " + to_decimal(p) + " in case 2");
    }
    rec.x = std::max<Exponent>(1, 1 + rec.gap / 2);
    rec.y = rec.x - rec.gap / 2;
    mm.push_back({p, rec.x});
    nn.push_back({p, rec.y});
    trace.records.push_back(std::move(rec));
  }
  trace.big_m = Factorization(std::move(mm));
  trace.big_n = Factorization(std::move(nn));
  const Natural big_m = trace.big_m.value();
  const Natural d = trace.d.value();
  trace.pell = fundamental_solution_scaled(d, trace.big_m, budgets);

  const Natural& m0 = trace.pell->x;
  const Natural& n0 = trace.pell->y;
  if (m0 * m0 - 1 != d * big_m * big_m * n0 * n0) {
    fail(ErrorCode::InvariantBroken, "m0^2 - 1 != d M^2 n0^2");
  }
  if (!radical_guard(trace, budgets)) fail(ErrorCode::InvariantBroken, "case 2 radical equality fails");
  return {make_witness(req, m0, n0, trace.big_n), std::move(trace)};
}

}  // namespace

std::pair<Witness, Thm2Trace> construct_thm2(const Thm2Request& req) {
  require(req.k >= 1 && req.l >= 1, ErrorCode::InvalidArgument, "k and l must be >= 1");
  Thm2Trace trace;
  trace.q = Rational::make(req.q.num, req.q.den);
  trace.k = req.k;
  trace.l = req.l;
  Thm2Request normalized = req;
  normalized.q = trace.q;
  trace.kluv = factorize(req.k * req.l * trace.q.num * trace.q.den, req.budgets);
  trace.d = squarefree_kernel(trace.kluv);
  if (trace.d.is_one()) return case_one(normalized, std::move(trace));
  return case_two(normalized, std::move(trace));
}

ExponentVector quadratic_form_value(const Natural& m, const Natural& n, const Natural& k, const Natural& l,
                                    const Natural& t, const Budgets& budgets) {
  return form_value(m, n, k, l, t, {}, budgets);
}

bool verify_thm2(const Natural& m, const Natural& n, const Natural& k, const Natural& l, const Rational& q,
                 const Budgets& budgets) {
  require(m >= 2, ErrorCode::InvalidArgument, "verify_thm2 needs m >= 2");
  const auto target = factorize(q, budgets);
  return form_value(m, n, k, l, 1, primes_of({target.numerator(), target.denominator()}), budgets) == target;
}

bool radical_guard(const Thm2Trace& trace, const Budgets& budgets) {
  const auto fk = factorize(trace.k, budgets), fl = factorize(trace.l, budgets);
  const auto fv = factorize(trace.q.den, budgets);
  if (trace.which_case == 1) {
    // rad(4 v^2 c^2 l t k) = rad(4 v^6 c^2 l^3 t^2 k^2)
    const auto fc = factorize(trace.c, budgets), ft = factorize(trace.t, budgets);
    const auto four = factorize(4, budgets);
    const auto lhs = four * fv.pow(2) * fc.pow(2) * fl * ft * fk;
    const auto rhs = four * fv.pow(6) * fc.pow(2) * fl.pow(3) * ft.pow(2) * fk.pow(2);
    return radical(lhs) == radical(rhs);
  }
  if (!trace.pell) return false;
  // rad(k d M^2 n0^2) = rad(l N^2 n0^2): a prime on one side only must
  // divide n0, which is checked by division rather than by factoring n0.
  const auto lhs = radical(fk * trace.d * trace.big_m), rhs = radical(fl * trace.big_n);
  const Natural& n0 = trace.pell->y;
  auto covered = [&](const Factorization& from, const Factorization& other) {
    for (const auto& e : from.entries()) {
      if (other.exponent_of(e.prime) == 0 && !mpz_divisible_p(n0.get_mpz_t(), e.prime.get_mpz_t())) return false;
    }
    return true;
  };
  return covered(lhs, rhs) && covered(rhs, lhs);
}

}  // namespace totrep
