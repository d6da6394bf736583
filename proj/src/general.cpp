#include "totrep/general.hpp"

#include <map>
#include <numeric>

#include "totrep/error.hpp"
#include "totrep/primes.hpp"

namespace totrep {

std::string_view to_string(DescentKind kind) {
  switch (kind) {
    case DescentKind::none: return "none";
    case DescentKind::m_only: return "m";
    case DescentKind::n_only: return "n";
    case DescentKind::both: return "both";
  }
  return "none";
}

namespace {

Exponent ceil_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Exponent floor_mod(Exponent a, Exponent m) {
  const Exponent r = a % m;
  return r < 0 ? r + m : r;
}

struct Option {
  DescentKind kind;
  Exponent x, y;
  Exponent f;  // exponent of (p - 1) in the contribution
};

class Descent {
 public:
  Descent(const Quadruple& t, const Budgets& budgets) : t_(t), budgets_(budgets) {}

  // Exponent pairs whose p-adic contribution is exactly e, in trial order.
  std::vector<Option> options(Exponent e) const {
    std::vector<Option> out;
    const Exponent ra = t_.r * t_.a;
    if (e == 0) {
      out.push_back({DescentKind::none, 0, 0, 0});
      return out;
    }
    if ((e + t_.a) % ra == 0 && (e + t_.a) / ra >= 1) out.push_back({DescentKind::m_only, (e + t_.a) / ra, 0, t_.a});
    if (auto both = shared(e)) out.push_back(*both);
    if (e % t_.b == 0) {
      const Exponent w = 1 - e / t_.b;
      if (w % t_.s == 0 && w / t_.s >= 1) out.push_back({DescentKind::n_only, 0, w / t_.s, -t_.b});
    }
    return out;
  }

  // (rx - 1)a - (sy - 1)b = e with x, y >= 1, least y first.
  std::optional<Option> shared(Exponent e) const {
    const Exponent ra = t_.r * t_.a, sb = t_.s * t_.b;
    const Exponent c = e + t_.a - t_.b;  // ra x - sb y = c
    const Exponent g = std::gcd(ra, sb);
    if (c % g != 0) return std::nullopt;
    const Exponent period = ra / g;
    Exponent y0 = 0;
    for (Exponent y = 1; y <= period; ++y) {
      if (floor_mod(c + sb * y, ra) == 0) {
        y0 = y;
        break;
      }
    }
    if (y0 == 0) fail(ErrorCode::InvariantBroken, "linear congruence without solution despite gcd test");
    const Exponent y_min = std::max<Exponent>(1, ceil_div(ra - c, sb));
    const Exponent y = y0 + period * std::max<Exponent>(0, ceil_div(y_min - y0, period));
    const Exponent x = (c + sb * y) / ra;
    return Option{DescentKind::both, x, y, t_.a - t_.b};
  }

  // Contributions with no exponent at their own prime, usable for boosting.
  std::vector<Option> neutral_options() const {
    std::vector<Option> out;
    if (auto both = shared(0); both && both->f != 0) out.push_back(*both);
    if (t_.r == 1) out.push_back({DescentKind::m_only, 1, 0, t_.a});
    if (t_.s == 1) out.push_back({DescentKind::n_only, 0, 1, -t_.b});
    return out;
  }

  // Returns false on a dead end or when the node budget runs out.
  bool run(const ExponentVector& start, std::vector<DescentStep>& steps) {
    steps.clear();
    exhausted_ = false;
    total_ += nodes_;
    nodes_ = 0;
    return dfs(start, steps);
  }

  std::uint64_t nodes() const { return total_ + nodes_; }

  const ExponentVector& minus_one(const Natural& p) {
    auto it = pm1_.find(p);
    if (it == pm1_.end()) it = pm1_.emplace(p, factorize(p - 1, budgets_).as_vector()).first;
    return it->second;
  }

 private:
  bool dfs(const ExponentVector& rest, std::vector<DescentStep>& steps) {
    if (rest.is_one()) return true;
    const Natural p = rest.max_prime();
    const Exponent e = rest.exponent_of(p);
    for (const auto& opt : options(e)) {
      if (++nodes_ > budgets_.descent_nodes) {
        exhausted_ = true;
        return false;
      }
      ExponentVector next = rest / ExponentVector::prime_power(p, e);
      next /= minus_one(p).pow(opt.f);
      steps.push_back({p, e, opt.kind, opt.x, opt.y});
      if (dfs(next, steps)) return true;
      steps.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  Quadruple t_;
  const Budgets& budgets_;
  std::map<Natural, ExponentVector> pm1_;
  std::uint64_t nodes_ = 0;
  std::uint64_t total_ = 0;
  bool exhausted_ = false;
};

Witness finish(const ExponentVector& q, const Quadruple& t, Factorization m, Factorization n, const Budgets& budgets) {
  Witness w;
  w.m = std::move(m);
  w.n = std::move(n);
  w.form = Form::general(t.a, t.b, t.r, t.s);
  w.target = q;
  w.verified = verify_rep(w.m, w.n, t.a, t.b, t.r, t.s, q, budgets);
  if (!w.verified) fail(ErrorCode::ConstructionFailed, "constructed pair failed exact verification");
  return w;
}

std::optional<std::pair<Witness, GeneralTrace>> via_thm1(const ExponentVector& q, const Quadruple& t,
                                                          const Budgets& budgets) {
  const bool direct = t.a == 1 && t.r == 2 && t.s == 2 && t.b > 1 && t.b % 2 == 1;
  const bool reciprocal = t.b == 1 && t.r == 2 && t.s == 2 && t.a > 1 && t.a % 2 == 1;
  if (!direct && !reciprocal) return std::nullopt;
  Thm1Request req;
  req.q = direct ? q : q.inverse();
  req.b = direct ? t.b : t.a;
  req.budgets = budgets;
  try {
    auto [w, trace] = construct_thm1(req);
    GeneralTrace gt;
    gt.strategy = direct ? "thm1" : "thm1-reciprocal";
    gt.thm1 = std::move(trace);
    auto m = direct ? w.m : w.n;
    auto n = direct ? w.n : w.m;
    return std::pair{finish(q, t, std::move(m), std::move(n), budgets), std::move(gt)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ModulusTooLarge || e.code() == ErrorCode::SearchExhausted) return std::nullopt;
    throw;
  }
}

}  // namespace

std::pair<Witness, GeneralTrace> construct_general(const ExponentVector& q, const Quadruple& t,
                                                   const Budgets& budgets) {
  const Verdict verdict = classify(t);
  if (verdict.kind != VerdictKind::InGamma) {
    fail(ErrorCode::UnsupportedQuadruple, "quadruple (" + std::to_string(t.a) + ", " + std::to_string(t.b) + ", " +
                                              std::to_string(t.r) + ", " + std::to_string(t.s) + ") is " +
                                              std::string(to_string(verdict.kind)));
  }
  if (q.is_one()) {
    GeneralTrace gt;
    gt.strategy = "trivial";
    return {finish(q, t, {}, {}, budgets), std::move(gt)};
  }
  if (auto done = via_thm1(q, t, budgets)) return std::move(*done);

  Descent descent(t, budgets);
  GeneralTrace gt;
  gt.strategy = "descent";

  auto assemble = [&](const std::optional<BoostPrime>& boost) {
    std::vector<PrimePower> m_parts, n_parts;
    if (boost) {
      if (boost->x > 0) m_parts.push_back({boost->prime, boost->x});
      if (boost->y > 0) n_parts.push_back({boost->prime, boost->y});
    }
    for (const auto& st : gt.steps) {
      if (st.x > 0) m_parts.push_back({st.prime, st.x});
      if (st.y > 0) n_parts.push_back({st.prime, st.y});
    }
    gt.boost = boost;
    gt.nodes = descent.nodes();
    return std::pair{finish(q, t, Factorization(std::move(m_parts)), Factorization(std::move(n_parts)), budgets),
                     std::move(gt)};
  };

  if (descent.run(q, gt.steps)) return assemble(std::nullopt);

  const Natural base = std::max(Natural(2), q.max_prime());
  Natural factorial;
  mpz_fac_ui(factorial.get_mpz_t(), to_u64(base));
  const auto neutral = descent.neutral_options();
  for (unsigned k = 1; k <= budgets.max_boost && !neutral.empty(); ++k) {
    Natural modulus;
    mpz_pow_ui(modulus.get_mpz_t(), factorial.get_mpz_t(), k);
    const Natural prime = find_prime_in_ap({1, modulus, base + 1, budgets.prime_candidates}, budgets);
    for (const auto& opt : neutral) {
      const ExponentVector start = q / descent.minus_one(prime).pow(opt.f);
      if (descent.run(start, gt.steps)) {
        return assemble(BoostPrime{prime, static_cast<Exponent>(k), modulus, opt.kind, opt.x, opt.y});
      }
    }
  }
  fail(ErrorCode::ConstructionFailed, "descent found no witness within " + std::to_string(budgets.max_boost) +
                                          " boosting rounds and " + std::to_string(budgets.descent_nodes) +
                                          " nodes (descent budget)");
}

}  // namespace totrep
