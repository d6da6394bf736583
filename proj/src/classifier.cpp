#include "totrep/classifier.hpp"

#include <map>
#include <numeric>
#include <vector>

#include "totrep/error.hpp"
#include "totrep/represent.hpp"

namespace totrep {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::InGamma: return "InGamma";
    case VerdictKind::NotInGamma: return "NotInGamma";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Reason reason) {
  switch (reason) {
    case Reason::None: return "None";
    case Reason::Fact1: return "Fact1";
    case Reason::Fact2: return "Fact2";
    case Reason::Fact3: return "Fact3";
    case Reason::Fact4: return "Fact4";
    case Reason::Fact5: return "Fact5";
    case Reason::Theorem1: return "Theorem1";
    case Reason::GcdAB: return "GcdAB";
    case Reason::Fact2Converse: return "Fact2-converse";
  }
  return "None";
}

std::string_view to_string(OpenRef ref) {
  switch (ref) {
    case OpenRef::None: return "None";
    case OpenRef::Question1: return "Question1";
    case OpenRef::Gcd2Open: return "Gcd2-open";
  }
  return "None";
}

namespace {

bool divides(Exponent d, Exponent x) { return x % d == 0; }

Verdict not_in(Reason reason, Exponent d, const Quadruple& t) {
  Verdict v;
  v.kind = VerdictKind::NotInGamma;
  v.reason = reason;
  v.d = d;
  const auto choice = exemplar_exponent(t, d);
  v.exemplar_k = choice.k;
  v.orientation_swapped = choice.swapped;
  v.exemplar = ExponentVector::prime_power(2, choice.swapped ? -choice.k : choice.k);
  if (choice.swapped) v.note = "exemplar derived with the roles of (a, r) and (b, s) exchanged";
  return v;
}

}  // namespace

Verdict classify(const Quadruple& t) {
  require(t.a >= 1 && t.b >= 1 && t.r >= 1 && t.s >= 1, ErrorCode::InvalidArgument,
          "quadruple entries must be positive");
  const Exponent d = std::gcd(t.a * t.r, t.b * t.s);
  Verdict v;
  v.d = d;

  if (std::gcd(t.a, t.b) > 1) {
    v.kind = VerdictKind::NotInGamma;
    v.reason = Reason::GcdAB;
    v.exemplar = ExponentVector::prime_power(2, 1);
    v.exemplar_k = 1;
    v.note = "with g = gcd(a, b) > 1 every value is a g-th power of a rational, and 2 is not";
    return v;
  }
  if (t.a == 1 && t.b == 1 && t.r == 2 && t.s == 2) {
    v.kind = VerdictKind::InGamma;
    v.reason = Reason::Fact2;
    return v;
  }
  if (d == 1) {
    v.kind = VerdictKind::InGamma;
    v.reason = Reason::Fact1;
    return v;
  }
  if (!divides(d, t.a - t.b)) return not_in(Reason::Fact3, d, t);
  if (d > 2) return not_in(Reason::Fact4, d, t);
  if (t.a == 1 && t.b == 1) {
    v.kind = VerdictKind::NotInGamma;
    v.reason = Reason::Fact2Converse;
    v.note = "non-representability rests on a known classification of phi(k m^r)/phi(l n^s); no exemplar is constructed";
    return v;
  }

  // d = 2 and 2 | (a - b) with gcd(a, b) = 1: a and b are both odd.
  const bool left_shape = t.b == 1 && t.s == 2 && t.a > 1 && t.r % 2 == 0;
  const bool right_shape = t.a == 1 && t.r == 2 && t.b > 1 && t.s % 2 == 0;
  if (left_shape || right_shape) {
    v.kind = VerdictKind::InGamma;
    v.reason = (t.r == 2 && t.s == 2) ? Reason::Theorem1 : Reason::Fact5;
    return v;
  }
  v.kind = VerdictKind::Unknown;
  v.open_ref = (t.r == 2 && t.s == 2 && t.a > 1 && t.b > 1) ? OpenRef::Question1 : OpenRef::Gcd2Open;
  return v;
}

ExemplarChoice exemplar_exponent(const Quadruple& t, Exponent d) {
  require(d > 1, ErrorCode::InvalidArgument, "exemplar_exponent needs d > 1");
  Exponent a = t.a, b = t.b;
  bool swapped = false;
  const bool fact3 = !divides(d, t.a - t.b);
  if (fact3) {
    // The argument wants 2 | b, 2 !| a when d = 2, and r > 1 when d > 2.
    if (d == 2) {
      swapped = t.a % 2 == 0;
    } else {
      swapped = t.r == 1;
    }
  } else {
    swapped = t.a > t.b;
  }
  if (swapped) std::swap(a, b);

  for (Exponent k = 1; k <= d * d; ++k) {
    const bool ok = fact3 ? (!divides(d, a + k) && !divides(d, a - b + k)) : (!divides(d, k) && !divides(d, a + k));
    if (ok) return {k, swapped};
  }
  fail(ErrorCode::NoSuchK, "no exemplar exponent k <= d^2 for d = " + std::to_string(d));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> refute_by_search(const Quadruple& t,
                                                                        const ExponentVector& target,
                                                                        std::uint64_t bound,
                                                                        const Budgets& budgets) {
  // Index target * (phi(n^s))^b by value, then probe (phi(m^r))^a.
  std::map<ExponentVector, std::vector<std::uint64_t>> wanted;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const auto fn = factorize(from_u64(n), budgets);
    wanted[target * totient(fn.pow(t.s), budgets).as_vector().pow(t.b)].push_back(n);
  }
  for (std::uint64_t m = 1; m <= bound; ++m) {
    const auto fm = factorize(from_u64(m), budgets);
    const auto it = wanted.find(totient(fm.pow(t.r), budgets).as_vector().pow(t.a));
    if (it == wanted.end()) continue;
    for (std::uint64_t n : it->second) {
      if (verify_rep(fm, factorize(from_u64(n), budgets), t.a, t.b, t.r, t.s, target, budgets)) {
        return std::pair{m, n};
      }
    }
  }
  return std::nullopt;
}

}  // namespace totrep
