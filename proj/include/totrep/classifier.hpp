#pragma once

// Membership of (a, b, r, s) in the set of quadruples for which every
// positive rational is (phi(m^r))^a / (phi(n^s))^b.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"

namespace totrep {

struct Quadruple {
  Exponent a = 1, b = 1, r = 1, s = 1;
};

enum class VerdictKind { InGamma, NotInGamma, Unknown };

// Serialized names are stable: Fact1 .. Fact5, Theorem1, GcdAB,
// Fact2-converse.
enum class Reason { None, Fact1, Fact2, Fact3, Fact4, Fact5, Theorem1, GcdAB, Fact2Converse };

enum class OpenRef { None, Question1, Gcd2Open };

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  Reason reason = Reason::None;
  OpenRef open_ref = OpenRef::None;
  Exponent d = 1;  // gcd(ar, bs)
  // A value with no representation, when the rule supplies one.
  std::optional<ExponentVector> exemplar;
  std::optional<Exponent> exemplar_k;
  // The exemplar came from the argument applied to (b, a, s, r); the value is
  // then 2^-k instead of 2^k.
  bool orientation_swapped = false;
  std::string note;
};

std::string_view to_string(VerdictKind kind);
std::string_view to_string(Reason reason);
std::string_view to_string(OpenRef ref);

Verdict classify(const Quadruple& t);

struct ExemplarChoice {
  Exponent k = 0;
  bool swapped = false;
};

// Smallest k >= 1 meeting the non-representability conditions for 2^k (or
// 2^-k when swapped). The Fact3 conditions apply when d does not divide a - b,
// the Fact4 ones otherwise. NoSuchK if no k <= d^2 qualifies.
ExemplarChoice exemplar_exponent(const Quadruple& t, Exponent d);

// Exhaustive check over 1 <= m, n <= bound; returns the first (m, n) in
// lexicographic order with (phi(m^r))^a / (phi(n^s))^b = target.
std::optional<std::pair<std::uint64_t, std::uint64_t>> refute_by_search(const Quadruple& t,
                                                                        const ExponentVector& target,
                                                                        std::uint64_t bound,
                                                                        const Budgets& budgets = {});

}  // namespace totrep
