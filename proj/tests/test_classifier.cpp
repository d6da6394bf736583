#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "support.hpp"
#include "totrep/classifier.hpp"
#include "totrep/error.hpp"
#include "totrep/general.hpp"

using namespace totrep;
using testing_support::vec;

namespace {

void expect(const Quadruple& t, VerdictKind kind, Reason reason, OpenRef ref = OpenRef::None) {
  const Verdict v = classify(t);
  INFO("(" << t.a << "," << t.b << "," << t.r << "," << t.s << ")");
  CHECK(v.kind == kind);
  CHECK(v.reason == reason);
  CHECK(v.open_ref == ref);
}

}  // namespace

TEST_CASE("classify examples") {
  expect({1, 1, 2, 2}, VerdictKind::InGamma, Reason::Fact2);
  expect({1, 2, 2, 1}, VerdictKind::NotInGamma, Reason::Fact3);
  expect({1, 1, 3, 3}, VerdictKind::NotInGamma, Reason::Fact4);
  expect({3, 1, 4, 2}, VerdictKind::InGamma, Reason::Fact5);
  expect({3, 5, 2, 2}, VerdictKind::Unknown, Reason::None, OpenRef::Question1);
  expect({1, 1, 2, 4}, VerdictKind::NotInGamma, Reason::Fact2Converse);
  expect({2, 3, 1, 1}, VerdictKind::InGamma, Reason::Fact1);
  expect({1, 5, 2, 2}, VerdictKind::InGamma, Reason::Theorem1);
  expect({5, 1, 2, 2}, VerdictKind::InGamma, Reason::Theorem1);
  expect({1, 3, 2, 4}, VerdictKind::InGamma, Reason::Fact5);
  expect({2, 4, 1, 1}, VerdictKind::NotInGamma, Reason::GcdAB);
  expect({3, 5, 2, 4}, VerdictKind::Unknown, Reason::None, OpenRef::Gcd2Open);
  expect({1, 1, 1, 1}, VerdictKind::InGamma, Reason::Fact1);
}

TEST_CASE("verdict details") {
  const Verdict v = classify({1, 2, 2, 1});
  CHECK(v.d == 2);
  REQUIRE(v.exemplar.has_value());
  CHECK(*v.exemplar == vec({{2, 2}}));
  CHECK(v.exemplar_k == 2);

  const Verdict f4 = classify({1, 1, 3, 3});
  CHECK(f4.d == 3);
  CHECK(*f4.exemplar == vec({{2, 1}}));

  const Verdict g = classify({2, 4, 1, 1});
  CHECK(*g.exemplar == vec({{2, 1}}));
  CHECK_FALSE(g.note.empty());

  const Verdict c = classify({1, 1, 2, 4});
  CHECK_FALSE(c.exemplar.has_value());
}

TEST_CASE("exemplar_exponent examples") {
  CHECK(exemplar_exponent({1, 1, 3, 3}, 3).k == 1);
  CHECK(exemplar_exponent({1, 2, 2, 1}, 2).k == 2);
  CHECK(exemplar_exponent({1, 4, 5, 5}, 5).k == 1);
}

TEST_CASE("orientation swap when the odd side sits on the right") {
  // (2, 1, 1, 2): d = 2, a even. The conditions are applied to (1, 2, 2, 1)
  // and the exemplar becomes 2^-k.
  const Verdict v = classify({2, 1, 1, 2});
  CHECK(v.kind == VerdictKind::NotInGamma);
  CHECK(v.reason == Reason::Fact3);
  CHECK(v.orientation_swapped);
  REQUIRE(v.exemplar.has_value());
  CHECK(valuation(*v.exemplar, 2) < 0);
  CHECK_FALSE(refute_by_search({2, 1, 1, 2}, *v.exemplar, 120).has_value());
}

TEST_CASE("refute_by_search examples") {
  CHECK_FALSE(refute_by_search({1, 1, 3, 3}, vec({{2, 1}}), 300).has_value());
  CHECK_FALSE(refute_by_search({1, 2, 2, 1}, vec({{2, 2}}), 300).has_value());
  const auto hit = refute_by_search({1, 1, 2, 2}, vec({{2, 1}}), 50);
  REQUIRE(hit.has_value());
  // phi(m^2) = 2 phi(n^2), checked with the naive oracle.
  CHECK(testing_support::naive_phi(hit->first * hit->first) == 2 * testing_support::naive_phi(hit->second * hit->second));
}

TEST_CASE("property: classify is total and consistent") {
  for (Exponent a = 1; a <= 6; ++a) {
    for (Exponent b = 1; b <= 6; ++b) {
      for (Exponent r = 1; r <= 4; ++r) {
        for (Exponent s = 1; s <= 4; ++s) {
          const Quadruple t{a, b, r, s};
          const Verdict v = classify(t);
          CHECK(v.d == std::gcd(a * r, b * s));
          if (v.kind == VerdictKind::NotInGamma && v.reason != Reason::Fact2Converse) {
            REQUIRE(v.exemplar.has_value());
            // Small scan only; the acceptance run covers bound 200.
            CHECK_FALSE(refute_by_search(t, *v.exemplar, 30).has_value());
          }
          if (v.kind == VerdictKind::Unknown) CHECK(v.open_ref != OpenRef::None);
          if (v.kind == VerdictKind::InGamma) CHECK(v.reason != Reason::None);
        }
      }
    }
  }
}

TEST_CASE("property: InGamma verdicts construct 5/12") {
  const auto q = factorize(Rational::make(5, 12));
  for (Exponent a = 1; a <= 4; ++a) {
    for (Exponent b = 1; b <= 4; ++b) {
      for (Exponent r = 1; r <= 4; ++r) {
        for (Exponent s = 1; s <= 4; ++s) {
          const Quadruple t{a, b, r, s};
          if (classify(t).kind != VerdictKind::InGamma) continue;
          INFO("(" << a << "," << b << "," << r << "," << s << ")");
          const auto [w, trace] = construct_general(q, t);
          CHECK(w.verified);
        }
      }
    }
  }
}
