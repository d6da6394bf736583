#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "totrep/error.hpp"
#include "totrep/pell.hpp"

using namespace totrep;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("fundamental solution examples") {
  const auto two = fundamental_solution(2);
  CHECK(two.x == 3);
  CHECK(two.y == 2);
  CHECK(two.squared_up);

  const auto big = fundamental_solution(1800);
  CHECK(big.x == 19601);
  CHECK(big.y == 462);
  CHECK_FALSE(big.squared_up);

  CHECK(code_of([] { fundamental_solution(4); }) == ErrorCode::NotApplicable);
  CHECK(code_of([] { fundamental_solution(1); }) == ErrorCode::NotApplicable);
  CHECK(code_of([] { fundamental_solution(0); }) == ErrorCode::NotApplicable);
}

TEST_CASE("long periods") {
  const auto s = fundamental_solution(61);
  CHECK(s.x == Natural("1766319049"));
  CHECK(s.y == Natural("226153980"));
  CHECK(s.squared_up);
  const auto t = fundamental_solution(991);
  CHECK(t.x == Natural("379516400906811930638014896080"));
  CHECK(t.y == Natural("12055735790331359447442538767"));
}

TEST_CASE("period budget") {
  Budgets tight;
  tight.pell_period = 3;
  CHECK(code_of([&] { fundamental_solution(61, tight); }) == ErrorCode::PeriodBudgetExceeded);
}

TEST_CASE("property: solutions satisfy the equation and are minimal below the scan cap") {
  for (unsigned d = 2; d <= 3000; ++d) {
    if (is_perfect_square(d)) continue;
    const auto s = fundamental_solution(d);
    REQUIRE(s.x * s.x - Natural(d) * s.y * s.y == 1);
    const Natural cap = s.y < 5000 ? s.y : Natural(5000);
    for (Natural y = 1; y < cap; ++y) {
      REQUIRE_FALSE(is_perfect_square(Natural(d) * y * y + 1));
    }
  }
}

TEST_CASE("scaled solutions") {
  const auto s = fundamental_solution_scaled(2, testing_support::fac({{2, 1}, {3, 1}, {5, 1}}));
  CHECK(s.d == 1800);
  CHECK(s.x == 19601);
  CHECK(s.y == 462);
  CHECK(s.base_d == 2);
  CHECK(s.unit_power == 6);  // (3 + 2 sqrt 2)^6
  const auto same = fundamental_solution_scaled(7, Factorization{});
  CHECK(same.base_d == 0);
  CHECK(same.x == 8);
}

TEST_CASE("property: scaled solutions agree with the direct continued fraction") {
  testing_support::Gen g(1800);
  for (int i = 0; i < 300; ++i) {
    Natural d = g.urange(2, 300);
    while (is_perfect_square(d)) d = g.urange(2, 300);
    const std::uint64_t s = g.urange(1, 120);
    const auto scaled = fundamental_solution_scaled(d, factorize(from_u64(s)));
    const auto direct = fundamental_solution(d * from_u64(s * s));
    INFO("d = " << d.get_str() << ", s = " << s);
    CHECK(scaled.x == direct.x);
    CHECK(scaled.y == direct.y);
  }
}
