#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "totrep/error.hpp"
#include "totrep/search.hpp"

using namespace totrep;

namespace {

SearchTask task(std::int64_t k, std::int64_t l, std::int64_t t, std::uint64_t u, std::uint64_t v, std::uint64_t ml,
                std::uint64_t nl) {
  SearchTask s;
  s.form = SearchForm{k, l, t};
  s.target = Rational::make(from_u64(u), from_u64(v));
  s.m_limit = ml;
  s.n_limit = nl;
  return s;
}

// Cross product with the naive oracle: phi(k(m^2 - t)) * v == u * phi(l n^2).
std::vector<SearchHit> brute(std::uint64_t k, std::uint64_t l, std::int64_t t, std::uint64_t u, std::uint64_t v,
                             std::uint64_t ml, std::uint64_t nl) {
  std::vector<SearchHit> out;
  for (std::uint64_t m = 1; m <= ml; ++m) {
    const std::int64_t inner = static_cast<std::int64_t>(m * m) - t;
    if (inner < 1) continue;
    const std::uint64_t lhs = testing_support::naive_phi(k * static_cast<std::uint64_t>(inner)) * v;
    for (std::uint64_t n = 1; n <= nl; ++n) {
      if (lhs == u * testing_support::naive_phi(l * n * n)) out.push_back({m, n, true});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("tabulate examples") {
  const auto rows = tabulate(SearchForm{1, 1, -1}, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].phi->value() == 1);
  CHECK(rows[1].phi->value() == 4);
  CHECK(rows[2].phi->value() == 4);

  const auto one = tabulate(SearchForm{1, 1, 1}, 1);
  CHECK(one[0].skip == SkipReason::degenerate);

  const auto big = tabulate(SearchForm{15, 1, 1}, 19601);
  const Natural m = 19601;
  CHECK(big.back().x == 19601);
  CHECK(*big.back().phi == totient(factorize(15 * (m * m - 1))));
}

TEST_CASE("search examples") {
  SearchTask p;
  p.pow2_w = 0;
  p.m_limit = 5;
  p.n_limit = 5;
  const auto r = search(p);
  REQUIRE_FALSE(r.hits.empty());
  CHECK(r.hits.front() == SearchHit{1, 1, true});
  CHECK(r.form.t == -1);
  CHECK_FALSE(r.out_of_question_scope);

  const auto kr = search(task(1, 1, 0, 2, 1, 30, 30));
  CHECK_FALSE(kr.hits.empty());
  CHECK(kr.out_of_question_scope);

  const auto ex = search(task(15, 2, 1, 5, 12, 19601, 83160));
  CHECK(std::find(ex.hits.begin(), ex.hits.end(), SearchHit{19601, 83160, true}) != ex.hits.end());
  CHECK(ex.out_of_question_scope);
}

TEST_CASE("hits agree with the brute-force cross product") {
  struct Case {
    std::uint64_t k, l;
    std::int64_t t;
    std::uint64_t u, v;
  };
  for (const Case& c : {Case{15, 2, 1, 5, 12}, Case{1, 1, -1, 2, 1}, Case{3, 5, 2, 1, 2}, Case{1, 2, -3, 3, 2},
                        Case{2, 1, 5, 1, 1}}) {
    const auto r = search(task(c.k, c.l, c.t, c.u, c.v, 150, 300));
    CHECK(r.hits == brute(c.k, c.l, c.t, c.u, c.v, 150, 300));
    for (const auto& h : r.hits) CHECK(h.verified);
  }
}

TEST_CASE("report fields") {
  auto t = task(2, 1, 3, 1, 1, 40, 50);
  t.default_limits = true;
  const auto r = search(t);
  CHECK(r.m_limit == 40);
  CHECK(r.n_limit == 50);
  CHECK(r.default_limits);
  CHECK(r.skips.m_degenerate == 1);  // m = 1
  CHECK_FALSE(r.out_of_question_scope);
  CHECK_FALSE(r.resumed_after.has_value());
  CHECK(out_of_question_scope(4));
  CHECK(out_of_question_scope(0));
  CHECK_FALSE(out_of_question_scope(-4));
  CHECK_FALSE(out_of_question_scope(2));
}

TEST_CASE("resume equals a fresh run") {
  auto t = task(15, 2, 1, 5, 12, 3000, 6000);
  t.block = 250;
  std::vector<SearchCheckpoint> seen;
  auto short_task = t;
  short_task.m_limit = 1300;
  search(short_task, std::nullopt, [&](const SearchCheckpoint& c) { seen.push_back(c); });
  REQUIRE(seen.size() == 6);
  CHECK(seen.back().last_m == 1300);

  const auto fresh = search(t);
  for (const auto& cp : {seen[1], seen.back()}) {
    const auto resumed = search(t, cp);
    CHECK(resumed.hits == fresh.hits);
    CHECK(resumed.skips == fresh.skips);
    CHECK(resumed.resumed_after == cp.last_m);
  }
}

TEST_CASE("checkpoints from another task are refused") {
  auto t = task(15, 2, 1, 5, 12, 100, 100);
  SearchCheckpoint cp;
  search(t, std::nullopt, [&](const SearchCheckpoint& c) { cp = c; });
  auto other = t;
  other.n_limit = 101;
  CHECK_THROWS_AS(search(other, cp), Error);
  auto shorter = t;
  shorter.m_limit = 50;
  CHECK_THROWS_AS(search(shorter, cp), Error);
}

TEST_CASE("threads do not change the hit list") {
  auto t = task(15, 2, 1, 5, 12, 5000, 20000);
  const auto one = search(t);
  for (unsigned threads : {2u, 3u, 8u}) {
    t.threads = threads;
    t.block = 777;
    CHECK(search(t).hits == one.hits);
  }
}

TEST_CASE("invalid tasks") {
  CHECK_THROWS_AS(search(task(15, 2, 1, 5, 12, 0, 10)), Error);
  CHECK_THROWS_AS(search(task(0, 2, 1, 5, 12, 10, 10)), Error);
}
