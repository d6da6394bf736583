// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "proc.hpp"
#include "support.hpp"
#include "totrep/classifier.hpp"
#include "totrep/error.hpp"
#include "totrep/pell.hpp"
#include "totrep/represent.hpp"
#include "totrep/search.hpp"
#include "totrep/serialize.hpp"
#include "totrep/thm1.hpp"
#include "totrep/thm2.hpp"

using namespace totrep;
using Json = nlohmann::ordered_json;
using testing_support::fac;
using testing_support::ratio;
using testing_support::run_cli;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs >= limit_s) {
    o.ok = false;
    o.detail = "over time budget";
  }
  if (!o.ok) ++failures;
  std::printf("%s  %2d  %-34s %8.3fs (limit %gs)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, secs, limit_s,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

Json cli_json(Outcome& o, const std::string& args) {
  const auto r = run_cli(args + " --json");
  o.expect(r.status == 0, "cli exit " + std::to_string(r.status));
  return r.status == 0 ? Json::parse(r.out) : Json::object();
}

Factorization factored(const Json& j) { return factorization_from_json(j.at("factored")); }

// Smallest y in [1, limit] with D y^2 + 1 a square, or 0.
std::uint64_t brute_pell_y(std::uint64_t d, std::uint64_t limit) {
  for (std::uint64_t y = 1; y <= limit; ++y) {
    const std::uint64_t v = d * y * y + 1;
    auto x = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (x * x > v) --x;
    while ((x + 1) * (x + 1) <= v) ++x;
    if (x * x == v) return y;
  }
  return 0;
}

}  // namespace

int main() {
  criterion(1, "thm1 5/12 b=3 golden", 10, [](Outcome& o) {
    const Json doc = cli_json(o, "thm1 --q 5/12 --b 3");
    if (!o.ok) return;
    const auto m = factored(doc.at("m")), n = factored(doc.at("n"));
    o.expect(m == fac({{2, 8}, {3, 3}, {5, 4}, {3456001, 2}}), "m differs");
    o.expect(n == fac({{3456001, 1}}), "n differs");
    o.expect(doc.at("verified") == true, "not verified");
    o.expect(verify_rep(m, n, 1, 3, 2, 2, ratio(5, 12)), "identity fails on recheck");
    // Progression 1728000 t + 1: t = 1 is 11^2 * 14281, t = 2 is the prime.
    o.expect(!testing_support::naive_is_prime(1728001), "1728001 prime?");
    o.expect(testing_support::naive_is_prime(3456001), "3456001 not prime");
  });

  criterion(2, "thm1 5/12 b=5 golden", 10, [](Outcome& o) {
    const Json doc = cli_json(o, "thm1 --q 5/12 --b 5");
    if (!o.ok) return;
    const auto m = factored(doc.at("m")), n = factored(doc.at("n"));
    o.expect(m == fac({{2, 10}, {3, 4}, {5, 5}, {14401, 3}}), "m differs");
    o.expect(n == fac({{14401, 1}}), "n differs");
    o.expect(doc.at("verified") == true, "not verified");
    o.expect(verify_rep(m, n, 1, 5, 2, 2, ratio(5, 12)), "identity fails on recheck");
  });

  criterion(3, "small-prime witnesses verify", 1, [](Outcome& o) {
    o.expect(verify_rep(fac({{2, 2}, {3, 1}, {5, 2}, {241, 2}}), fac({{241, 1}}), 1, 3, 2, 2, ratio(5, 12)), "241");
    o.expect(verify_rep(fac({{2, 2}, {3, 2}, {5, 3}, {61, 3}}), fac({{61, 1}}), 1, 5, 2, 2, ratio(5, 12)), "61");
  });

  criterion(4, "thm2 5/12 (15,2) golden", 5, [](Outcome& o) {
    const Json doc = cli_json(o, "thm2 --q 5/12 --k 15 --l 2");
    if (!o.ok) return;
    o.expect(doc.at("m").at("decimal") == "19601", "m differs");
    o.expect(doc.at("n").at("decimal") == "83160", "n differs");
    o.expect(doc.at("verified") == true, "not verified");
    const Json& tr = doc.at("trace");
    o.expect(tr.at("pell").at("D") == "1800" && tr.at("pell").at("x") == "19601" && tr.at("pell").at("y") == "462",
             "pell differs");
    o.expect(verify_thm2(19601, 83160, 15, 2, Rational::make(5, 12)), "identity fails on recheck");
  });

  criterion(5, "thm2 5/12 (3,5) golden", 30, [](Outcome& o) {
    const Json doc = cli_json(o, "thm2 --q 5/12 --k 3 --l 5 --t-override 8");
    if (!o.ok) return;
    o.expect(doc.at("m").at("decimal") == "10368001", "m differs");
    o.expect(doc.at("n").at("decimal") == "12441600", "n differs");
    o.expect(doc.at("verified") == true, "not verified");
    const Json free = cli_json(o, "thm2 --q 5/12 --k 3 --l 5");
    if (!o.ok) return;
    o.expect(free.at("verified") == true, "no-override witness not verified");
    o.expect(verify_thm2(parse_natural(free.at("m").at("decimal").get<std::string>()),
                         parse_natural(free.at("n").at("decimal").get<std::string>()), 3, 5, Rational::make(5, 12)),
             "no-override identity fails on recheck");
  });

  criterion(6, "thm1 property suite (50)", 300, [](Outcome& o) {
    testing_support::Gen g(20261014);
    for (int i = 0; i < 50; ++i) {
      ExponentVector q = testing_support::vec({{2, g.range(-3, 3)}, {3, g.range(-3, 3)}, {5, g.range(-3, 3)}});
      Thm1Request req;
      req.q = q;
      req.b = g.pick(std::vector<Exponent>{3, 5});
      const auto [w, trace] = construct_thm1(req);
      o.expect(w.verified && verify_rep(w.m, w.n, 1, req.b, 2, 2, q), "case " + std::to_string(i));
    }
  });

  criterion(7, "thm2 property suite (50)", 300, [](Outcome& o) {
    testing_support::Gen g(1014);
    for (int i = 0; i < 50; ++i) {
      const auto u = g.urange(1, 50), v = g.urange(1, 50), k = g.urange(1, 50), l = g.urange(1, 50);
      Thm2Request req;
      req.q = Rational::make(from_u64(u), from_u64(v));
      req.k = from_u64(k);
      req.l = from_u64(l);
      const auto [w, trace] = construct_thm2(req);
      o.expect(w.verified && verify_thm2(w.m_value(), w.n_value(), req.k, req.l, req.q),
               "case " + std::to_string(i));
    }
  });

  criterion(8, "pell vs brute force, D <= 200", 60, [](Outcome& o) {
    constexpr std::uint64_t kLimit = 100000;
    for (std::uint64_t d = 2; d <= 200; ++d) {
      const auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
      if (r * r == d) continue;
      const PellSolution s = fundamental_solution(from_u64(d));
      const std::uint64_t y = brute_pell_y(d, kLimit);
      if (y == 0) {
        // Fundamental y lies past the brute-force window.
        o.expect(s.y > kLimit, "D=" + std::to_string(d) + " brute force found nothing below the solver's y");
      } else {
        o.expect(s.y == y, "D=" + std::to_string(d) + " y differs");
      }
      o.expect(s.x * s.x - from_u64(d) * s.y * s.y == 1, "D=" + std::to_string(d) + " not a solution");
    }
    const PellSolution big = fundamental_solution(1800);
    o.expect(big.x == 19601 && big.y == 462, "D=1800");
    o.expect(brute_pell_y(1800, kLimit) == 462, "D=1800 brute force");
  });

  criterion(9, "classifier table", 1, [](Outcome& o) {
    struct Row {
      Quadruple t;
      VerdictKind kind;
      std::vector<Reason> reasons;
      OpenRef ref;
    };
    const std::vector<Row> rows = {
        {{1, 1, 2, 2}, VerdictKind::InGamma, {Reason::Fact2}, OpenRef::None},
        {{1, 1, 2, 4}, VerdictKind::NotInGamma, {Reason::Fact2Converse}, OpenRef::None},
        {{2, 3, 1, 1}, VerdictKind::InGamma, {Reason::Fact1}, OpenRef::None},
        {{1, 2, 2, 1}, VerdictKind::NotInGamma, {Reason::Fact3}, OpenRef::None},
        {{1, 1, 3, 3}, VerdictKind::NotInGamma, {Reason::Fact4}, OpenRef::None},
        {{3, 1, 4, 2}, VerdictKind::InGamma, {Reason::Fact5}, OpenRef::None},
        {{1, 5, 2, 2}, VerdictKind::InGamma, {Reason::Fact5, Reason::Theorem1}, OpenRef::None},
        {{3, 5, 2, 2}, VerdictKind::Unknown, {Reason::None}, OpenRef::Question1},
    };
    for (const auto& row : rows) {
      const Verdict v = classify(row.t);
      bool reason_ok = false;
      for (Reason r : row.reasons) reason_ok = reason_ok || v.reason == r;
      o.expect(v.kind == row.kind && reason_ok && v.open_ref == row.ref,
               "(" + std::to_string(row.t.a) + "," + std::to_string(row.t.b) + "," + std::to_string(row.t.r) + "," +
                   std::to_string(row.t.s) + ")");
    }
  });

  criterion(10, "refutation scans to 200", 120, [](Outcome& o) {
    o.expect(!refute_by_search({1, 1, 3, 3}, testing_support::vec({{2, 1}}), 200).has_value(), "(1,1,3,3)");
    o.expect(!refute_by_search({1, 2, 2, 1}, testing_support::vec({{2, 2}}), 200).has_value(), "(1,2,2,1)");
  });

  criterion(11, "core totient identities", 30, [](Outcome& o) {
    testing_support::Gen g(77);
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 1000003};
    for (int i = 0; i < 1000; ++i) {
      Natural m = 1, n = 1;
      for (std::uint64_t p : primes) {
        if (g.urange(0, 3) != 0) continue;
        Natural pm, pn;
        mpz_ui_pow_ui(pm.get_mpz_t(), p, g.urange(1, 6));
        mpz_ui_pow_ui(pn.get_mpz_t(), p, g.urange(1, 6));
        m *= pm;
        n *= pn;
      }
      const Natural phi_m = totient(factorize(m)).value(), phi_n = totient(factorize(n)).value();
      o.expect(phi_m * n == m * phi_n, "rad-equal pair " + std::to_string(i));
    }
    for (int i = 0; i < 1000; ++i) {
      std::uint64_t a = g.urange(1, 1'000'000'000), b = g.urange(1, 1'000'000'000);
      while (std::gcd(a, b) != 1) b = g.urange(1, 1'000'000'000);
      const Natural ab = from_u64(a) * from_u64(b);
      o.expect(totient(factorize(ab)).value() ==
                   totient(factorize(from_u64(a))).value() * totient(factorize(from_u64(b))).value(),
               "coprime pair " + std::to_string(i));
      o.expect(totient(factorize(from_u64(a))).value() == testing_support::naive_phi(a), "naive phi");
    }
  });

  criterion(12, "search regression (20000 x 90000)", 120, [](Outcome& o) {
    SearchTask t;
    t.form = SearchForm{15, 2, 1};
    t.target = Rational::make(5, 12);
    t.m_limit = 20000;
    t.n_limit = 90000;
    const auto report = search(t);
    bool found = false;
    for (const auto& h : report.hits) found = found || (h.m == 19601 && h.n == 83160 && h.verified);
    o.expect(found, "hit (19601, 83160) missing");
  });

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
