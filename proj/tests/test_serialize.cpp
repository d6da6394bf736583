#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "totrep/error.hpp"
#include "totrep/serialize.hpp"

using namespace totrep;
using testing_support::fac;
using testing_support::ratio;

namespace {

Json thm1_doc(Exponent b, Thm1Mode mode = Thm1Mode::strict) {
  Thm1Request req;
  req.q = ratio(5, 12);
  req.b = b;
  req.mode = mode;
  const auto [w, trace] = construct_thm1(req);
  return witness_document(w, trace_json(trace), req.budgets);
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (!j.is_structured()) return false;
  for (const auto& child : j) {
    if (has_float(child)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("factored format") {
  CHECK(to_json(fac({{2, 10}, {3, 3}})).dump() == R"([["2",10],["3",3]])");
  CHECK(to_json(testing_support::vec({{2, -2}, {5, 1}})).dump() == R"([["2",-2],["5",1]])");
  CHECK(to_json(Factorization{}).dump() == "[]");
  CHECK(factorization_from_json(Json::parse(R"([["3",1],["2",2]])")) == fac({{2, 2}, {3, 1}}));
  CHECK_THROWS_AS(factorization_from_json(Json::parse(R"([[2,2]])")), Error);
}

TEST_CASE("witness documents are canonical and byte-stable") {
  const Json a = thm1_doc(3), b = thm1_doc(3);
  CHECK(a.dump() == b.dump());
  std::vector<std::string> keys;
  for (auto it = a.begin(); it != a.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"tool", "version", "form", "tag", "params", "target", "m", "n", "verified",
                                         "trace", "config"});
  CHECK(a.at("m").at("decimal") == "51597833379844320000");
  CHECK(a.at("n").at("factored").dump() == R"([["3456001",1]])");
  CHECK(a.at("target").dump() == R"({"num":"5","den":"12"})");
  CHECK(a.at("verified") == true);
  CHECK_FALSE(has_float(a));
}

TEST_CASE("documents re-verify") {
  CHECK(verify_document(thm1_doc(3)));
  CHECK(verify_document(thm1_doc(5, Thm1Mode::compact)));
  Thm2Request req;
  req.q = Rational::make(5, 12);
  req.k = 15;
  req.l = 2;
  const auto [w, trace] = construct_thm2(req);
  const Json doc = witness_document(w, trace_json(trace), req.budgets);
  CHECK(doc.at("params").dump() == R"({"k":"15","l":"2"})");
  CHECK(doc.at("trace").at("pell").at("D") == "1800");
  CHECK(verify_document(Json::parse(doc.dump())));
}

TEST_CASE("tampered documents fail or are rejected") {
  Json doc = thm1_doc(3);
  doc["n"]["factored"] = Json::parse(R"([["3456001",2]])");
  doc["n"]["decimal"] = nullptr;
  CHECK_FALSE(verify_document(doc));

  Json bad_prime = thm1_doc(3);
  bad_prime["n"]["factored"] = Json::parse(R"([["1728001",1]])");
  bad_prime["n"]["decimal"] = "1728001";
  CHECK_THROWS_AS(verify_document(bad_prime), Error);

  Json bad_decimal = thm1_doc(3);
  bad_decimal["m"]["decimal"] = "12";
  CHECK_THROWS_AS(verify_document(bad_decimal), Error);
}

TEST_CASE("decimal expansion is suppressed past 10^4 digits") {
  Natural big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 10'000);
  CHECK(decimal_or_null(big).is_null());  // 10001 digits
  CHECK(decimal_or_null(big - 1).is_string());
}

TEST_CASE("verdict json") {
  CHECK(verdict_json(classify({3, 5, 2, 2}), {3, 5, 2, 2}).dump() ==
        R"({"kind":"Unknown","open_ref":"Question1","quadruple":[3,5,2,2],"d":2})");
  const Json f3 = verdict_json(classify({1, 2, 2, 1}), {1, 2, 2, 1});
  CHECK(f3.at("kind") == "NotInGamma");
  CHECK(f3.at("reason") == "Fact3");
  CHECK(f3.at("exemplar").at("factored").dump() == R"([["2",2]])");
  CHECK(verdict_json(classify({1, 1, 2, 4}), {1, 1, 2, 4}).at("reason") == "Fact2-converse");
}

TEST_CASE("checkpoint round trip") {
  SearchCheckpoint c;
  c.form = SearchForm{15, 2, -7};
  c.target = Rational::make(5, 12);
  c.n_limit = 900;
  c.last_m = 450;
  c.hits = {{14, 72, true}, {19, 72, true}};
  c.skips.m_degenerate = 1;
  const Json j = checkpoint_json(c);
  const auto back = checkpoint_from_json(Json::parse(j.dump()));
  CHECK(back.form.t == -7);
  CHECK(back.hits == c.hits);
  CHECK(back.skips == c.skips);
  CHECK(back.last_m == 450);
  CHECK(checkpoint_json(back).dump() == j.dump());
}

TEST_CASE("cofactors survive a round trip") {
  Witness w;
  w.m = Factorization{};
  w.m_cofactor = 19601;
  w.n = fac({{2, 2}, {3, 2}, {5, 1}});
  w.n_cofactor = 462;
  w.form = Form::thm2(15, 2);
  w.target = ratio(5, 12);
  w.verified = true;
  const Json doc = witness_document(w, Json::object(), Budgets{});
  CHECK(doc.at("m").dump() == R"({"factored":[],"cofactor":"19601","decimal":"19601"})");
  CHECK(doc.at("n").at("decimal") == "83160");
  CHECK(verify_document(Json::parse(doc.dump())));

  Json wrong = doc;
  wrong["n"]["cofactor"] = "463";
  wrong["n"]["decimal"] = nullptr;
  CHECK_FALSE(verify_document(wrong));
}
