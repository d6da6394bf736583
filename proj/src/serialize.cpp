#include "totrep/serialize.hpp"

#include "totrep/error.hpp"
#include "totrep/primes.hpp"

namespace totrep {

namespace {

std::string dec(const Natural& n) { return to_decimal(n); }

Json pairs(const std::vector<PrimePower>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(Json::array({dec(e.prime), e.exponent}));
  return out;
}

std::vector<PrimePower> pairs_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::InvalidArgument, "factored value must be an array of [prime, exponent] pairs");
  std::vector<PrimePower> out;
  for (const auto& item : j) {
    require(item.is_array() && item.size() == 2 && item[0].is_string() && item[1].is_number_integer(),
            ErrorCode::InvalidArgument, "factored entry must be [\"prime\", exponent]");
    out.push_back({parse_natural(item[0].get<std::string>()), item[1].get<Exponent>()});
  }
  return out;
}

// "cofactor" appears only when part of the number is left unfactored.
Json number_doc(const Factorization& f, const Natural& cofactor) {
  Json j;
  j["factored"] = to_json(f);
  if (cofactor != 1) j["cofactor"] = dec(cofactor);
  j["decimal"] = decimal_or_null(f.value() * cofactor);
  return j;
}

Json rational_doc(const Rational& q) { return Json{{"num", dec(q.num)}, {"den", dec(q.den)}}; }

Json params_json(const Form& form) {
  switch (form.kind) {
    case Form::Kind::thm1: return Json{{"b", form.b}};
    case Form::Kind::thm2: return Json{{"k", dec(form.k)}, {"l", dec(form.l)}};
    case Form::Kind::general: return Json{{"a", form.a}, {"b", form.b}, {"r", form.r}, {"s", form.s}};
  }
  return Json::object();
}

std::string kind_name(Form::Kind k) {
  switch (k) {
    case Form::Kind::thm1: return "thm1";
    case Form::Kind::thm2: return "thm2";
    case Form::Kind::general: return "general";
  }
  return "general";
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::InvalidArgument, std::string("document lacks \"") + key + "\"");
  return j.at(key);
}

Natural natural_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_string(), ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be a decimal string");
  return parse_natural(v.get<std::string>());
}

Exponent int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be an integer");
  return v.get<Exponent>();
}

struct LoadedNumber {
  Factorization factored;
  Natural cofactor{1};

  Natural value() const { return factored.value() * cofactor; }
  // Full factorization, factoring the cofactor if there is one.
  Factorization full(const Budgets& budgets) const {
    return cofactor == 1 ? factored : factored * factorize(cofactor, budgets);
  }
};

// Loads m or n, checking that every factored key is prime and that the
// decimal, when present, matches.
LoadedNumber load_number(const Json& doc, const char* key, const Budgets& budgets) {
  const Json& j = field(doc, key);
  LoadedNumber out;
  out.factored = factorization_from_json(field(j, "factored"));
  for (const auto& e : out.factored.entries()) {
    require(is_prime(e.prime, budgets), ErrorCode::InvalidArgument,
            std::string(key) + " lists non-prime factor " + dec(e.prime));
  }
  if (j.contains("cofactor")) {
    out.cofactor = natural_field(j, "cofactor");
    require(out.cofactor >= 1, ErrorCode::InvalidArgument, std::string(key) + " cofactor must be >= 1");
  }
  if (j.contains("decimal") && !j.at("decimal").is_null()) {
    require(j.at("decimal").is_string() && parse_natural(j.at("decimal").get<std::string>()) == out.value(),
            ErrorCode::InvalidArgument, std::string(key) + " decimal disagrees with its factorization");
  }
  return out;
}

}  // namespace

Json to_json(const Factorization& f) { return pairs(f.entries()); }
Json to_json(const ExponentVector& v) { return pairs(v.entries()); }

Json to_json(const Budgets& b) {
  return Json{{"trial_bound", b.trial_bound},       {"rho_iterations", b.rho_iterations},
              {"mr_rounds", b.mr_rounds},           {"prime_candidates", b.prime_candidates},
              {"sieve_limit", b.sieve_limit},       {"pell_period", b.pell_period},
              {"max_strict_prime", b.max_strict_prime}, {"descent_nodes", b.descent_nodes},
              {"max_boost", b.max_boost},           {"seed", b.seed}};
}

Json decimal_or_null(const Natural& n) {
  // sizeinbase may overshoot by one; the exact check only runs near the edge.
  if (mpz_sizeinbase(n.get_mpz_t(), 10) > kMaxDecimalDigits + 1) return nullptr;
  std::string s = dec(n);
  if (s.size() > kMaxDecimalDigits) return nullptr;
  return s;
}

Factorization factorization_from_json(const Json& j) { return Factorization(pairs_from_json(j)); }
ExponentVector exponents_from_json(const Json& j) { return ExponentVector(pairs_from_json(j)); }

Json trace_json(const Thm1Trace& t) {
  Json j;
  j["mode"] = t.mode == Thm1Mode::strict ? "strict" : "compact";
  j["fell_back"] = t.fell_back;
  j["largest_prime"] = dec(t.largest_prime);
  j["s"] = t.s;
  j["t"] = t.t;
  j["modulus"] = dec(t.modulus);
  Json cascade = Json::array();
  for (const auto& st : t.cascade) {
    cascade.push_back(Json{{"prime", dec(st.prime)}, {"alpha", st.alpha}, {"x", st.x}, {"y", st.y}});
  }
  j["cascade"] = std::move(cascade);
  j["a0"] = to_json(t.a0);
  Json finals = Json::array();
  for (const auto& st : t.finals) {
    finals.push_back(Json{{"prime", dec(st.prime)},
                          {"alpha", st.alpha},
                          {"branch", st.even ? "even" : "odd"},
                          {"x", st.x},
                          {"y", st.y},
                          {"accumulator", to_json(st.accumulator)}});
  }
  j["finals"] = std::move(finals);
  return j;
}

Json trace_json(const Thm2Trace& t) {
  Json j;
  j["case"] = t.which_case;
  j["kluv"] = to_json(t.kluv);
  j["d"] = to_json(t.d);
  if (t.which_case == 1) {
    j["c"] = dec(t.c);
    j["t"] = dec(t.t);
    j["prime"] = dec(t.prime);
    return j;
  }
  Json records = Json::array();
  for (const auto& r : t.records) {
    records.push_back(
        Json{{"prime", dec(r.prime)}, {"delta", r.delta}, {"gap", r.gap}, {"x", r.x}, {"y", r.y}});
  }
  j["records"] = std::move(records);
  j["M"] = to_json(t.big_m);
  j["N"] = to_json(t.big_n);
  if (t.pell) j["pell"] = pell_json(*t.pell);
  return j;
}

Json trace_json(const GeneralTrace& t) {
  Json j;
  j["strategy"] = t.strategy;
  if (t.thm1) j["thm1"] = trace_json(*t.thm1);
  if (t.boost) {
    const auto& b = *t.boost;
    j["boost"] = Json{{"prime", dec(b.prime)}, {"t", b.t},   {"modulus", dec(b.modulus)},
                      {"kind", to_string(b.kind)}, {"x", b.x}, {"y", b.y}};
  }
  Json steps = Json::array();
  for (const auto& st : t.steps) {
    steps.push_back(Json{{"prime", dec(st.prime)},
                         {"exponent", st.exponent},
                         {"kind", to_string(st.kind)},
                         {"x", st.x},
                         {"y", st.y}});
  }
  j["steps"] = std::move(steps);
  j["nodes"] = t.nodes;
  return j;
}

Json witness_document(const Witness& w, const Json& trace, const Budgets& budgets) {
  Json j;
  j["tool"] = "totrep";
  j["version"] = TOTREP_VERSION;
  j["form"] = kind_name(w.form.kind);
  j["tag"] = w.form.tag();
  j["params"] = params_json(w.form);
  j["target"] = rational_doc(to_rational(w.target));
  j["m"] = number_doc(w.m, w.m_cofactor);
  j["n"] = number_doc(w.n, w.n_cofactor);
  j["verified"] = w.verified;
  j["trace"] = trace;
  j["config"] = to_json(budgets);
  return j;
}

Json verdict_json(const Verdict& v, const Quadruple& t) {
  Json j;
  j["kind"] = to_string(v.kind);
  if (v.kind == VerdictKind::Unknown) {
    j["open_ref"] = to_string(v.open_ref);
  } else {
    j["reason"] = to_string(v.reason);
  }
  j["quadruple"] = Json::array({t.a, t.b, t.r, t.s});
  j["d"] = v.d;
  if (v.exemplar) {
    j["exemplar"] = Json{{"factored", to_json(*v.exemplar)},
                         {"k", v.exemplar_k.value_or(0)},
                         {"orientation_swapped", v.orientation_swapped}};
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json pell_json(const PellSolution& s) {
  if (s.base_d == 0) {
    return Json{{"D", dec(s.d)}, {"x", dec(s.x)}, {"y", dec(s.y)}, {"period", s.period}, {"squared_up", s.squared_up}};
  }
  // Scaled solutions can run to millions of digits; the witness already
  // carries x and y N.
  return Json{{"D", dec(s.d)},
              {"base_d", dec(s.base_d)},
              {"base_period", s.period},
              {"unit_power", s.unit_power},
              {"x", decimal_or_null(s.x)},
              {"y", decimal_or_null(s.y)}};
}

Json factor_json(const Natural& n, const Factorization& f) {
  return Json{{"n", dec(n)}, {"factored", to_json(f)}};
}

Json hit_record(const SearchHit& h) {
  return Json{{"kind", "hit"}, {"m", std::to_string(h.m)}, {"n", std::to_string(h.n)}, {"verified", h.verified}};
}

Json report_record(const SearchReport& r) {
  Json j;
  j["kind"] = "report";
  j["form"] = Json{{"k", dec(r.form.k)}, {"l", dec(r.form.l)}, {"t", dec(r.form.t)}};
  if (r.pow2_w) j["pow2_w"] = *r.pow2_w;
  j["target"] = rational_doc(r.target);
  j["rectangle"] = Json{{"m", Json::array({1, r.m_limit})}, {"n", Json::array({1, r.n_limit})}};
  j["hits"] = r.hits.size();
  j["skipped"] = Json{{"m_degenerate", r.skips.m_degenerate},
                      {"m_factor_bound", r.skips.m_factor},
                      {"n_factor_bound", r.skips.n_factor}};
  j["inconclusive"] = r.hits.empty();
  j["out_of_question_scope"] = r.out_of_question_scope;
  j["default_limits_arbitrary"] = r.default_limits;
  j["resumed_after"] = r.resumed_after ? Json(*r.resumed_after) : Json(nullptr);
  return j;
}

Json checkpoint_json(const SearchCheckpoint& c) {
  Json j;
  j["kind"] = "checkpoint";
  j["form"] = Json{{"k", dec(c.form.k)}, {"l", dec(c.form.l)}, {"t", dec(c.form.t)}};
  j["target"] = rational_doc(c.target);
  j["n_limit"] = c.n_limit;
  j["last_m"] = c.last_m;
  Json hits = Json::array();
  for (const auto& h : c.hits) hits.push_back(Json{{"m", std::to_string(h.m)}, {"n", std::to_string(h.n)}, {"verified", h.verified}});
  j["hits"] = std::move(hits);
  j["skipped"] = Json{{"m_degenerate", c.skips.m_degenerate},
                      {"m_factor_bound", c.skips.m_factor},
                      {"n_factor_bound", c.skips.n_factor}};
  return j;
}

SearchCheckpoint checkpoint_from_json(const Json& j) {
  require(j.is_object() && j.value("kind", "") == "checkpoint", ErrorCode::InvalidArgument,
          "not a search checkpoint");
  SearchCheckpoint c;
  const Json& form = field(j, "form");
  c.form.k = natural_field(form, "k");
  c.form.l = natural_field(form, "l");
  const Json& t = field(form, "t");
  require(t.is_string(), ErrorCode::InvalidArgument, "\"t\" must be a decimal string");
  require(c.form.t.set_str(t.get<std::string>(), 10) == 0, ErrorCode::InvalidArgument, "bad t in checkpoint");
  const Json& target = field(j, "target");
  c.target = Rational::make(natural_field(target, "num"), natural_field(target, "den"));
  c.n_limit = static_cast<std::uint64_t>(int_field(j, "n_limit"));
  c.last_m = static_cast<std::uint64_t>(int_field(j, "last_m"));
  for (const auto& h : field(j, "hits")) {
    SearchHit hit;
    hit.m = to_u64(natural_field(h, "m"));
    hit.n = to_u64(natural_field(h, "n"));
    hit.verified = field(h, "verified").get<bool>();
    c.hits.push_back(hit);
  }
  const Json& sk = field(j, "skipped");
  c.skips.m_degenerate = static_cast<std::uint64_t>(int_field(sk, "m_degenerate"));
  c.skips.m_factor = static_cast<std::uint64_t>(int_field(sk, "m_factor_bound"));
  c.skips.n_factor = static_cast<std::uint64_t>(int_field(sk, "n_factor_bound"));
  return c;
}

bool verify_document(const Json& doc, const Budgets& budgets) {
  const Json& form = field(doc, "form");
  require(form.is_string(), ErrorCode::InvalidArgument, "\"form\" must be a string");
  const Json& params = field(doc, "params");
  const Json& target = field(doc, "target");
  const Rational q = Rational::make(natural_field(target, "num"), natural_field(target, "den"));
  const ExponentVector qv = factorize(q, budgets);
  const LoadedNumber m = load_number(doc, "m", budgets);
  const LoadedNumber n = load_number(doc, "n", budgets);
  const std::string kind = form.get<std::string>();
  if (kind == "thm1") return verify_rep(m.full(budgets), n.full(budgets), 1, int_field(params, "b"), 2, 2, qv, budgets);
  if (kind == "general") {
    return verify_rep(m.full(budgets), n.full(budgets), int_field(params, "a"), int_field(params, "b"),
                      int_field(params, "r"), int_field(params, "s"), qv, budgets);
  }
  if (kind == "thm2") {
    return verify_thm2(m.value(), n.value(), natural_field(params, "k"), natural_field(params, "l"), q, budgets);
  }
  fail(ErrorCode::InvalidArgument, "unknown form \"" + kind + "\"");
}

}  // namespace totrep
