#include "totrep/totrep.h"

#include <charconv>
#include <new>
#include <string>

#include "totrep/classifier.hpp"
#include "totrep/error.hpp"
#include "totrep/general.hpp"
#include "totrep/pell.hpp"
#include "totrep/search.hpp"
#include "totrep/serialize.hpp"
#include "totrep/thm1.hpp"
#include "totrep/thm2.hpp"

using namespace totrep;

struct totrep_context {
  Budgets budgets;
};

struct totrep_result {
  totrep_status status = TOTREP_OK;
  std::string text;
  std::string message;
  int flag = 0;
};

namespace {

totrep_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return TOTREP_INVALID_ARGUMENT;
    case ErrorCode::FactorBoundExceeded: return TOTREP_FACTOR_BOUND_EXCEEDED;
    case ErrorCode::NotPrime: return TOTREP_NOT_PRIME;
    case ErrorCode::NotASquare: return TOTREP_NOT_A_SQUARE;
    case ErrorCode::ParityViolation: return TOTREP_PARITY_VIOLATION;
    case ErrorCode::SearchExhausted: return TOTREP_SEARCH_EXHAUSTED;
    case ErrorCode::GcdViolation: return TOTREP_GCD_VIOLATION;
    case ErrorCode::SieveBudgetExceeded: return TOTREP_SIEVE_BUDGET_EXCEEDED;
    case ErrorCode::NotApplicable: return TOTREP_NOT_APPLICABLE;
    case ErrorCode::PeriodBudgetExceeded: return TOTREP_PERIOD_BUDGET_EXCEEDED;
    case ErrorCode::ModulusTooLarge: return TOTREP_MODULUS_TOO_LARGE;
    case ErrorCode::InvariantBroken: return TOTREP_INVARIANT_BROKEN;
    case ErrorCode::UnsupportedQuadruple: return TOTREP_UNSUPPORTED_QUADRUPLE;
    case ErrorCode::ConstructionFailed: return TOTREP_CONSTRUCTION_FAILED;
    case ErrorCode::NoSuchK: return TOTREP_NO_SUCH_K;
  }
  return TOTREP_INTERNAL;
}

const char* str_or_empty(const char* s) { return s ? s : ""; }

// Runs body, which fills the result text and flag; exceptions become a status.
template <class F>
totrep_status run(totrep_context* ctx, totrep_result** out, F&& body) {
  if (!out) return TOTREP_INVALID_ARGUMENT;
  *out = new (std::nothrow) totrep_result;
  if (!*out) return TOTREP_INTERNAL;
  totrep_result& res = **out;
  if (!ctx) {
    res.status = TOTREP_INVALID_ARGUMENT;
    res.message = "InvalidArgument: null context";
    return res.status;
  }
  try {
    body(res, ctx->budgets);
    res.status = TOTREP_OK;
  } catch (const Error& e) {
    res.status = status_of(e.code());
    res.message = e.what();
    res.text.clear();
  } catch (const Json::exception& e) {
    res.status = TOTREP_INVALID_ARGUMENT;
    res.message = std::string("InvalidArgument: malformed JSON: ") + e.what();
    res.text.clear();
  } catch (const std::exception& e) {
    res.status = TOTREP_INTERNAL;
    res.message = e.what();
    res.text.clear();
  }
  return res.status;
}

std::string dump(const Json& j) { return j.dump(); }

Quadruple quad(int64_t a, int64_t b, int64_t r, int64_t s) {
  require(a >= 1 && b >= 1 && r >= 1 && s >= 1, ErrorCode::InvalidArgument, "a, b, r, s must all be >= 1");
  return Quadruple{a, b, r, s};
}

Natural json_natural(const Json& j, const char* key, const Natural& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_integer()) return Natural(std::to_string(v.get<int64_t>()));
  require(v.is_string(), ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be an integer or string");
  Natural out;
  require(out.set_str(v.get<std::string>(), 10) == 0, ErrorCode::InvalidArgument,
          std::string("\"") + key + "\" is not an integer");
  return out;
}

std::uint64_t json_u64(const Json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const Natural v = json_natural(j, key, 0);
  require(v >= 0 && fits_u64(v), ErrorCode::InvalidArgument, std::string("\"") + key + "\" out of range");
  return to_u64(v);
}

}  // namespace

extern "C" {

const char* totrep_version(void) { return TOTREP_VERSION; }

const char* totrep_status_name(totrep_status status) {
  switch (status) {
    case TOTREP_OK: return "Ok";
    case TOTREP_INVALID_ARGUMENT: return "InvalidArgument";
    case TOTREP_FACTOR_BOUND_EXCEEDED: return "FactorBoundExceeded";
    case TOTREP_NOT_PRIME: return "NotPrime";
    case TOTREP_NOT_A_SQUARE: return "NotASquare";
    case TOTREP_PARITY_VIOLATION: return "ParityViolation";
    case TOTREP_SEARCH_EXHAUSTED: return "SearchExhausted";
    case TOTREP_GCD_VIOLATION: return "GcdViolation";
    case TOTREP_SIEVE_BUDGET_EXCEEDED: return "SieveBudgetExceeded";
    case TOTREP_NOT_APPLICABLE: return "NotApplicable";
    case TOTREP_PERIOD_BUDGET_EXCEEDED: return "PeriodBudgetExceeded";
    case TOTREP_MODULUS_TOO_LARGE: return "ModulusTooLarge";
    case TOTREP_INVARIANT_BROKEN: return "InvariantBroken";
    case TOTREP_UNSUPPORTED_QUADRUPLE: return "UnsupportedQuadruple";
    case TOTREP_CONSTRUCTION_FAILED: return "ConstructionFailed";
    case TOTREP_NO_SUCH_K: return "NoSuchK";
    case TOTREP_INTERNAL: return "Internal";
  }
  return "Internal";
}

totrep_context* totrep_context_new(void) { return new (std::nothrow) totrep_context; }

void totrep_context_free(totrep_context* ctx) { delete ctx; }

totrep_status totrep_context_set(totrep_context* ctx, const char* key, const char* value) {
  if (!ctx || !key || !value) return TOTREP_INVALID_ARGUMENT;
  const std::string_view text(value);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) return TOTREP_INVALID_ARGUMENT;
  Budgets& b = ctx->budgets;
  const std::string_view k(key);
  if (k == "trial_bound") {
    if (v < 2) return TOTREP_INVALID_ARGUMENT;
    b.trial_bound = v;
  } else if (k == "rho_iterations") {
    b.rho_iterations = v;
  } else if (k == "mr_rounds") {
    b.mr_rounds = static_cast<unsigned>(v);
  } else if (k == "prime_candidates") {
    b.prime_candidates = v;
  } else if (k == "sieve_limit") {
    b.sieve_limit = v;
  } else if (k == "pell_period") {
    b.pell_period = v;
  } else if (k == "max_strict_prime") {
    b.max_strict_prime = v;
  } else if (k == "descent_nodes") {
    b.descent_nodes = v;
  } else if (k == "max_boost") {
    b.max_boost = static_cast<unsigned>(v);
  } else if (k == "seed") {
    b.seed = v;
  } else {
    return TOTREP_INVALID_ARGUMENT;
  }
  return TOTREP_OK;
}

void totrep_result_free(totrep_result* res) { delete res; }
totrep_status totrep_result_status(const totrep_result* res) { return res ? res->status : TOTREP_INVALID_ARGUMENT; }
const char* totrep_result_text(const totrep_result* res) { return res ? res->text.c_str() : ""; }
const char* totrep_result_message(const totrep_result* res) { return res ? res->message.c_str() : ""; }
int totrep_result_flag(const totrep_result* res) { return res ? res->flag : 0; }

totrep_status totrep_thm1(totrep_context* ctx, const char* q, int64_t b, int64_t t_override, int compact,
                          totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    Thm1Request req;
    req.q = factorize(Rational::parse(str_or_empty(q)), budgets);
    req.b = b;
    if (t_override > 0) req.t_override = t_override;
    req.mode = compact ? Thm1Mode::compact : Thm1Mode::strict;
    req.budgets = budgets;
    const auto [w, trace] = construct_thm1(req);
    res.text = dump(witness_document(w, trace_json(trace), budgets));
    res.flag = w.verified;
  });
}

totrep_status totrep_thm2(totrep_context* ctx, const char* q, const char* k, const char* l, const char* t_override,
                          totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    Thm2Request req;
    req.q = Rational::parse(str_or_empty(q));
    req.k = k ? parse_natural(k) : Natural(1);
    req.l = l ? parse_natural(l) : Natural(1);
    if (t_override) req.t_override = parse_natural(t_override);
    req.budgets = budgets;
    const auto [w, trace] = construct_thm2(req);
    res.text = dump(witness_document(w, trace_json(trace), budgets));
    res.flag = w.verified;
  });
}

totrep_status totrep_general(totrep_context* ctx, const char* q, int64_t a, int64_t b, int64_t r, int64_t s,
                             totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const auto target = factorize(Rational::parse(str_or_empty(q)), budgets);
    const auto [w, trace] = construct_general(target, quad(a, b, r, s), budgets);
    res.text = dump(witness_document(w, trace_json(trace), budgets));
    res.flag = w.verified;
  });
}

totrep_status totrep_classify(totrep_context* ctx, int64_t a, int64_t b, int64_t r, int64_t s, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets&) {
    const Quadruple t = quad(a, b, r, s);
    res.text = dump(verdict_json(classify(t), t));
    res.flag = 1;
  });
}

totrep_status totrep_refute(totrep_context* ctx, int64_t a, int64_t b, int64_t r, int64_t s, const char* target,
                            uint64_t bound, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const Quadruple t = quad(a, b, r, s);
    const auto value = factorize(Rational::parse(str_or_empty(target)), budgets);
    const auto hit = refute_by_search(t, value, bound, budgets);
    Json j;
    j["quadruple"] = Json::array({a, b, r, s});
    j["target"] = to_json(value);
    j["bound"] = bound;
    j["found"] = hit.has_value();
    if (hit) j["witness"] = Json{{"m", std::to_string(hit->first)}, {"n", std::to_string(hit->second)}};
    res.text = dump(j);
    res.flag = hit.has_value();
  });
}

totrep_status totrep_verify_rep(totrep_context* ctx, const char* m, const char* n, int64_t a, int64_t b, int64_t r,
                                int64_t s, const char* q, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const Quadruple t = quad(a, b, r, s);
    const auto fm = parse_factored(str_or_empty(m), budgets);
    const auto fn = parse_factored(str_or_empty(n), budgets);
    const auto target = factorize(Rational::parse(str_or_empty(q)), budgets);
    const bool ok = verify_rep(fm, fn, t.a, t.b, t.r, t.s, target, budgets);
    res.text = dump(Json{{"verified", ok}});
    res.flag = ok;
  });
}

totrep_status totrep_verify_thm2(totrep_context* ctx, const char* m, const char* n, const char* k, const char* l,
                                 const char* q, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const bool ok = verify_thm2(parse_natural(str_or_empty(m)), parse_natural(str_or_empty(n)),
                                k ? parse_natural(k) : Natural(1), l ? parse_natural(l) : Natural(1),
                                Rational::parse(str_or_empty(q)), budgets);
    res.text = dump(Json{{"verified", ok}});
    res.flag = ok;
  });
}

totrep_status totrep_verify_document(totrep_context* ctx, const char* json, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const bool ok = verify_document(Json::parse(str_or_empty(json)), budgets);
    res.text = dump(Json{{"verified", ok}});
    res.flag = ok;
  });
}

totrep_status totrep_pell(totrep_context* ctx, const char* d, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    res.text = dump(pell_json(fundamental_solution(parse_natural(str_or_empty(d)), budgets)));
    res.flag = 1;
  });
}

totrep_status totrep_factor(totrep_context* ctx, const char* n, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const Natural value = parse_natural(str_or_empty(n));
    require(value >= 1, ErrorCode::InvalidArgument, "factor needs n >= 1");
    res.text = dump(factor_json(value, factorize(value, budgets)));
    res.flag = 1;
  });
}

totrep_status totrep_search(totrep_context* ctx, const char* task_json, const char* checkpoint_text,
                            totrep_checkpoint_fn on_checkpoint, void* user, totrep_result** out) {
  return run(ctx, out, [&](totrep_result& res, const Budgets& budgets) {
    const Json doc = Json::parse(str_or_empty(task_json));
    require(doc.is_object(), ErrorCode::InvalidArgument, "search task must be a JSON object");
    SearchTask task;
    task.budgets = budgets;
    if (doc.contains("pow2_w")) {
      task.pow2_w = static_cast<Exponent>(json_u64(doc, "pow2_w", 0));
    } else {
      task.form.k = json_natural(doc, "k", 1);
      task.form.l = json_natural(doc, "l", 1);
      task.form.t = json_natural(doc, "t", 1);
      require(doc.contains("target") && doc.at("target").is_string(), ErrorCode::InvalidArgument,
              "search task needs a \"target\" rational string");
      task.target = Rational::parse(doc.at("target").get<std::string>());
    }
    task.default_limits = !doc.contains("m_limit") || !doc.contains("n_limit");
    task.m_limit = json_u64(doc, "m_limit", kDefaultSearchLimit);
    task.n_limit = json_u64(doc, "n_limit", kDefaultSearchLimit);
    task.threads = static_cast<unsigned>(json_u64(doc, "threads", 1));
    task.block = json_u64(doc, "block", task.block);

    std::optional<SearchCheckpoint> resume;
    if (checkpoint_text) resume = checkpoint_from_json(Json::parse(checkpoint_text));
    std::function<void(const SearchCheckpoint&)> cb;
    if (on_checkpoint) {
      cb = [&](const SearchCheckpoint& c) { on_checkpoint(dump(checkpoint_json(c)).c_str(), user); };
    }
    const SearchReport report = search(task, resume, cb);
    for (const auto& h : report.hits) res.text += dump(hit_record(h)) + "\n";
    res.text += dump(report_record(report)) + "\n";
    res.flag = !report.hits.empty();
  });
}

}  // extern "C"
