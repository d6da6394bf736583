// Command-line front end over the C API. --json prints the library's
// canonical document unchanged; otherwise a short human-readable rendering
// of the same document is printed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "totrep/totrep.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kHonestFailure = 2, kNotVerified = 3 };

struct ResultDeleter {
  void operator()(totrep_result* r) const { totrep_result_free(r); }
};
using Result = std::unique_ptr<totrep_result, ResultDeleter>;

struct ContextDeleter {
  void operator()(totrep_context* c) const { totrep_context_free(c); }
};

int exit_for(totrep_status s) {
  switch (s) {
    case TOTREP_OK: return kOk;
    case TOTREP_SEARCH_EXHAUSTED:
    case TOTREP_FACTOR_BOUND_EXCEEDED:
    case TOTREP_CONSTRUCTION_FAILED:
    case TOTREP_PERIOD_BUDGET_EXCEEDED:
    case TOTREP_SIEVE_BUDGET_EXCEEDED:
    case TOTREP_MODULUS_TOO_LARGE:
    case TOTREP_INVARIANT_BROKEN:
    case TOTREP_INTERNAL: return kHonestFailure;
    default: return kUsage;
  }
}

std::string pretty_factored(const Json& pairs) {
  if (pairs.empty()) return "1";
  std::string out;
  for (const auto& p : pairs) {
    if (!out.empty()) out += " * ";
    out += p[0].get<std::string>();
    if (p[1].get<long long>() != 1) out += "^" + std::to_string(p[1].get<long long>());
  }
  return out;
}

std::string pretty_number(const Json& num) {
  std::string out = pretty_factored(num.at("factored"));
  if (num.contains("cofactor")) {
    const std::size_t digits = num.at("cofactor").get<std::string>().size();
    out = (out == "1" ? "" : out + " * ") + "<unfactored " + std::to_string(digits) + "-digit cofactor>";
  }
  const Json& d = num.at("decimal");
  if (d.is_null()) return out + "  (decimal suppressed)";
  const std::string dec = d.get<std::string>();
  if (dec.size() <= 60 && dec != out) out += "  = " + dec;
  return out;
}

void print_witness(const Json& doc) {
  std::cout << "form      " << doc.at("tag").get<std::string>() << "\n"
            << "target    " << doc.at("target").at("num").get<std::string>() << "/"
            << doc.at("target").at("den").get<std::string>() << "\n"
            << "m         " << pretty_number(doc.at("m")) << "\n"
            << "n         " << pretty_number(doc.at("n")) << "\n"
            << "verified  " << (doc.at("verified").get<bool>() ? "yes" : "NO") << "\n";
}

void print_verdict(const Json& v) {
  const auto& q = v.at("quadruple");
  std::cout << "(" << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << "): " << v.at("kind").get<std::string>();
  if (v.contains("reason")) std::cout << " by " << v.at("reason").get<std::string>();
  if (v.contains("open_ref")) std::cout << " (" << v.at("open_ref").get<std::string>() << ")";
  std::cout << ", d = " << v.at("d") << "\n";
  if (v.contains("exemplar")) {
    std::cout << "not representable: " << pretty_factored(v.at("exemplar").at("factored")) << "\n";
  }
  if (v.contains("note")) std::cout << "note: " << v.at("note").get<std::string>() << "\n";
  if (v.contains("refutation")) {
    const auto& r = v.at("refutation");
    std::cout << "scan m, n <= " << r.at("bound") << ": "
              << (r.at("found").get<bool>() ? "representation found" : "no representation") << "\n";
  }
}

std::optional<std::string> read_source(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  ss << in.rdbuf();
  return ss.str();
}

// Replaces path through a temporary so an interrupted write never leaves a
// truncated checkpoint behind.
void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << text << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void on_checkpoint(const char* text, void* user) {
  write_atomically(*static_cast<const std::string*>(user), text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact witnesses for rationals as quotients of totient values"};
  app.require_subcommand(1);
  app.set_version_flag("--version", totrep_version());

  bool json = false;
  std::optional<std::uint64_t> prime_budget, factor_budget, pell_budget, trial_bound, seed, max_strict_prime,
      descent_budget, max_boost;
  app.add_flag("--json", json, "Print the canonical JSON document");
  app.add_option("--prime-budget", prime_budget, "Candidates per prime search (default 1000000)");
  app.add_option("--factor-budget", factor_budget, "Rho iterations per factorization (default 20000000)");
  app.add_option("--pell-budget", pell_budget, "Continued-fraction period cap (default 1000000)");
  app.add_option("--trial-bound", trial_bound, "Trial-division bound (default 1000000)");
  app.add_option("--seed", seed, "Seed for randomized routines");
  app.add_option("--max-strict-prime", max_strict_prime, "Largest prime accepted by strict thm1 (default 13)");
  app.add_option("--descent-budget", descent_budget, "Node budget of the general descent (default 200000)");
  app.add_option("--max-boost", max_boost, "Boosting rounds of the general descent (default 8)");
  app.fallthrough();

  // thm1
  auto* thm1 = app.add_subcommand("thm1", "q = phi(m^2) / phi(n^2)^b");
  std::string q1;
  std::int64_t b1 = 0, t1 = 0;
  bool compact = false;
  thm1->add_option("--q", q1, "Target u/v")->required();
  thm1->add_option("--b", b1, "Odd exponent > 1")->required();
  thm1->add_option("--t-override", t1, "Modulus exponent t");
  thm1->add_flag("--compact", compact, "Search for a smaller seed prime");

  // thm2
  auto* thm2 = app.add_subcommand("thm2", "q = phi(k(m^2 - 1)) / phi(l n^2)");
  std::string q2, k2 = "1", l2 = "1";
  std::optional<std::string> t2;
  thm2->add_option("--q", q2, "Target u/v")->required();
  thm2->add_option("--k", k2, "Coefficient k");
  thm2->add_option("--l", l2, "Coefficient l");
  thm2->add_option("--t-override", t2, "Progression index t (case 1)");

  // general
  auto* general = app.add_subcommand("general", "q = phi(m^r)^a / phi(n^s)^b");
  std::string qg;
  std::vector<std::int64_t> quad_g;
  general->add_option("--q", qg, "Target u/v")->required();
  general->add_option("quadruple", quad_g, "a b r s")->expected(4)->required();

  // classify
  auto* cls = app.add_subcommand("classify", "Decide whether (a, b, r, s) represents every positive rational");
  std::vector<std::int64_t> quad_c;
  std::optional<std::uint64_t> refute_bound;
  cls->add_option("quadruple", quad_c, "a b r s")->expected(4)->required();
  cls->add_option("--refute-bound", refute_bound, "Scan m, n up to this bound for the exemplar");

  // verify
  auto* ver = app.add_subcommand("verify", "Check a witness exactly");
  std::string form = "thm1", vm, vn, vq, vk = "1", vl = "1";
  std::optional<std::string> document;
  std::int64_t va = 1, vb = 1, vr = 2, vs = 2;
  ver->add_option("--form", form, "thm1 | thm2 | general")->check(CLI::IsMember({"thm1", "thm2", "general"}));
  ver->add_option("--document", document, "Witness document to re-verify ('-' for stdin)");
  ver->add_option("--m", vm, "m, decimal or p^e*...");
  ver->add_option("--n", vn, "n, decimal or p^e*...");
  ver->add_option("--q", vq, "Target u/v");
  ver->add_option("--a", va, "Power a (general)");
  ver->add_option("--b", vb, "Power b (thm1, general)");
  ver->add_option("--r", vr, "Exponent r (general)");
  ver->add_option("--s", vs, "Exponent s (general)");
  ver->add_option("--k", vk, "Coefficient k (thm2)");
  ver->add_option("--l", vl, "Coefficient l (thm2)");

  // pell
  auto* pell = app.add_subcommand("pell", "Fundamental solution of x^2 - D y^2 = 1");
  std::string pd;
  pell->add_option("D", pd, "Non-square D >= 2")->required();

  // factor
  auto* fac = app.add_subcommand("factor", "Prime factorization");
  std::string fn;
  fac->add_option("N", fn, "Positive integer")->required();

  // search
  auto* srch = app.add_subcommand("search", "Bounded search for q = phi(k(m^2 - t)) / phi(l n^2)");
  std::string sk = "1", sl = "1", st = "1";
  std::optional<std::string> starget, ckpt_in, ckpt_out, output;
  std::optional<std::uint64_t> pow2, m_limit, n_limit;
  unsigned threads = 1;
  std::uint64_t block = 2000;
  bool expect_hit = false;
  srch->add_option("--k", sk, "Coefficient k");
  srch->add_option("--l", sl, "Coefficient l");
  srch->add_option("--t", st, "Shift t (signed)");
  srch->add_option("--target", starget, "Target u/v");
  srch->add_option("--pow2", pow2, "Search 2^w = phi(m^2 + 1) / phi(n^2)");
  srch->add_option("--m-limit", m_limit, "Largest m (default 10000)");
  srch->add_option("--n-limit", n_limit, "Largest n (default 10000)");
  srch->add_option("--threads", threads, "Worker threads");
  srch->add_option("--block", block, "m values between checkpoints");
  srch->add_option("--checkpoint-in", ckpt_in, "Resume from this checkpoint file");
  srch->add_option("--checkpoint-out", ckpt_out, "Write checkpoints to this file");
  srch->add_option("--output", output, "Write JSONL here instead of stdout");
  srch->add_flag("--expect-hit", expect_hit, "Exit 2 when no hit is found");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  std::unique_ptr<totrep_context, ContextDeleter> ctx(totrep_context_new());
  auto set = [&](const char* key, const std::optional<std::uint64_t>& v) {
    if (v && totrep_context_set(ctx.get(), key, std::to_string(*v).c_str()) != TOTREP_OK) {
      throw CLI::ValidationError(key, "rejected value");
    }
  };
  try {
    set("prime_candidates", prime_budget);
    set("rho_iterations", factor_budget);
    set("pell_period", pell_budget);
    set("trial_bound", trial_bound);
    set("seed", seed);
    set("max_strict_prime", max_strict_prime);
    set("descent_nodes", descent_budget);
    set("max_boost", max_boost);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  totrep_result* raw = nullptr;
  auto fail = [&](const Result& r) {
    std::cerr << "error: " << totrep_result_message(r.get()) << "\n";
    return exit_for(totrep_result_status(r.get()));
  };
  auto emit = [&](const std::string& text, auto&& human) {
    if (json) {
      std::cout << text << "\n";
    } else {
      human(Json::parse(text));
    }
  };

  if (thm1->parsed() || thm2->parsed() || general->parsed()) {
    if (thm1->parsed()) {
      totrep_thm1(ctx.get(), q1.c_str(), b1, t1, compact ? 1 : 0, &raw);
    } else if (thm2->parsed()) {
      totrep_thm2(ctx.get(), q2.c_str(), k2.c_str(), l2.c_str(), t2 ? t2->c_str() : nullptr, &raw);
    } else {
      totrep_general(ctx.get(), qg.c_str(), quad_g[0], quad_g[1], quad_g[2], quad_g[3], &raw);
    }
    Result r(raw);
    if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
    emit(totrep_result_text(r.get()), print_witness);
    return totrep_result_flag(r.get()) ? kOk : kHonestFailure;
  }

  if (cls->parsed()) {
    totrep_classify(ctx.get(), quad_c[0], quad_c[1], quad_c[2], quad_c[3], &raw);
    Result r(raw);
    if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
    Json verdict = Json::parse(totrep_result_text(r.get()));
    if (refute_bound && verdict.contains("exemplar")) {
      // The exemplar goes back in as a rational string.
      std::string num = "1", den = "1";
      {
        totrep_result* fr = nullptr;
        std::string expr_num, expr_den;
        for (const auto& p : verdict.at("exemplar").at("factored")) {
          const long long e = p[1].get<long long>();
          std::string& side = e > 0 ? expr_num : expr_den;
          if (!side.empty()) side += "*";
          side += p[0].get<std::string>() + "^" + std::to_string(e > 0 ? e : -e);
        }
        // Expand through the factor entry point, which accepts p^e products.
        for (auto* pair : {&expr_num, &expr_den}) {
          if (pair->empty()) continue;
          totrep_factor(ctx.get(), pair->c_str(), &fr);
          Result f(fr);
          if (totrep_result_status(f.get()) != TOTREP_OK) return fail(f);
          (pair == &expr_num ? num : den) = Json::parse(totrep_result_text(f.get())).at("n").get<std::string>();
        }
      }
      const std::string target = num + "/" + den;
      totrep_refute(ctx.get(), quad_c[0], quad_c[1], quad_c[2], quad_c[3], target.c_str(), *refute_bound, &raw);
      Result rr(raw);
      if (totrep_result_status(rr.get()) != TOTREP_OK) return fail(rr);
      verdict["refutation"] = Json::parse(totrep_result_text(rr.get()));
    }
    emit(verdict.dump(), print_verdict);
    return kOk;
  }

  if (ver->parsed()) {
    if (document) {
      const auto text = read_source(*document);
      if (!text) {
        std::cerr << "error: cannot read " << *document << "\n";
        return kUsage;
      }
      totrep_verify_document(ctx.get(), text->c_str(), &raw);
    } else {
      if (vm.empty() || vn.empty() || vq.empty()) {
        std::cerr << "error: verify needs --document or all of --m, --n, --q\n";
        return kUsage;
      }
      if (form == "thm1") {
        totrep_verify_rep(ctx.get(), vm.c_str(), vn.c_str(), 1, vb, 2, 2, vq.c_str(), &raw);
      } else if (form == "general") {
        totrep_verify_rep(ctx.get(), vm.c_str(), vn.c_str(), va, vb, vr, vs, vq.c_str(), &raw);
      } else {
        totrep_verify_thm2(ctx.get(), vm.c_str(), vn.c_str(), vk.c_str(), vl.c_str(), vq.c_str(), &raw);
      }
    }
    Result r(raw);
    if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
    const bool ok = totrep_result_flag(r.get()) != 0;
    emit(totrep_result_text(r.get()), [&](const Json&) { std::cout << (ok ? "verified" : "NOT verified") << "\n"; });
    return ok ? kOk : kNotVerified;
  }

  if (pell->parsed()) {
    totrep_pell(ctx.get(), pd.c_str(), &raw);
    Result r(raw);
    if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
    emit(totrep_result_text(r.get()), [](const Json& j) {
      std::cout << "x^2 - " << j.at("D").get<std::string>() << " y^2 = 1\n"
                << "x = " << j.at("x").get<std::string>() << "\n"
                << "y = " << j.at("y").get<std::string>() << "\n"
                << "period " << j.at("period") << (j.at("squared_up").get<bool>() ? " (odd, squared up)" : "")
                << "\n";
    });
    return kOk;
  }

  if (fac->parsed()) {
    totrep_factor(ctx.get(), fn.c_str(), &raw);
    Result r(raw);
    if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
    emit(totrep_result_text(r.get()), [](const Json& j) {
      std::cout << j.at("n").get<std::string>() << " = " << pretty_factored(j.at("factored")) << "\n";
    });
    return kOk;
  }

  // search
  Json task;
  if (pow2) {
    task["pow2_w"] = *pow2;
  } else {
    if (!starget) {
      std::cerr << "error: search needs --target or --pow2\n";
      return kUsage;
    }
    task["k"] = sk;
    task["l"] = sl;
    task["t"] = st;
    task["target"] = *starget;
  }
  if (m_limit) task["m_limit"] = *m_limit;
  if (n_limit) task["n_limit"] = *n_limit;
  task["threads"] = threads;
  task["block"] = block;

  std::optional<std::string> resume;
  if (ckpt_in) {
    resume = read_source(*ckpt_in);
    if (!resume) {
      std::cerr << "error: cannot read checkpoint " << *ckpt_in << "\n";
      return kUsage;
    }
  }
  totrep_search(ctx.get(), task.dump().c_str(), resume ? resume->c_str() : nullptr, ckpt_out ? on_checkpoint : nullptr,
                ckpt_out ? &*ckpt_out : nullptr, &raw);
  Result r(raw);
  if (totrep_result_status(r.get()) != TOTREP_OK) return fail(r);
  const std::string text = totrep_result_text(r.get());
  std::ofstream file;
  if (output) file.open(*output, std::ios::trunc);
  std::ostream& out = output ? static_cast<std::ostream&>(file) : std::cout;
  if (json || output) {
    out << text;
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const Json rec = Json::parse(line);
      if (rec.at("kind") == "hit") {
        out << "hit m = " << rec.at("m").get<std::string>() << ", n = " << rec.at("n").get<std::string>()
            << (rec.at("verified").get<bool>() ? " (verified)" : " (NOT verified)") << "\n";
        continue;
      }
      const auto& rect = rec.at("rectangle");
      out << "covered m in [1, " << rect.at("m")[1] << "], n in [1, " << rect.at("n")[1] << "]: " << rec.at("hits")
          << " hit(s)" << (rec.at("inconclusive").get<bool>() ? ", inconclusive" : "") << "\n"
          << "skipped " << rec.at("skipped").dump() << "\n";
      if (rec.at("out_of_question_scope").get<bool>()) out << "note: t is a perfect square\n";
      if (rec.at("default_limits_arbitrary").get<bool>()) out << "note: default limits are arbitrary\n";
    }
  }
  if (expect_hit && !totrep_result_flag(r.get())) return kHonestFailure;
  return kOk;
}
