#include "totrep/search.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "totrep/error.hpp"
#include "totrep/thm2.hpp"

namespace totrep {

namespace {

// phi(k(m^2 - t)) or nullopt when k(m^2 - t) < 1.
std::optional<Factorization> form_totient(const SearchForm& form, std::uint64_t m, const Budgets& budgets) {
  const Natural mm = from_u64(m);
  const Natural inner = mm * mm - form.t;
  if (inner < 1) return std::nullopt;
  Factorization f = factorize(form.k, budgets);
  if (form.t == 1) {
    f *= factorize(mm - 1, budgets) * factorize(mm + 1, budgets);
  } else if (form.t == 0) {
    f *= factorize(mm, budgets).pow(2);
  } else {
    f *= factorize(inner, budgets);
  }
  return totient(f, budgets);
}

TableEntry entry_for(std::uint64_t x, const std::function<std::optional<Factorization>()>& compute) {
  TableEntry e;
  e.x = x;
  try {
    e.phi = compute();
    if (!e.phi) e.skip = SkipReason::degenerate;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::FactorBoundExceeded) throw;
    e.skip = SkipReason::factor_bound;
  }
  return e;
}

using Index = std::map<Natural, std::vector<std::uint64_t>>;

struct Partial {
  std::vector<SearchHit> hits;
  SkipCounts skips;
};

Partial probe_range(const SearchTask& task, const Index& index, const ExponentVector& target_vec,
                    std::uint64_t lo, std::uint64_t hi) {
  Partial out;
  const Natural& u = task.target.num;
  const Natural& v = task.target.den;
  for (std::uint64_t m = lo; m <= hi; ++m) {
    const TableEntry e = entry_for(m, [&] { return form_totient(task.form, m, task.budgets); });
    if (e.skip == SkipReason::degenerate) {
      ++out.skips.m_degenerate;
      continue;
    }
    if (e.skip == SkipReason::factor_bound) {
      ++out.skips.m_factor;
      continue;
    }
    const Natural scaled = e.phi->value() * v;
    if (!mpz_divisible_p(scaled.get_mpz_t(), u.get_mpz_t())) continue;
    Natural wanted;
    mpz_divexact(wanted.get_mpz_t(), scaled.get_mpz_t(), u.get_mpz_t());
    const auto it = index.find(wanted);
    if (it == index.end()) continue;
    for (std::uint64_t n : it->second) {
      SearchHit hit{m, n, false};
      hit.verified = quadratic_form_value(from_u64(m), from_u64(n), task.form.k, task.form.l, task.form.t,
                                          task.budgets) == target_vec;
      out.hits.push_back(hit);
    }
  }
  return out;
}

bool same_task(const SearchCheckpoint& c, const SearchTask& t) {
  return c.form.k == t.form.k && c.form.l == t.form.l && c.form.t == t.form.t && c.target == t.target &&
         c.n_limit == t.n_limit;
}

}  // namespace

bool out_of_question_scope(const Natural& t) { return t >= 0 && is_perfect_square(t); }

std::vector<TableEntry> tabulate(const SearchForm& form, std::uint64_t m_limit, const Budgets& budgets) {
  require(form.k >= 1 && form.l >= 1, ErrorCode::InvalidArgument, "k and l must be >= 1");
  std::vector<TableEntry> out;
  out.reserve(m_limit);
  for (std::uint64_t m = 1; m <= m_limit; ++m) {
    out.push_back(entry_for(m, [&] { return form_totient(form, m, budgets); }));
  }
  return out;
}

SearchTask normalize(SearchTask task) {
  if (task.pow2_w) {
    require(*task.pow2_w >= 0, ErrorCode::InvalidArgument, "w must be >= 0");
    task.form = SearchForm{1, 1, -1};
    Natural two_w;
    mpz_ui_pow_ui(two_w.get_mpz_t(), 2, static_cast<unsigned long>(*task.pow2_w));
    task.target = Rational::make(two_w, 1);
  } else {
    task.target = Rational::make(task.target.num, task.target.den);
  }
  require(task.form.k >= 1 && task.form.l >= 1, ErrorCode::InvalidArgument, "k and l must be >= 1");
  require(task.m_limit >= 1 && task.n_limit >= 1, ErrorCode::InvalidArgument, "search limits must be >= 1");
  require(task.block >= 1, ErrorCode::InvalidArgument, "block size must be >= 1");
  task.threads = std::max(1u, task.threads);
  return task;
}

SearchReport search(const SearchTask& raw, const std::optional<SearchCheckpoint>& resume,
                    const std::function<void(const SearchCheckpoint&)>& on_checkpoint) {
  const SearchTask task = normalize(raw);
  const ExponentVector target_vec = factorize(task.target, task.budgets);

  SearchCheckpoint state;
  state.form = task.form;
  state.target = task.target;
  state.n_limit = task.n_limit;
  SearchReport report;
  if (resume) {
    require(same_task(*resume, task), ErrorCode::InvalidArgument,
            "checkpoint was written for a different form, target or n limit");
    require(resume->last_m <= task.m_limit, ErrorCode::InvalidArgument,
            "checkpoint covers m up to " + std::to_string(resume->last_m) + ", beyond m limit " +
                std::to_string(task.m_limit));
    state.last_m = resume->last_m;
    state.hits = resume->hits;
    state.skips = resume->skips;
    report.resumed_after = resume->last_m;
  }

  // The n side: phi(l n^2), keyed by exact value, n ascending per key.
  Index index;
  SkipCounts n_skips;
  const SearchForm n_form{task.form.l, 1, 0};
  for (std::uint64_t n = 1; n <= task.n_limit; ++n) {
    const TableEntry e = entry_for(n, [&] { return form_totient(n_form, n, task.budgets); });
    if (e.skip == SkipReason::factor_bound) {
      ++n_skips.n_factor;
      continue;
    }
    index[e.phi->value()].push_back(n);
  }
  if (!resume) state.skips.n_factor = n_skips.n_factor;

  for (std::uint64_t lo = state.last_m + 1; lo <= task.m_limit; lo += task.block) {
    const std::uint64_t hi = std::min(task.m_limit, lo + task.block - 1);
    const std::uint64_t span = hi - lo + 1;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(task.threads, span));
    std::vector<Partial> parts(workers);
    if (workers == 1) {
      parts[0] = probe_range(task, index, target_vec, lo, hi);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      const std::uint64_t chunk = (span + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t a = lo + w * chunk;
        const std::uint64_t b = std::min(hi, a + chunk - 1);
        if (a > b) continue;
        pool.emplace_back([&, w, a, b] {
          try {
            parts[w] = probe_range(task, index, target_vec, a, b);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
    }
    // Chunks are contiguous and ascending, so concatenation keeps (m, n) order.
    for (auto& p : parts) {
      state.hits.insert(state.hits.end(), p.hits.begin(), p.hits.end());
      state.skips.m_degenerate += p.skips.m_degenerate;
      state.skips.m_factor += p.skips.m_factor;
    }
    state.last_m = hi;
    if (on_checkpoint) on_checkpoint(state);
  }

  report.form = task.form;
  report.target = task.target;
  report.pow2_w = task.pow2_w;
  report.m_limit = task.m_limit;
  report.n_limit = task.n_limit;
  report.hits = std::move(state.hits);
  report.skips = state.skips;
  report.out_of_question_scope = out_of_question_scope(task.form.t);
  report.default_limits = task.default_limits;
  return report;
}

}  // namespace totrep
