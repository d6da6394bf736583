#pragma once

// Bounded searches for q = phi(k(m^2 - t)) / phi(l n^2) and for
// 2^w = phi(m^2 + 1) / phi(n^2).
//
// phi(l n^2) is tabulated once for n <= n_limit and indexed by value; m is
// then streamed in blocks and each phi(k(m^2 - t)) * v / u is looked up.
// A result only ever describes the rectangle that was covered; an empty hit
// list is inconclusive.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"

namespace totrep {

struct SearchForm {
  Natural k{1};
  Natural l{1};
  Natural t{1};  // signed
};

inline constexpr std::uint64_t kDefaultSearchLimit = 10'000;

struct SearchTask {
  SearchForm form;
  Rational target;
  // When set, the task is 2^w = phi(m^2 + 1) / phi(n^2) and form/target
  // are derived from it.
  std::optional<Exponent> pow2_w;
  std::uint64_t m_limit = kDefaultSearchLimit;
  std::uint64_t n_limit = kDefaultSearchLimit;
  // Set by callers that fell back to kDefaultSearchLimit for either limit.
  bool default_limits = false;
  unsigned threads = 1;
  // m values per block; checkpoints are taken at block boundaries.
  std::uint64_t block = 2'000;
  Budgets budgets;
};

enum class SkipReason { none, degenerate, factor_bound };

struct TableEntry {
  std::uint64_t x = 0;
  std::optional<Factorization> phi;
  SkipReason skip = SkipReason::none;
};

// phi(k(m^2 - t)) for 1 <= m <= m_limit. Entries with k(m^2 - t) < 1 are
// marked degenerate, factoring failures factor_bound.
std::vector<TableEntry> tabulate(const SearchForm& form, std::uint64_t m_limit, const Budgets& budgets = {});

struct SearchHit {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  bool verified = false;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

struct SkipCounts {
  std::uint64_t m_degenerate = 0;
  std::uint64_t m_factor = 0;
  std::uint64_t n_factor = 0;

  SkipCounts& operator+=(const SkipCounts& o) {
    m_degenerate += o.m_degenerate;
    m_factor += o.m_factor;
    n_factor += o.n_factor;
    return *this;
  }
  friend bool operator==(const SkipCounts&, const SkipCounts&) = default;
};

// Progress of a search up to and including last_m.
struct SearchCheckpoint {
  SearchForm form;
  Rational target;
  std::uint64_t n_limit = 0;
  std::uint64_t last_m = 0;
  std::vector<SearchHit> hits;
  SkipCounts skips;
};

struct SearchReport {
  SearchForm form;
  Rational target;
  std::optional<Exponent> pow2_w;
  std::uint64_t m_limit = 0;
  std::uint64_t n_limit = 0;
  std::vector<SearchHit> hits;  // ascending by (m, n)
  SkipCounts skips;
  // t is a perfect square >= 0; the open problem only concerns non-square t.
  bool out_of_question_scope = false;
  bool default_limits = false;
  std::optional<std::uint64_t> resumed_after;
};

// Normalizes a pow2 task into its form/target and validates limits.
SearchTask normalize(SearchTask task);

// InvalidArgument when the checkpoint belongs to a different task or lies
// beyond m_limit. on_checkpoint runs after every completed block.
SearchReport search(const SearchTask& task, const std::optional<SearchCheckpoint>& resume = std::nullopt,
                    const std::function<void(const SearchCheckpoint&)>& on_checkpoint = {});

bool out_of_question_scope(const Natural& t);

}  // namespace totrep
