#include "totrep/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "totrep/error.hpp"
#include "totrep/primes.hpp"

namespace totrep {

namespace {

void canonicalize(std::vector<PrimePower>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  std::vector<PrimePower> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().prime == e.prime) {
      out.back().exponent += e.exponent;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const PrimePower& e) { return e.exponent == 0; });
  entries = std::move(out);
}

// Merge two ascending lists, adding `scale` times the exponents of `b`.
std::vector<PrimePower> merge(const std::vector<PrimePower>& a, const std::vector<PrimePower>& b, Exponent scale) {
  std::vector<PrimePower> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].prime < b[j].prime)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].prime < a[i].prime) {
      out.push_back({b[j].prime, scale * b[j].exponent});
      ++j;
    } else {
      const Exponent e = a[i].exponent + scale * b[j].exponent;
      if (e != 0) out.push_back({a[i].prime, e});
      ++i;
      ++j;
    }
  }
  return out;
}

Exponent lookup(const std::vector<PrimePower>& entries, const Natural& p) {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const PrimePower& e, const Natural& key) { return e.prime < key; });
  return (it != entries.end() && it->prime == p) ? it->exponent : 0;
}

// ---- factoring -----------------------------------------------------------

using u128 = unsigned __int128;

struct RhoBudget {
  std::uint64_t remaining;
  void spend(std::uint64_t n) {
    if (n > remaining) {
      fail(ErrorCode::FactorBoundExceeded, "Pollard rho iteration cap (factor-budget) exhausted");
    }
    remaining -= n;
  }
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Brent's cycle-finding variant with batched gcds.
std::uint64_t rho_u64(std::uint64_t n, std::uint64_t seed, RhoBudget& budget) {
  if (n % 2 == 0) return 2;
  std::uint64_t c = seed % (n - 1) + 1;
  for (;;) {
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    const std::uint64_t batch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        const std::uint64_t lim = std::min(batch, r - k);
        budget.spend(lim);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (mul_mod(y, y, n) + c) % n;
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        budget.spend(1);
        ys = (mul_mod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
    c = c % (n - 1) + 1;
  }
}

Natural rho_mpz(const Natural& n, std::uint64_t seed, RhoBudget& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Natural c = from_u64(seed) % (n - 1) + 1;
  for (;;) {
    Natural y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    const std::uint64_t batch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        const std::uint64_t lim = std::min(batch, r - k);
        budget.spend(lim);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        budget.spend(1);
        ys = (ys * ys + c) % n;
        diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    c = c % (n - 1) + 1;
  }
}

void split_u64(std::uint64_t n, const Budgets& budgets, RhoBudget& rho, std::vector<PrimePower>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back({from_u64(n), 1});
    return;
  }
  const std::uint64_t d = rho_u64(n, budgets.seed, rho);
  split_u64(d, budgets, rho, out);
  split_u64(n / d, budgets, rho, out);
}

void split_mpz(const Natural& n, const Budgets& budgets, RhoBudget& rho, std::vector<PrimePower>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    split_u64(to_u64(n), budgets, rho, out);
    return;
  }
  if (is_prime(n, budgets)) {
    out.push_back({n, 1});
    return;
  }
  const Natural d = rho_mpz(n, budgets.seed, rho);
  split_mpz(d, budgets, rho, out);
  split_mpz(n / d, budgets, rho, out);
}

std::vector<PrimePower> factor_u64(std::uint64_t n, const Budgets& budgets, RhoBudget& rho) {
  std::vector<PrimePower> out;
  const auto& primes = detail::trial_primes(budgets.trial_bound);
  bool reached_sqrt = false;
  for (std::uint32_t p : primes) {
    if (static_cast<u128>(p) * p > n) {
      reached_sqrt = true;
      break;
    }
    if (n % p) continue;
    Exponent e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({from_u64(p), e});
  }
  if (n > 1) {
    if (reached_sqrt) {
      out.push_back({from_u64(n), 1});
    } else {
      split_u64(n, budgets, rho, out);
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace

// ---- Factorization -------------------------------------------------------

Factorization::Factorization(std::vector<PrimePower> entries) {
  for (const auto& e : entries) {
    require(e.prime >= 2, ErrorCode::InvalidArgument, "factorization key below 2: " + to_decimal(e.prime));
    require(e.exponent >= 1, ErrorCode::InvalidArgument, "factorization exponents must be >= 1");
  }
  canonicalize(entries);
  entries_ = std::move(entries);
}

Factorization Factorization::prime_power(Natural p, Exponent e) {
  if (e == 0) return {};
  return Factorization({{std::move(p), e}});
}

Exponent Factorization::exponent_of(const Natural& p) const { return lookup(entries_, p); }

Natural Factorization::max_prime() const { return entries_.empty() ? Natural(1) : entries_.back().prime; }

Natural Factorization::value() const {
  Natural out = 1, pw;
  for (const auto& e : entries_) {
    mpz_pow_ui(pw.get_mpz_t(), e.prime.get_mpz_t(), static_cast<unsigned long>(e.exponent));
    out *= pw;
  }
  return out;
}

Factorization& Factorization::operator*=(const Factorization& other) {
  entries_ = merge(entries_, other.entries_, 1);
  return *this;
}

Factorization Factorization::pow(Exponent e) const {
  require(e >= 0, ErrorCode::InvalidArgument, "negative power of a factorization");
  Factorization out;
  if (e == 0) return out;
  out.entries_ = entries_;
  for (auto& x : out.entries_) x.exponent *= e;
  return out;
}

ExponentVector Factorization::as_vector() const { return ExponentVector(entries_); }

// ---- ExponentVector ------------------------------------------------------

ExponentVector::ExponentVector(std::vector<PrimePower> entries) {
  for (const auto& e : entries) {
    require(e.prime >= 2, ErrorCode::InvalidArgument, "exponent-vector key below 2: " + to_decimal(e.prime));
  }
  canonicalize(entries);
  entries_ = std::move(entries);
}

ExponentVector ExponentVector::prime_power(Natural p, Exponent e) {
  if (e == 0) return {};
  return ExponentVector({{std::move(p), e}});
}

bool ExponentVector::is_integer() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const PrimePower& e) { return e.exponent > 0; });
}

Exponent ExponentVector::exponent_of(const Natural& p) const { return lookup(entries_, p); }

Natural ExponentVector::max_prime() const { return entries_.empty() ? Natural(1) : entries_.back().prime; }

Factorization ExponentVector::numerator() const {
  std::vector<PrimePower> out;
  for (const auto& e : entries_)
    if (e.exponent > 0) out.push_back(e);
  return Factorization(std::move(out));
}

Factorization ExponentVector::denominator() const {
  std::vector<PrimePower> out;
  for (const auto& e : entries_)
    if (e.exponent < 0) out.push_back({e.prime, -e.exponent});
  return Factorization(std::move(out));
}

ExponentVector& ExponentVector::operator*=(const ExponentVector& other) {
  entries_ = merge(entries_, other.entries_, 1);
  return *this;
}

ExponentVector& ExponentVector::operator/=(const ExponentVector& other) {
  entries_ = merge(entries_, other.entries_, -1);
  return *this;
}

ExponentVector ExponentVector::pow(Exponent e) const {
  ExponentVector out;
  if (e == 0) return out;
  out.entries_ = entries_;
  for (auto& x : out.entries_) x.exponent *= e;
  return out;
}

bool operator<(const ExponentVector& a, const ExponentVector& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
                                      [](const PrimePower& x, const PrimePower& y) {
                                        if (x.prime != y.prime) return x.prime < y.prime;
                                        return x.exponent < y.exponent;
                                      });
}

// ---- Rational and parsing ------------------------------------------------

Rational Rational::make(Natural num, Natural den) {
  require(num >= 1 && den >= 1, ErrorCode::InvalidArgument, "rational parts must be positive");
  Natural g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rational{num / g, den / g};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Natural parse_decimal(std::string_view s) {
  s = trim(s);
  require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }),
          ErrorCode::InvalidArgument, "not a decimal natural: '" + std::string(s) + "'");
  return Natural(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(parse_decimal(text), 1);
  return make(parse_decimal(text.substr(0, slash)), parse_decimal(text.substr(slash + 1)));
}

std::string Rational::str() const { return den == 1 ? to_decimal(num) : to_decimal(num) + "/" + to_decimal(den); }

Natural parse_natural(std::string_view text) {
  text = trim(text);
  require(!text.empty(), ErrorCode::InvalidArgument, "empty integer");
  Natural out = 1;
  while (true) {
    const auto star = text.find('*');
    const std::string_view term = trim(text.substr(0, star));
    const auto caret = term.find('^');
    Natural base = parse_decimal(term.substr(0, caret));
    if (caret != std::string_view::npos) {
      const Natural e = parse_decimal(term.substr(caret + 1));
      require(e.fits_ulong_p(), ErrorCode::InvalidArgument, "exponent too large");
      mpz_pow_ui(base.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    }
    out *= base;
    if (star == std::string_view::npos) break;
    text = text.substr(star + 1);
  }
  return out;
}

Factorization parse_factored(std::string_view text, const Budgets& budgets) {
  text = trim(text);
  require(!text.empty(), ErrorCode::InvalidArgument, "empty integer");
  Factorization out;
  while (true) {
    const auto star = text.find('*');
    const std::string_view term = trim(text.substr(0, star));
    const auto caret = term.find('^');
    const Natural base = parse_decimal(term.substr(0, caret));
    require(base >= 1, ErrorCode::InvalidArgument, "factors must be >= 1");
    Exponent e = 1;
    if (caret != std::string_view::npos) {
      const Natural ez = parse_decimal(term.substr(caret + 1));
      require(ez.fits_slong_p(), ErrorCode::InvalidArgument, "exponent too large");
      e = ez.get_si();
    }
    if (e > 0) out *= factorize(base, budgets).pow(e);
    if (star == std::string_view::npos) break;
    text = text.substr(star + 1);
  }
  return out;
}

std::string to_decimal(const Natural& n) { return n.get_str(10); }

bool fits_u64(const Natural& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Natural& n) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, n.get_mpz_t());
  return out;
}

Natural from_u64(std::uint64_t v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

bool is_perfect_square(const Natural& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// ---- number-theoretic functions ------------------------------------------

Factorization factorize(const Natural& n, const Budgets& budgets) {
  require(n >= 1, ErrorCode::InvalidArgument, "factorize needs n >= 1, got " + to_decimal(n));
  RhoBudget rho{budgets.rho_iterations};
  if (fits_u64(n)) return Factorization(factor_u64(to_u64(n), budgets, rho));

  std::vector<PrimePower> out;
  Natural rest = n;
  for (std::uint32_t p : detail::trial_primes(budgets.trial_bound)) {
    if (Natural(p) * p > rest) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    Exponent e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    out.push_back({from_u64(p), e});
    if (fits_u64(rest)) break;
  }
  if (fits_u64(rest)) {
    auto tail = factor_u64(to_u64(rest), budgets, rho);
    out.insert(out.end(), tail.begin(), tail.end());
  } else {
    split_mpz(rest, budgets, rho, out);
  }
  return Factorization(std::move(out));
}

ExponentVector factorize(const Rational& q, const Budgets& budgets) {
  return factorize(q.num, budgets).as_vector() / factorize(q.den, budgets).as_vector();
}

Rational to_rational(const ExponentVector& v) { return Rational{v.numerator().value(), v.denominator().value()}; }

Factorization totient(const Factorization& f, const Budgets& budgets) {
  std::vector<PrimePower> out;
  for (const auto& e : f.entries()) {
    if (e.exponent > 1) out.push_back({e.prime, e.exponent - 1});
    const auto pm1 = factorize(e.prime - 1, budgets);
    out.insert(out.end(), pm1.entries().begin(), pm1.entries().end());
  }
  return Factorization(std::move(out));
}

Factorization radical(const Factorization& f) {
  std::vector<PrimePower> out;
  for (const auto& e : f.entries()) out.push_back({e.prime, 1});
  return Factorization(std::move(out));
}

Factorization squarefree_kernel(const Factorization& f) {
  std::vector<PrimePower> out;
  for (const auto& e : f.entries())
    if (e.exponent % 2 != 0) out.push_back({e.prime, 1});
  return Factorization(std::move(out));
}

Factorization exact_sqrt(const Factorization& f) {
  std::vector<PrimePower> out;
  for (const auto& e : f.entries()) {
    if (e.exponent % 2 != 0) {
      fail(ErrorCode::NotASquare, "exponent " + std::to_string(e.exponent) + " of prime " + to_decimal(e.prime) +
                                      " is odd");
    }
    out.push_back({e.prime, e.exponent / 2});
  }
  return Factorization(std::move(out));
}

Exponent valuation(const ExponentVector& x, const Natural& p) {
  require(is_prime(p), ErrorCode::NotPrime, to_decimal(p) + " is not prime");
  return x.exponent_of(p);
}

Exponent valuation(const Factorization& x, const Natural& p) {
  require(is_prime(p), ErrorCode::NotPrime, to_decimal(p) + " is not prime");
  return x.exponent_of(p);
}

}  // namespace totrep
