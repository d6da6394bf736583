#pragma once

// Canonical JSON for every document the library emits. Keys are written in a
// fixed order and factored integers as [["p", e], ...] ascending by prime, so
// identical inputs give identical bytes.

#include "json.hpp"

#include <string>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"
#include "totrep/classifier.hpp"
#include "totrep/general.hpp"
#include "totrep/pell.hpp"
#include "totrep/represent.hpp"
#include "totrep/search.hpp"
#include "totrep/thm1.hpp"
#include "totrep/thm2.hpp"

namespace totrep {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kMaxDecimalDigits = 10'000;

Json to_json(const Factorization& f);
Json to_json(const ExponentVector& v);
Json to_json(const Budgets& b);
// Decimal string, or null past kMaxDecimalDigits.
Json decimal_or_null(const Natural& n);

Factorization factorization_from_json(const Json& j);
ExponentVector exponents_from_json(const Json& j);

Json trace_json(const Thm1Trace& t);
Json trace_json(const Thm2Trace& t);
Json trace_json(const GeneralTrace& t);

Json witness_document(const Witness& w, const Json& trace, const Budgets& budgets);

Json verdict_json(const Verdict& v, const Quadruple& t);
Json pell_json(const PellSolution& s);
Json factor_json(const Natural& n, const Factorization& f);

Json hit_record(const SearchHit& h);
Json report_record(const SearchReport& r);
Json checkpoint_json(const SearchCheckpoint& c);
SearchCheckpoint checkpoint_from_json(const Json& j);

// Recomputes the identity a witness document claims. Throws InvalidArgument
// on malformed documents, including primes that are not prime and decimal
// fields that disagree with the factored ones.
bool verify_document(const Json& doc, const Budgets& budgets = {});

}  // namespace totrep
