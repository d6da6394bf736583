#include "totrep/represent.hpp"

#include "totrep/error.hpp"

namespace totrep {

std::string Form::tag() const {
  switch (kind) {
    case Kind::thm1: return "thm1(" + std::to_string(b) + ")";
    case Kind::thm2: return "thm2(" + to_decimal(k) + "," + to_decimal(l) + ")";
    case Kind::general:
      return "general(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(r) + "," +
             std::to_string(s) + ")";
  }
  return "unknown";
}

ExponentVector representation_value(const Factorization& m, const Factorization& n, Exponent a, Exponent b,
                                    Exponent r, Exponent s, const Budgets& budgets) {
  require(a >= 1 && b >= 1 && r >= 1 && s >= 1, ErrorCode::InvalidArgument, "a, b, r, s must be positive");
  const auto top = totient(m.pow(r), budgets).as_vector().pow(a);
  const auto bottom = totient(n.pow(s), budgets).as_vector().pow(b);
  return top / bottom;
}

bool verify_rep(const Factorization& m, const Factorization& n, Exponent a, Exponent b, Exponent r, Exponent s,
                const ExponentVector& q, const Budgets& budgets) {
  return representation_value(m, n, a, b, r, s, budgets) == q;
}

}  // namespace totrep
