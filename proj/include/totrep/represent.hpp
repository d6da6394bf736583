#pragma once

#include <string>

#include "totrep/arith.hpp"
#include "totrep/budgets.hpp"

namespace totrep {

// Which identity a witness certifies.
struct Form {
  enum class Kind { thm1, thm2, general };

  Kind kind = Kind::general;
  // Powers of the general form (phi(m^r))^a / (phi(n^s))^b; thm1 uses
  // a = 1, r = s = 2.
  Exponent a = 1, b = 1, r = 2, s = 2;
  // Coefficients of phi(k(m^2 - 1)) / phi(l n^2).
  Natural k{1}, l{1};

  static Form thm1(Exponent b) { return Form{Kind::thm1, 1, b, 2, 2, 1, 1}; }
  static Form thm2(Natural k, Natural l) { return Form{Kind::thm2, 1, 1, 2, 2, std::move(k), std::move(l)}; }
  static Form general(Exponent a, Exponent b, Exponent r, Exponent s) {
    return Form{Kind::general, a, b, r, s, 1, 1};
  }

  // "thm1(3)", "thm2(15,2)", "general(3,1,4,2)".
  std::string tag() const;
};

struct Witness {
  Factorization m;
  Factorization n;
  // Parts left unfactored (1 when m or n is fully factored): the witnesses
  // are m.value() * m_cofactor and n.value() * n_cofactor. The primes of a
  // cofactor may repeat those of the factored part.
  Natural m_cofactor{1};
  Natural n_cofactor{1};
  Form form;
  ExponentVector target;
  // Set only from an exact recomputation of the identity.
  bool verified = false;

  Natural m_value() const { return m.value() * m_cofactor; }
  Natural n_value() const { return n.value() * n_cofactor; }
};

// (phi(m^r))^a / (phi(n^s))^b as an exponent vector.
ExponentVector representation_value(const Factorization& m, const Factorization& n, Exponent a, Exponent b,
                                    Exponent r, Exponent s, const Budgets& budgets = {});

bool verify_rep(const Factorization& m, const Factorization& n, Exponent a, Exponent b, Exponent r, Exponent s,
                const ExponentVector& q, const Budgets& budgets = {});

}  // namespace totrep
