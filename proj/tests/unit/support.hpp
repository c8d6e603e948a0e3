#pragma once

#include <cstdint>
#include <vector>

#include "acprg/bits.hpp"
#include "acprg/formula.hpp"
#include "acprg/restriction.hpp"

namespace acprg::testing {

// Terms given as signed 1-based literals, as in the text format.
inline DnfFormula dnf(std::size_t n, const std::vector<std::vector<int>>& terms) {
  DnfFormula f(n);
  for (const auto& t : terms) {
    std::vector<Literal> lits;
    for (int v : t) lits.push_back(Literal::from_dimacs(v));
    f.add_term(Term(std::move(lits)));
  }
  return f;
}

inline CnfFormula cnf(std::size_t n, const std::vector<std::vector<int>>& clauses) {
  CnfFormula h(n);
  for (const auto& c : clauses) {
    std::vector<Literal> lits;
    for (int v : c) lits.push_back(Literal::from_dimacs(v));
    h.add_clause(Term(std::move(lits)));
  }
  return h;
}

// Assignment with bit i of v as variable i.
inline BitVec assignment(std::uint64_t v, std::size_t n) {
  BitVec x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, (v >> i) & 1u);
  return x;
}

// All 3^n restrictions of dimension n.
inline std::vector<Restriction> all_restrictions(std::size_t n) {
  std::vector<Restriction> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    Restriction r(n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= 3)
      if (c % 3 != 2) r.fix(i, c % 3 == 1);
    out.push_back(r);
  }
  return out;
}

}  // namespace acprg::testing
