#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "acprg/circuit.hpp"
#include "acprg/formula.hpp"

namespace acprg {

// Line formats. A DNF block is a header `dnf n=<n> m=<terms>` followed by one term per
// line as signed 1-based literals, optionally terminated by 0; a line holding only `0`
// is the empty term. Lines starting with `c` are comments. CNF uses a `cnf` header.
// Deeper circuits use `ac0 n=<n>` followed by an s-expression such as
// `(or (and 1 -2) (and 3 (or -4 5)))`; `(and)` and `(or)` are the constants 1 and 0.

DnfFormula parse_dnf(std::string_view text);
CnfFormula parse_cnf(std::string_view text);
/// A sequence of dnf blocks.
std::vector<DnfFormula> parse_family(std::string_view text);
Ac0Circuit parse_circuit(std::string_view text);

std::string to_text(const DnfFormula& f);
std::string to_text(const CnfFormula& h);
std::string to_text(const std::vector<DnfFormula>& family);
std::string to_text(const Ac0Circuit& c);

/// The s-expression of a circuit without header.
std::string to_sexpr(const Ac0Circuit& c);

std::string read_file(const std::string& path);

}  // namespace acprg
