#include "acprg/witness.hpp"

#include <algorithm>

#include "acprg/error.hpp"

namespace acprg {

std::size_t PartialWitness::size() const noexcept {
  std::size_t s = 0;
  for (const auto& st : steps) s += st.size();
  return s;
}

std::size_t Witness::size() const noexcept {
  std::size_t s = 0;
  for (const auto& st : steps) s += st.size();
  return s;
}

Witness Witness::complete(const PartialWitness& pw, std::vector<std::size_t> ell) {
  if (ell.size() != pw.steps.size()) throw MalformedInput("ell and steps differ in length");
  return Witness{std::move(ell), pw.steps};
}

bool satisfies_witness_arithmetic(const PartialWitness& pw, std::size_t k, std::size_t t) {
  if (pw.r() < 1 || pw.r() > t) return false;
  for (const auto& st : pw.steps) {
    if (st.size() < 1 || st.size() > 64) return false;
    for (std::size_t j = 0; j < st.size(); ++j) {
      if (st.positions[j] >= k) return false;
      if (j > 0 && st.positions[j] <= st.positions[j - 1]) return false;
    }
    if (st.size() < 64 && (st.alpha >> st.size()) != 0) return false;
  }
  const std::size_t s = pw.size();
  return s >= t && s + 1 <= t + k;
}

namespace {

void check_positions(const Term& term, const WitnessStep& st) {
  if (st.positions.empty()) throw MalformedInput("witness step with no positions");
  for (std::size_t j = 0; j < st.size(); ++j) {
    if (st.positions[j] >= term.size()) throw MalformedInput("witness position beyond its term");
    if (j > 0 && st.positions[j] <= st.positions[j - 1]) throw MalformedInput("witness positions must ascend");
  }
}

bool positions_equal_unknowns(const Term& term, const Restriction& x, const WitnessStep& st) {
  std::size_t j = 0;
  for (std::size_t p = 0; p < term.size(); ++p) {
    if (!x.is_star(term[p].var)) continue;
    if (j >= st.size() || st.positions[j] != p) return false;
    ++j;
  }
  return j == st.size();
}

void apply_step(const Term& term, const WitnessStep& st, Restriction& x) {
  for (std::size_t j = 0; j < st.size(); ++j) x.fix(term[st.positions[j]].var, st.response(j));
}

// Deterministic replay shared by completion and checking; `expected` pins ell when given.
std::optional<std::vector<std::size_t>> replay(const DnfFormula& f, const Restriction& rho,
                                               const std::vector<WitnessStep>& steps,
                                               const std::vector<std::size_t>* expected) {
  if (rho.dimension() != f.dimension()) throw DimensionMismatch("witness replay: dimensions differ");
  if (steps.empty()) throw MalformedInput("witness needs at least one step");
  Restriction x = rho;
  std::vector<std::size_t> ell;
  std::size_t from = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::size_t j = next_live_term(f, x, from);
    if (expected) {
      const std::size_t want = (*expected)[i];
      if (want >= f.term_count()) throw MalformedInput("ell index beyond the formula");
      if (i > 0 && want <= (*expected)[i - 1]) throw MalformedInput("ell must strictly increase");
      check_positions(f.term(want), steps[i]);
      if (j != want) return std::nullopt;
    }
    if (j == f.term_count()) return std::nullopt;
    const Term& term = f.term(j);
    if (!expected) {
      for (auto p : steps[i].positions)
        if (p >= term.size()) return std::nullopt;
    }
    if (!positions_equal_unknowns(term, x, steps[i])) return std::nullopt;
    apply_step(term, steps[i], x);
    if (term.status(x) == TermStatus::Satisfied && i + 1 < steps.size()) return std::nullopt;
    ell.push_back(j);
    from = j + 1;
  }
  return ell;
}

}  // namespace

bool is_witness(const DnfFormula& f, const Restriction& rho, const Witness& wit) {
  if (wit.ell.size() != wit.steps.size()) throw MalformedInput("ell and steps differ in length");
  return replay(f, rho, wit.steps, &wit.ell).has_value();
}

bool is_t_witness(const DnfFormula& f, const Restriction& rho, const Witness& wit, std::size_t t) {
  if (!satisfies_witness_arithmetic(wit.partial(), f.width(), t)) return false;
  return is_witness(f, rho, wit);
}

std::optional<Witness> complete_partial_witness(const DnfFormula& f, const Restriction& rho,
                                                const PartialWitness& pw) {
  auto ell = replay(f, rho, pw.steps, nullptr);
  if (!ell) return std::nullopt;
  return Witness{std::move(*ell), pw.steps};
}

SearchResult<Witness> witness_search_decoupled(const DnfFormula& f, const BitVec& z_in, const PartialWitness& pw) {
  if (z_in.size() != f.dimension()) throw DimensionMismatch("witness search: advice length differs");
  BitVec z = z_in;
  Witness out;
  out.steps = pw.steps;
  std::size_t from = 0;
  for (std::size_t c = 0; c < pw.r(); ++c) {
    std::size_t j = from;
    while (j < f.term_count() && !f.term(j).eval_and(z)) ++j;
    if (j == f.term_count()) return SearchError{c, "no satisfied term"};
    const Term& term = f.term(j);
    const WitnessStep& st = pw.steps[c];
    for (std::size_t q = 0; q < st.size(); ++q) {
      if (st.positions[q] >= term.size()) return SearchError{c, "position outside the found term"};
      z.set(term[st.positions[q]].var, st.response(q));
    }
    out.ell.push_back(j);
    from = j + 1;
  }
  return out;
}

SearchResult<Witness> witness_search(const DnfFormula& f, const Restriction& rho, const PartialWitness& pw,
                                     const BitVec& y) {
  if (rho.dimension() != f.dimension() || y.size() != f.dimension())
    throw DimensionMismatch("witness search: dimensions differ");
  return witness_search_decoupled(f, compose(rho, Restriction::full(y)).assignment(), pw);
}

std::vector<std::size_t> step_vars(const DnfFormula& f, const Witness& wit, std::size_t i) {
  const Term& term = f.term(wit.ell.at(i));
  std::vector<std::size_t> out;
  for (auto p : wit.steps.at(i).positions) {
    if (p >= term.size()) throw MalformedInput("witness position beyond its term");
    out.push_back(term[p].var);
  }
  return out;
}

std::vector<std::size_t> witness_vars(const DnfFormula& f, const Witness& wit) {
  BitVec all(f.dimension());
  for (std::size_t i = 0; i < wit.r(); ++i)
    for (auto v : step_vars(f, wit, i)) all.set(v);
  return all.ones();
}

Restriction witness_assignment(const DnfFormula& f, const Witness& wit) {
  Restriction a(f.dimension());
  for (std::size_t i = 0; i < wit.r(); ++i) {
    const auto vars = step_vars(f, wit, i);
    for (std::size_t q = 0; q < vars.size(); ++q) a.fix(vars[q], wit.steps[i].response(q));
  }
  return a;
}

Witness witness_from_transcript(const DnfFormula& f, const CanonicalTranscript& tr) {
  Witness w;
  for (const auto& b : tr.blocks) {
    const Term& term = f.term(b.term);
    WitnessStep st;
    for (std::size_t q = 0; q < b.vars.size(); ++q) {
      st.positions.push_back(static_cast<std::uint8_t>(term.position_of(static_cast<std::uint32_t>(b.vars[q]))));
      if (b.response[q]) st.alpha |= std::uint64_t{1} << q;
    }
    w.ell.push_back(b.term);
    w.steps.push_back(std::move(st));
  }
  return w;
}

namespace detail {

bool append_witness_clauses(const DnfFormula& f, const IndexSet& lambda, Restriction fixed, const Witness& wit,
                            CnfFormula& h) {
  const auto in_lambda = [&](std::uint32_t v) { return lambda.contains(v); };
  // Static status of the lambda part of a term under the committed values.
  const auto static_falsified = [&](const Term& term) {
    for (const auto& l : term.literals())
      if (in_lambda(l.var) && fixed.is_fixed(l.var) && fixed.value(l.var) == l.negated) return true;
    return false;
  };
  std::size_t from = 0;
  for (std::size_t i = 0; i < wit.r(); ++i) {
    const std::size_t ell = wit.ell[i];
    for (std::size_t j = from; j < ell; ++j) {
      const Term& term = f.term(j);
      if (static_falsified(term)) continue;
      std::vector<Literal> clause;
      for (const auto& l : term.literals())
        if (!in_lambda(l.var)) clause.push_back(Literal{l.var, !l.negated});
      if (clause.empty()) return false;
      h.add_clause(Term(std::move(clause)));
    }
    const Term& term = f.term(ell);
    if (static_falsified(term)) return false;
    const WitnessStep& st = wit.steps[i];
    std::size_t q = 0;
    for (std::size_t p = 0; p < term.size(); ++p) {
      const auto v = term[p].var;
      if (!in_lambda(v) || fixed.is_fixed(v)) continue;
      if (q >= st.size() || st.positions[q] != p) return false;
      ++q;
    }
    if (q != st.size()) return false;
    for (const auto& l : term.literals())
      if (!in_lambda(l.var)) h.add_clause(Term{l});
    bool satisfied = true;
    for (std::size_t q2 = 0; q2 < st.size(); ++q2) fixed.fix(term[st.positions[q2]].var, st.response(q2));
    for (const auto& l : term.literals())
      if (in_lambda(l.var) && fixed.value(l.var) == l.negated) satisfied = false;
    if (satisfied && i + 1 < wit.r()) return false;
    from = ell + 1;
  }
  return true;
}

}  // namespace detail

CnfFormula build_witness_cnf(const DnfFormula& f, const IndexSet& lambda, const Witness& wit) {
  if (lambda.dimension() != f.dimension()) throw DimensionMismatch("build_witness_cnf: dimensions differ");
  if (wit.ell.size() != wit.steps.size() || wit.steps.empty()) throw MalformedInput("malformed witness");
  for (std::size_t i = 0; i < wit.r(); ++i) {
    if (wit.ell[i] >= f.term_count()) throw MalformedInput("ell index beyond the formula");
    if (i > 0 && wit.ell[i] <= wit.ell[i - 1]) throw MalformedInput("ell must strictly increase");
    check_positions(f.term(wit.ell[i]), wit.steps[i]);
    for (auto v : step_vars(f, wit, i))
      if (!lambda.contains(v)) throw MalformedInput("witness queries variable " + std::to_string(v) + " outside lambda");
  }
  CnfFormula h(f.dimension());
  if (!detail::append_witness_clauses(f, lambda, Restriction(f.dimension()), wit, h)) return CnfFormula::falsum(f.dimension());
  return h;
}

namespace {

std::string alpha_string(const WitnessStep& st) {
  std::string s;
  for (std::size_t j = 0; j < st.size(); ++j) s += st.response(j) ? '1' : '0';
  return s;
}

std::uint64_t parse_alpha(const std::string& s) {
  if (s.size() > 64) throw MalformedInput("alpha longer than 64 bits");
  std::uint64_t a = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1')
      a |= std::uint64_t{1} << j;
    else if (s[j] != '0')
      throw MalformedInput("alpha strings are over {0,1}");
  }
  return a;
}

}  // namespace

nlohmann::json to_json(const DnfFormula& f, const Witness& wit) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < wit.r(); ++i) {
    std::vector<int> pos(wit.steps[i].positions.begin(), wit.steps[i].positions.end());
    steps.push_back({{"vars", step_vars(f, wit, i)}, {"positions", pos}, {"alpha", alpha_string(wit.steps[i])}});
  }
  return {{"r", wit.r()}, {"ell", wit.ell}, {"size", wit.size()}, {"steps", steps}};
}

nlohmann::json to_json(const PartialWitness& pw) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : pw.steps) {
    std::vector<int> pos(st.positions.begin(), st.positions.end());
    steps.push_back({{"positions", pos}, {"alpha", alpha_string(st)}});
  }
  return {{"r", pw.r()}, {"size", pw.size()}, {"steps", steps}};
}

PartialWitness partial_witness_from_json(const nlohmann::json& j) {
  PartialWitness pw;
  for (const auto& s : j.at("steps")) {
    WitnessStep st;
    for (int p : s.at("positions").get<std::vector<int>>()) {
      if (p < 0 || p > 255) throw MalformedInput("position out of range");
      st.positions.push_back(static_cast<std::uint8_t>(p));
    }
    const auto alpha = s.at("alpha").get<std::string>();
    if (alpha.size() != st.size()) throw MalformedInput("alpha length differs from step size");
    st.alpha = parse_alpha(alpha);
    pw.steps.push_back(std::move(st));
  }
  return pw;
}

Witness witness_from_json(const DnfFormula& f, const nlohmann::json& j) {
  Witness w;
  w.ell = j.at("ell").get<std::vector<std::size_t>>();
  const auto& steps = j.at("steps");
  if (steps.size() != w.ell.size()) throw MalformedInput("ell and steps differ in length");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (w.ell[i] >= f.term_count()) throw MalformedInput("ell index beyond the formula");
    WitnessStep st;
    if (s.contains("positions")) {
      for (int p : s.at("positions").get<std::vector<int>>()) {
        if (p < 0 || p > 255) throw MalformedInput("position out of range");
        st.positions.push_back(static_cast<std::uint8_t>(p));
      }
    } else {
      const Term& term = f.term(w.ell[i]);
      auto vars = s.at("vars").get<std::vector<std::size_t>>();
      std::sort(vars.begin(), vars.end());
      for (auto v : vars) {
        const auto p = term.position_of(static_cast<std::uint32_t>(v));
        if (p == term.size()) throw MalformedInput("variable " + std::to_string(v) + " not in term");
        st.positions.push_back(static_cast<std::uint8_t>(p));
      }
    }
    const auto alpha = s.at("alpha").get<std::string>();
    if (alpha.size() != st.size()) throw MalformedInput("alpha length differs from step size");
    st.alpha = parse_alpha(alpha);
    w.steps.push_back(std::move(st));
  }
  return w;
}

}  // namespace acprg
