#include "acprg/global_witness.hpp"

#include "acprg/error.hpp"

namespace acprg {

std::size_t GlobalPartialWitness::size() const noexcept {
  std::size_t s = 0;
  for (const auto& p : parts) s += p.size();
  return s;
}

std::size_t GlobalWitness::size() const noexcept {
  std::size_t s = 0;
  for (const auto& p : parts) s += p.size();
  return s;
}

GlobalPartialWitness GlobalWitness::partial() const {
  GlobalPartialWitness g;
  g.formulas = formulas;
  g.beta = beta;
  for (const auto& w : parts) g.parts.push_back(w.partial());
  return g;
}

std::size_t max_global_stages(std::size_t w, std::size_t t) {
  if (w == 0) throw MalformedInput("w must be positive");
  return (t + w - 1) / w;
}

bool satisfies_global_arithmetic(const GlobalPartialWitness& gpw, std::size_t m, std::size_t k, std::size_t w,
                                 std::size_t t) {
  const std::size_t R = gpw.R();
  if (R < 1 || R > max_global_stages(w, t)) return false;
  if (gpw.formulas.size() != R || gpw.beta.size() != R) return false;
  for (std::size_t i = 0; i < R; ++i) {
    if (gpw.formulas[i] >= m) return false;
    if (i > 0 && gpw.formulas[i] < gpw.formulas[i - 1]) return false;
    const std::size_t S = gpw.parts[i].size();
    if (S < 1 || gpw.beta[i].size() != S) return false;
    if (!satisfies_witness_arithmetic(gpw.parts[i], k, S)) return false;
  }
  const std::size_t S = gpw.size();
  return S >= t && S <= t + k;
}

namespace {

void check_shape(const std::vector<DnfFormula>& family, std::size_t R, const std::vector<std::size_t>& formulas,
                 const std::vector<std::vector<bool>>& beta) {
  if (R == 0) throw MalformedInput("global witness needs at least one stage");
  if (formulas.size() != R || beta.size() != R) throw MalformedInput("global witness lists differ in length");
  for (auto L : formulas)
    if (L >= family.size()) throw MalformedInput("formula index beyond the family");
}

Restriction beta_assignment(std::size_t n, const std::vector<std::size_t>& vars, const std::vector<bool>& beta) {
  if (vars.size() != beta.size()) throw MalformedInput("|beta_i| differs from |I_i|");
  Restriction b(n);
  for (std::size_t q = 0; q < vars.size(); ++q) b.fix(vars[q], beta[q]);
  return b;
}

}  // namespace

std::vector<Restriction> global_stage_restrictions(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                   const GlobalWitness& gw) {
  check_shape(family, gw.R(), gw.formulas, gw.beta);
  std::vector<Restriction> out{rho};
  for (std::size_t i = 0; i < gw.R(); ++i) {
    const auto vars = witness_vars(family[gw.formulas[i]], gw.parts[i]);
    out.push_back(compose(out.back(), beta_assignment(rho.dimension(), vars, gw.beta[i])));
  }
  return out;
}

bool is_global_witness(const std::vector<DnfFormula>& family, const Restriction& rho, const GlobalWitness& gw) {
  check_shape(family, gw.R(), gw.formulas, gw.beta);
  Restriction cur = rho;
  for (std::size_t i = 0; i < gw.R(); ++i) {
    const DnfFormula& f = family[gw.formulas[i]];
    if (!is_witness(f, cur, gw.parts[i])) return false;
    const auto vars = witness_vars(f, gw.parts[i]);
    if (vars.size() != gw.beta[i].size()) return false;
    cur = compose(cur, beta_assignment(rho.dimension(), vars, gw.beta[i]));
  }
  return true;
}

bool is_global_wt_witness(const std::vector<DnfFormula>& family, const Restriction& rho, const GlobalWitness& gw,
                          std::size_t w, std::size_t t) {
  std::size_t k = 0;
  for (const auto& f : family) k = std::max(k, f.width());
  if (!satisfies_global_arithmetic(gw.partial(), family.size(), k, w, t)) return false;
  return is_global_witness(family, rho, gw);
}

std::optional<GlobalWitness> complete_global_partial_witness(const std::vector<DnfFormula>& family,
                                                             const Restriction& rho,
                                                             const GlobalPartialWitness& gpw) {
  check_shape(family, gpw.R(), gpw.formulas, gpw.beta);
  GlobalWitness gw{gpw.formulas, {}, gpw.beta};
  Restriction cur = rho;
  for (std::size_t i = 0; i < gpw.R(); ++i) {
    const DnfFormula& f = family[gpw.formulas[i]];
    auto w = complete_partial_witness(f, cur, gpw.parts[i]);
    if (!w) return std::nullopt;
    const auto vars = witness_vars(f, *w);
    if (vars.size() != gpw.beta[i].size()) return std::nullopt;
    cur = compose(cur, beta_assignment(rho.dimension(), vars, gpw.beta[i]));
    gw.parts.push_back(std::move(*w));
  }
  return gw;
}

SearchResult<GlobalWitness> global_witness_search(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                  const GlobalPartialWitness& gpw, const BitVec& y) {
  check_shape(family, gpw.R(), gpw.formulas, gpw.beta);
  GlobalWitness gw{gpw.formulas, {}, gpw.beta};
  Restriction cur = rho;
  for (std::size_t c = 0; c < gpw.R(); ++c) {
    const DnfFormula& f = family[gpw.formulas[c]];
    auto res = witness_search(f, cur, gpw.parts[c], y);
    if (auto* err = std::get_if<SearchError>(&res)) return SearchError{c, err->reason};
    Witness w = std::get<Witness>(std::move(res));
    const auto vars = witness_vars(f, w);
    if (vars.size() != gpw.beta[c].size()) return SearchError{c, "|I_c| differs from |beta_c|"};
    cur = compose(cur, beta_assignment(rho.dimension(), vars, gpw.beta[c]));
    gw.parts.push_back(std::move(w));
  }
  return gw;
}

CnfFormula build_global_witness_cnf(const std::vector<DnfFormula>& family, const IndexSet& lambda,
                                    const GlobalWitness& gw) {
  check_shape(family, gw.R(), gw.formulas, gw.beta);
  const std::size_t n = lambda.dimension();
  CnfFormula h(n);
  Restriction fixed(n);
  bool alive = true;
  for (std::size_t i = 0; i < gw.R(); ++i) {
    const DnfFormula& f = family[gw.formulas[i]];
    if (f.dimension() != n) throw DimensionMismatch("build_global_witness_cnf: dimensions differ");
    // validates B inside lambda and throws otherwise
    const CnfFormula stage_check = build_witness_cnf(f, lambda, gw.parts[i]);
    (void)stage_check;
    if (alive && !detail::append_witness_clauses(f, lambda, fixed, gw.parts[i], h)) alive = false;
    const auto vars = witness_vars(f, gw.parts[i]);
    if (vars.size() != gw.beta[i].size()) alive = false;
    else
      for (std::size_t q = 0; q < vars.size(); ++q)
        if (!fixed.is_fixed(vars[q])) fixed.fix(vars[q], gw.beta[i][q]);
  }
  if (!alive) return CnfFormula::falsum(n);
  return h;
}

GlobalWitness global_witness_from_run(const std::vector<DnfFormula>& family, const PartialRunRecord& rec) {
  GlobalWitness gw;
  for (const auto& step : rec.steps) {
    const DnfFormula& f = family.at(step.formula);
    Witness w;
    for (const auto& b : step.blocks) {
      const Term& term = f.term(b.term);
      WitnessStep st;
      for (std::size_t q = 0; q < b.vars.size(); ++q) {
        st.positions.push_back(static_cast<std::uint8_t>(term.position_of(static_cast<std::uint32_t>(b.vars[q]))));
        if (b.z_values[q]) st.alpha |= std::uint64_t{1} << q;
      }
      w.ell.push_back(b.term);
      w.steps.push_back(std::move(st));
    }
    gw.formulas.push_back(step.formula);
    gw.parts.push_back(std::move(w));
    gw.beta.push_back(step.beta);
  }
  return gw;
}

namespace {

std::string bit_string(const std::vector<bool>& b) {
  std::string s;
  for (bool v : b) s += v ? '1' : '0';
  return s;
}

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> b;
  for (char c : s) {
    if (c != '0' && c != '1') throw MalformedInput("beta strings are over {0,1}");
    b.push_back(c == '1');
  }
  return b;
}

}  // namespace

nlohmann::json to_json(const std::vector<DnfFormula>& family, const GlobalWitness& gw) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t i = 0; i < gw.R(); ++i) {
    const DnfFormula& f = family.at(gw.formulas[i]);
    stages.push_back({{"formula", gw.formulas[i]},
                      {"witness", to_json(f, gw.parts[i])},
                      {"I", witness_vars(f, gw.parts[i])},
                      {"beta", bit_string(gw.beta[i])}});
  }
  return {{"R", gw.R()}, {"size", gw.size()}, {"stages", stages}};
}

nlohmann::json to_json(const GlobalPartialWitness& gpw) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t i = 0; i < gpw.R(); ++i)
    stages.push_back({{"formula", gpw.formulas[i]}, {"partial", to_json(gpw.parts[i])}, {"beta", bit_string(gpw.beta[i])}});
  return {{"R", gpw.R()}, {"size", gpw.size()}, {"stages", stages}};
}

GlobalPartialWitness global_partial_witness_from_json(const nlohmann::json& j) {
  GlobalPartialWitness g;
  for (const auto& s : j.at("stages")) {
    g.formulas.push_back(s.at("formula").get<std::size_t>());
    g.parts.push_back(partial_witness_from_json(s.at("partial")));
    g.beta.push_back(parse_bits(s.at("beta").get<std::string>()));
  }
  return g;
}

}  // namespace acprg
