#include "acprg/refutation.hpp"

#include <algorithm>

#include "acprg/error.hpp"

namespace acprg {

bool is_powerful_refutation(const std::vector<DnfFormula>& family, const Restriction& rho, const BitVec& z,
                            const BitVec& beta, int w, int t) {
  const PartialRunRecord rec = canonical_partial_dt_run(family, rho, z, beta, w, t);
  if (rec.counter < static_cast<std::size_t>(std::max(t, 0))) return false;
  for (const auto& s : rec.steps)
    if (s.queried.size() < static_cast<std::size_t>(w)) return false;
  return true;
}

namespace {

class RefutationSearch {
public:
  RefutationSearch(const std::vector<DnfFormula>& family, const Restriction& rho, int w, int t,
                   PartialDtSolver& solver, bool guided)
      : z_(rho.dimension()), beta_(rho.dimension()), family_(family), w_(w), t_(static_cast<std::size_t>(t)),
        solver_(solver), guided_(guided) {}

  bool outer(const Restriction& x, std::size_t j, std::size_t counter) {
    if (counter >= t_) return true;
    DtOracle& oracle = thread_dt_oracle();
    std::size_t i = j;
    while (i < family_.size() && oracle.depth_at_most(family_[i], x, w_) <= w_) ++i;
    if (i == family_.size()) return false;
    return inner(x, i, x, {}, counter);
  }

  BitVec z_, beta_;  // result, valid after a successful search

private:
  bool inner(const Restriction& x, std::size_t i, Restriction xy, std::vector<std::size_t> I, std::size_t counter) {
    const DnfFormula& f = family_[i];
    if (counter < t_ && !restrict_dnf(f, xy).is_constant()) {
      const std::size_t term = next_live_term(f, xy);
      std::vector<std::size_t> block;
      for (const auto& l : f.term(term).literals())
        if (xy.is_star(l.var)) block.push_back(l.var);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << block.size()); ++a) {
        Restriction next = xy;
        for (std::size_t q = 0; q < block.size(); ++q) {
          next.fix(block[q], (a >> q) & 1u);
          z_.set(block[q], (a >> q) & 1u);
        }
        std::vector<std::size_t> I2 = I;
        I2.insert(I2.end(), block.begin(), block.end());
        if (inner(x, i, std::move(next), std::move(I2), counter + block.size())) return true;
      }
      for (auto v : block) z_.set(v, false);
      return false;
    }
    if (I.size() < static_cast<std::size_t>(w_)) return false;
    std::sort(I.begin(), I.end());
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << I.size()); ++b) {
      Restriction next = x;
      for (std::size_t q = 0; q < I.size(); ++q) {
        next.fix(I[q], (b >> q) & 1u);
        beta_.set(I[q], (b >> q) & 1u);
      }
      if (guided_ && counter < t_ && solver_.feasible_under(next, static_cast<int>(t_ - counter))) continue;
      if (outer(next, i, counter)) return true;
    }
    for (auto v : I) beta_.set(v, false);
    return false;
  }

  const std::vector<DnfFormula>& family_;
  int w_;
  std::size_t t_;
  PartialDtSolver& solver_;
  bool guided_;
};

}  // namespace

std::optional<Refutation> find_powerful_refutation(const std::vector<DnfFormula>& family, const Restriction& rho,
                                                   int w, int t, PartialDtOptions options) {
  if (w < 0 || t < 0) throw MalformedInput("w and t must be non-negative");
  PartialDtSolver solver(family, rho, w, options);
  if (solver.feasible(t)) return std::nullopt;
  for (bool guided : {true, false}) {
    RefutationSearch search(family, rho, w, t, solver, guided);
    if (!search.outer(rho, 0, 0)) continue;
    Refutation r{search.z_, search.beta_, canonical_partial_dt_run(family, rho, search.z_, search.beta_, w, t), guided};
    if (!is_powerful_refutation(family, rho, r.z, r.beta, w, t))
      throw std::logic_error("refutation search produced a run that fails replay");
    return r;
  }
  return std::nullopt;
}

}  // namespace acprg
