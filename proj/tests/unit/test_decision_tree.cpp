#include <gtest/gtest.h>

#include <set>

#include "acprg/canonical.hpp"
#include "acprg/decision_tree.hpp"
#include "acprg/error.hpp"
#include "acprg/lab/instances.hpp"
#include "acprg/partial_dt.hpp"
#include "support.hpp"

using namespace acprg;
using acprg::testing::assignment;
using acprg::testing::dnf;

namespace {

Restriction R(const char* s) { return Restriction::from_string(s); }

Restriction complete(const Restriction& rho, std::uint64_t v) {
  Restriction out = rho;
  const auto stars = rho.stars();
  for (std::size_t q = 0; q < stars.size(); ++q) out.fix(stars[q], (v >> q) & 1u);
  return out;
}

}  // namespace

TEST(DtExact, Constants) {
  EXPECT_EQ(dt_depth_exact(TruthTable::constant(4, true)), 0);
  EXPECT_EQ(dt_depth_exact(TruthTable::constant(4, false)), 0);
  EXPECT_EQ(dt_depth_exact(DnfFormula::constant(3, true)), 0);
}

TEST(DtExact, SingleVariableAndOr) {
  EXPECT_EQ(dt_depth_exact(dnf(2, {{1}})), 1);
  EXPECT_EQ(dt_depth_exact(dnf(2, {{1}, {2}})), 2);
}

TEST(DtExact, ParityNeedsEveryVariable) {
  TruthTable tt(5);
  for (std::uint64_t x = 0; x < 32; ++x) tt.set(x, std::popcount(x) & 1);
  EXPECT_EQ(dt_depth_exact(tt), 5);
}

TEST(DtExact, MatchesOptimalTreeAndBruteForce) {
  DtOracle oracle;
  for (std::uint64_t s = 0; s < 40; ++s) {
    lab::CounterRng rng(5, s);
    const std::size_t n = 3 + s % 4;
    const auto f = lab::random_dnf(rng, n, 1 + rng.below(4), 1 + rng.below(3));
    const auto tree = oracle.optimal_tree(f, Restriction(n));
    EXPECT_EQ(static_cast<int>(tree.depth()), oracle.depth(TruthTable::of(f)));
    EXPECT_TRUE(tree.is_read_once_per_path());
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) ASSERT_EQ(tree.eval(assignment(v, n)), f.eval(assignment(v, n)));
  }
}

TEST(DtExact, VariableCapEnforced) {
  TruthTable tt(18);
  for (std::uint64_t x = 0; x < tt.entries(); ++x) tt.set(x, std::popcount(x) & 1);
  DtOracle small(16);
  EXPECT_THROW(small.depth(tt), CapExceeded);
}

TEST(DecisionTreeText, RoundTrip) {
  const auto t = DecisionTree::from_text("(x3 0 (x1 1 0))");
  EXPECT_EQ(t.to_text(), "(x3 0 (x1 1 0))");
  EXPECT_EQ(t.depth(), 2u);
  EXPECT_EQ(t.leaf_count(), 3u);
  EXPECT_FALSE(DecisionTree::from_text("(x1 (x1 0 1) 1)").is_read_once_per_path());
}

TEST(CanonicalRun, FirstTermSatisfied) {
  const auto f = dnf(3, {{1, 2}});
  const auto tr = canonical_dt_run(f, R("***"), R("110"));
  ASSERT_EQ(tr.blocks.size(), 1u);
  EXPECT_EQ(tr.blocks[0].term, 0u);
  EXPECT_EQ(tr.blocks[0].vars, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(tr.blocks[0].response, (std::vector<bool>{true, true}));
  EXPECT_EQ(tr.outcome, CanonicalOutcome::One);
}

TEST(CanonicalRun, BothTermsFalsified) {
  const auto f = dnf(4, {{1, 2}, {3, 4}});
  const auto tr = canonical_dt_run(f, R("****"), R("0000"));
  EXPECT_EQ(tr.blocks.size(), 2u);
  EXPECT_EQ(tr.outcome, CanonicalOutcome::Zero);
  EXPECT_EQ(tr.queries, 4u);
}

TEST(CanonicalRun, DeadTermGivesEmptyTranscript) {
  const auto tr = canonical_dt_run(dnf(2, {{1, 2}}), R("0*"), R("00"));
  EXPECT_TRUE(tr.blocks.empty());
  EXPECT_EQ(tr.outcome, CanonicalOutcome::Zero);
}

TEST(CanonicalRun, OracleMustAnswer) {
  EXPECT_THROW(canonical_dt_run(dnf(2, {{1, 2}}), R("**"), R("*1")), OracleError);
}

TEST(CanonicalRun, BudgetExhausts) {
  const auto tr = canonical_dt_run(dnf(4, {{1, 2}, {3, 4}}), R("****"), R("0000"), 2);
  EXPECT_EQ(tr.outcome, CanonicalOutcome::Exhausted);
  EXPECT_EQ(tr.queries, 2u);
}

TEST(CdtDepth, Examples) {
  EXPECT_EQ(cdt_depth(DnfFormula::constant(3, true), R("***")), 0u);
  EXPECT_EQ(cdt_depth(dnf(2, {{1, 2}}), R("**")), 2u);
}

TEST(CanonicalProperty, SoundDisjointAndDominant) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    lab::CounterRng rng(17, s);
    const std::size_t n = 3 + s % 8;  // up to 10
    const auto f = lab::random_dnf(rng, n, 1 + rng.below(6), 1 + rng.below(4));
    const auto rho = lab::random_restriction(rng, n, 0.6);
    std::size_t deepest = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << rho.star_count()); ++v) {
      const Restriction alpha = complete(rho, v);
      const auto tr = canonical_dt_run(f, rho, alpha);
      ASSERT_EQ(tr.outcome == CanonicalOutcome::One, f.eval(alpha.assignment()));
      std::set<std::size_t> seen;
      std::size_t total = 0;
      std::size_t last_term = 0;
      for (std::size_t b = 0; b < tr.blocks.size(); ++b) {
        const auto& blk = tr.blocks[b];
        ASSERT_FALSE(blk.vars.empty());
        if (b > 0) ASSERT_GT(blk.term, last_term);
        last_term = blk.term;
        for (auto v2 : blk.vars) ASSERT_TRUE(seen.insert(v2).second);
        total += blk.vars.size();
      }
      ASSERT_EQ(total, tr.queries);
      deepest = std::max(deepest, tr.queries);
    }
    const std::size_t cdt = cdt_depth(f, rho);
    EXPECT_EQ(cdt, deepest);
    EXPECT_GE(static_cast<int>(cdt), dt_depth_exact(f, rho));
  }
}

TEST(PartialDt, EmptyCommonTreeSuffices) {
  const std::vector<DnfFormula> fam{dnf(3, {{1, 2}}), dnf(3, {{-3}, {1}})};
  int w = 0;
  for (const auto& f : fam) w = std::max(w, dt_depth_exact(f));
  EXPECT_TRUE(has_w_partial_depth_t_dt(fam, w, 0));
}

TEST(PartialDt, OneQueryCannotSettleAnd) {
  EXPECT_FALSE(has_w_partial_depth_t_dt({dnf(2, {{1, 2}})}, 0, 1));
}

TEST(PartialDt, QueryFirstVariable) {
  const std::vector<DnfFormula> fam{dnf(2, {{1}}), dnf(2, {{1}, {2}})};
  EXPECT_TRUE(has_w_partial_depth_t_dt(fam, 1, 1));
  PartialDtSolver solver(fam, Restriction(2), 1);
  const auto cert = solver.certificate(1);
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(validate_certificate(fam, Restriction(2), *cert));
}

TEST(PartialDt, VariableCapEnforced) {
  std::vector<std::vector<int>> terms;
  for (int v = 1; v <= 14; v += 2) terms.push_back({v, v + 1});
  EXPECT_THROW(has_w_partial_depth_t_dt({dnf(14, terms)}, 1, 2), CapExceeded);
}

TEST(PartialDtProperty, CertificatesValidateAndPruningIsResultIdentical) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    lab::CounterRng rng(23, s);
    const std::size_t n = 4 + s % 5;  // up to 8
    const auto fam = lab::random_family(rng, 1 + rng.below(3), n, 1 + rng.below(3), 1 + rng.below(3));
    const auto rho = lab::random_restriction(rng, n, 0.7);
    const int w = static_cast<int>(rng.below(3)), t = static_cast<int>(rng.below(4));
    PartialDtSolver pruned(fam, rho, w), plain(fam, rho, w, PartialDtOptions{12, false});
    const bool ok = pruned.feasible(t);
    ASSERT_EQ(ok, plain.feasible(t));
    if (ok) {
      const auto cert = pruned.certificate(t);
      ASSERT_TRUE(cert.has_value());
      ASSERT_TRUE(validate_certificate(fam, rho, *cert));
      ASSERT_LE(static_cast<int>(cert->common.depth()), t);
    }
  }
}

TEST(PartialRun, AllConstantFamilyIsEmpty) {
  const std::vector<DnfFormula> fam{DnfFormula::constant(3, true), DnfFormula::constant(3, false)};
  const auto rec = canonical_partial_dt_run(fam, Restriction(3), BitVec(3), BitVec(3), 1, 4);
  EXPECT_TRUE(rec.steps.empty());
  EXPECT_EQ(rec.counter, 0u);
}

TEST(PartialRun, SingleAndQueriesBothVariables) {
  const std::vector<DnfFormula> fam{dnf(2, {{1, 2}})};
  for (std::uint64_t b = 0; b < 4; ++b) {
    const auto rec = canonical_partial_dt_run(fam, Restriction(2), BitVec::from_string("11"), assignment(b, 2), 1, 4);
    ASSERT_EQ(rec.steps.size(), 1u);
    EXPECT_EQ(rec.steps[0].queried, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(rec.counter, 2u);
  }
}

TEST(PartialRunProperty, CounterStaysBelowTPlusK) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    lab::CounterRng rng(29, s);
    const std::size_t n = 4 + s % 6;
    const std::size_t k = 1 + rng.below(3);
    const auto fam = lab::random_family(rng, 1 + rng.below(3), n, 1 + rng.below(4), k);
    const auto rho = lab::random_restriction(rng, n, 0.8);
    const int w = static_cast<int>(rng.below(2)), t = 1 + static_cast<int>(rng.below(4));
    const auto rec = canonical_partial_dt_run(fam, rho, rng.bits(n), rng.bits(n), w, t);
    std::size_t width = 0;
    for (const auto& f : fam) width = std::max(width, f.width());
    ASSERT_LE(rec.counter, static_cast<std::size_t>(t) + width - 1);
  }
}
