#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace acprg::lab {

/// One experiment. Fields unused by a kind are ignored (and still round-trip).
struct ExperimentConfig {
  std::string kind;  // switch | multi-switch | searcher | cnf-tester | canonical | refute | fool | composer
  std::string label;
  std::size_t n = 12;
  std::size_t m = 8;       // terms per formula; family size for multi-switch and global checks
  std::size_t terms = 4;   // terms per formula inside a family
  std::size_t k = 2;
  double p = 0.5;
  std::size_t t = 3;
  std::size_t w = 2;
  double eps = 0.0;
  bool global = false;
  std::size_t max_stages = 3;
  /// {"type":"random"} or {"type":"kwise","independence":K}
  nlohmann::json lambda = {{"type", "random"}};
  /// {"type":"random"} or a generator descriptor for x
  nlohmann::json x = {{"type", "random"}};
  /// Generator under test for fool; may carry "hybrid": i for a composed generator.
  nlohmann::json generator = nlohmann::json::object();
  /// Circuit suite for fool: {"random_depth3": count, "top":4, "mid":4, "width":3, "terms_up_to": K}
  nlohmann::json circuits = nlohmann::json::object();
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  double confidence = 0.99;
  std::size_t exhaustive_seed_bits = 26;
  std::string output;
};

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ExperimentReport {
  std::string kind;
  std::string label;
  nlohmann::json config;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  /// Bound compared against the upper confidence limit; absent for exact experiments.
  std::optional<double> bound;
  bool exact = false;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();

  double frequency() const noexcept {
    return denominator ? static_cast<double>(numerator) / static_cast<double>(denominator) : 0.0;
  }
  bool informative() const noexcept { return !bound || *bound < 1.0; }
};

nlohmann::json environment_stamp();
nlohmann::json to_json(const ExperimentReport& r);
std::string csv_header();
std::string to_csv_row(const ExperimentReport& r);

/// Pr[DT(F|rho) > t] over random k-DNFs and restrictions versus (10kp)^t + (4m)^(t+k) eps.
ExperimentReport run_switching_experiment(const ExperimentConfig& cfg);
/// Pr[no w-partial depth-t tree] over random families versus 4 m^(t/w) (24pk)^t + (24m)^(t+k) eps.
ExperimentReport run_multi_switching_experiment(const ExperimentConfig& cfg);
/// Exhaustive advice counts equal 2^(n-s) (or 2^(n-S) when cfg.global) on every instance.
ExperimentReport run_searcher_probability_check(const ExperimentConfig& cfg);
/// Witness CNF agrees with the replay check on all 2^n inputs and is no larger than F
/// (or m^2 for the global variant).
ExperimentReport run_cnf_tester_check(const ExperimentConfig& cfg);
/// Canonical transcripts agree with evaluation on every completion and cdt >= dt.
ExperimentReport run_canonical_check(const ExperimentConfig& cfg);
/// Refutations exist exactly when the partial tree oracle says no, and always replay.
ExperimentReport run_refutation_check(const ExperimentConfig& cfg);
/// Max bias of a generator against a circuit suite versus cfg.eps.
ExperimentReport run_fooling_test(const ExperimentConfig& cfg);
/// Partition, coordinate identity, hybrid endpoints and seed accounting of a composed generator.
ExperimentReport run_composer_identities(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace acprg::lab
