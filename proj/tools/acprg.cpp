// acprg: command line front end. Every subcommand prints JSON lines on stdout; experiment
// subcommands can also write a CSV summary. Exit codes: 0 ok, 1 failed verdict or
// searcher ERROR, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acprg/canonical.hpp"
#include "acprg/composer.hpp"
#include "acprg/decision_tree.hpp"
#include "acprg/error.hpp"
#include "acprg/generator_config.hpp"
#include "acprg/global_witness.hpp"
#include "acprg/lab/experiment.hpp"
#include "acprg/lab/rng.hpp"
#include "acprg/partial_dt.hpp"
#include "acprg/refutation.hpp"
#include "acprg/text_format.hpp"
#include "acprg/truth_table.hpp"
#include "acprg/witness.hpp"

using nlohmann::json;
using namespace acprg;

namespace {

struct Common {
  std::string config_path;
  json config = json::object();

  void load() {
    if (!config_path.empty()) config = json::parse(read_file(config_path));
  }
  // Fills `value` from the config when the flag was not given on the command line.
  template <class T>
  void fill(const CLI::Option* opt, const char* key, T& value) const {
    if (opt->count() == 0 && config.contains(key)) value = config.at(key).get<T>();
  }
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

Restriction restriction_arg(const std::string& text, std::size_t n) {
  if (text.empty()) return Restriction(n);
  Restriction r = Restriction::from_string(text);
  if (r.dimension() != n) throw DimensionMismatch("restriction has " + std::to_string(r.dimension()) + " cells, formula has " + std::to_string(n));
  return r;
}

BitVec bits_arg(const std::string& text, std::size_t n) {
  if (text.rfind("0x", 0) == 0) return BitVec::from_hex(text.substr(2), n);
  BitVec b = BitVec::from_string(text);
  if (b.size() != n) throw DimensionMismatch("bit string has " + std::to_string(b.size()) + " bits, expected " + std::to_string(n));
  return b;
}

std::vector<DnfFormula> family_arg(const std::string& path) { return parse_family(read_file(path)); }

int run_reports(const std::vector<lab::ExperimentConfig>& cfgs, const std::string& jsonl_path, const std::string& csv_path) {
  std::ofstream jsonl_file, csv_file;
  if (!jsonl_path.empty()) jsonl_file.open(jsonl_path);
  if (!csv_path.empty()) {
    csv_file.open(csv_path);
    csv_file << lab::csv_header() << '\n';
  }
  bool all_pass = true;
  for (const auto& cfg : cfgs) {
    const auto rep = lab::run_experiment(cfg);
    const std::string line = lab::to_json(rep).dump();
    std::cout << line << '\n';
    if (jsonl_file) jsonl_file << line << '\n';
    if (csv_file) csv_file << lab::to_csv_row(rep) << '\n';
    std::cerr << (rep.pass ? "PASS " : "FAIL ") << rep.label << ' ' << rep.numerator << '/' << rep.denominator;
    if (rep.bound) std::cerr << " upper=" << rep.ci_upper << " bound=" << *rep.bound;
    std::cerr << '\n';
    all_pass = all_pass && rep.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acprg: decision trees, witnesses, switching experiments and composed PRGs for AC0"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "JSON file supplying defaults for the subcommand's options");

  // dt
  auto* dt = app.add_subcommand("dt", "exact decision-tree depth and an optimal tree");
  std::string dt_dnf, dt_cnf, dt_circuit, dt_rho;
  auto* o_dt_dnf = dt->add_option("--dnf", dt_dnf, "DNF file");
  auto* o_dt_cnf = dt->add_option("--cnf", dt_cnf, "CNF file");
  auto* o_dt_circ = dt->add_option("--circuit", dt_circuit, "ac0 s-expression file");
  auto* o_dt_rho = dt->add_option("--restriction", dt_rho, "restriction over {0,1,*} (DNF only)");

  // cdt
  auto* cdt = app.add_subcommand("cdt", "canonical decision tree depth and transcript");
  std::string cdt_dnf, cdt_rho, cdt_alpha;
  auto* o_cdt_dnf = cdt->add_option("--dnf", cdt_dnf, "DNF file");
  auto* o_cdt_rho = cdt->add_option("--restriction", cdt_rho, "restriction");
  auto* o_cdt_alpha = cdt->add_option("--alpha", cdt_alpha, "answers for a transcript, as a full assignment");

  // partial-dt
  auto* pdt = app.add_subcommand("partial-dt", "w-partial depth-t decision tree of a family");
  std::string pdt_family, pdt_rho;
  int pdt_w = 1, pdt_t = 1;
  bool pdt_cert = false;
  auto* o_pdt_family = pdt->add_option("--family", pdt_family, "file of dnf blocks");
  auto* o_pdt_rho = pdt->add_option("--restriction", pdt_rho, "restriction");
  auto* o_pdt_w = pdt->add_option("--w", pdt_w, "completion depth w");
  auto* o_pdt_t = pdt->add_option("--t", pdt_t, "common tree depth t");
  pdt->add_flag("--certificate", pdt_cert, "print a certificate when one exists");

  // witness-search
  auto* ws = app.add_subcommand("witness-search", "run the (global) witness searcher on an advice string");
  std::string ws_dnf, ws_family, ws_rho, ws_witness, ws_advice;
  auto* o_ws_dnf = ws->add_option("--dnf", ws_dnf, "DNF file (single-formula searcher)");
  auto* o_ws_family = ws->add_option("--family", ws_family, "family file (global searcher)");
  auto* o_ws_rho = ws->add_option("--restriction", ws_rho, "restriction");
  auto* o_ws_witness = ws->add_option("--witness", ws_witness, "partial witness JSON file");
  auto* o_ws_advice = ws->add_option("--advice", ws_advice, "advice y as 01 string or 0x-prefixed hex");

  // refute
  auto* ref = app.add_subcommand("refute", "powerful (w,t)-refutation when no partial tree exists");
  std::string ref_family, ref_rho;
  int ref_w = 1, ref_t = 1;
  auto* o_ref_family = ref->add_option("--family", ref_family, "family file");
  auto* o_ref_rho = ref->add_option("--restriction", ref_rho, "restriction");
  auto* o_ref_w = ref->add_option("--w", ref_w, "w");
  auto* o_ref_t = ref->add_option("--t", ref_t, "t");

  // gen
  auto* gen = app.add_subcommand("gen", "expand seeds with a generator descriptor");
  std::string gen_desc;
  std::vector<std::string> gen_seeds;
  std::size_t gen_n = 0, gen_random = 0;
  std::uint64_t gen_rng_seed = 1;
  auto* o_gen_desc = gen->add_option("--generator", gen_desc, "generator descriptor JSON file");
  auto* o_gen_n = gen->add_option("--n", gen_n, "output length when the descriptor omits it");
  gen->add_option("--seed", gen_seeds, "hex seed (repeatable)");
  auto* o_gen_random = gen->add_option("--random", gen_random, "expand this many pseudo-random seeds");
  auto* o_gen_rng = gen->add_option("--rng-seed", gen_rng_seed, "experiment RNG seed for --random");

  // experiments
  std::string exp_jsonl, exp_csv;
  std::optional<std::uint64_t> exp_samples, exp_seed;
  std::vector<CLI::App*> experiments;
  for (const char* name : {"fool", "switch", "multi-switch"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment from --config");
    sub->add_option("--jsonl", exp_jsonl, "also write the JSON report here");
    sub->add_option("--csv", exp_csv, "write a CSV summary here");
    sub->add_option("--samples", exp_samples, "override the sample count");
    sub->add_option("--seed", exp_seed, "override the RNG seed");
    experiments.push_back(sub);
  }
  auto* report = app.add_subcommand("report", "run every experiment listed in --config");
  report->add_option("--jsonl", exp_jsonl, "also write JSON lines here");
  report->add_option("--csv", exp_csv, "write a CSV summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    common.load();
    const json& cfg = common.config;

    if (*dt) {
      common.fill(o_dt_dnf, "dnf", dt_dnf);
      common.fill(o_dt_cnf, "cnf", dt_cnf);
      common.fill(o_dt_circ, "circuit", dt_circuit);
      common.fill(o_dt_rho, "restriction", dt_rho);
      DtOracle& oracle = thread_dt_oracle();
      json out{{"command", "dt"}};
      if (!dt_dnf.empty()) {
        const DnfFormula f = parse_dnf(read_file(dt_dnf));
        const Restriction rho = restriction_arg(dt_rho, f.dimension());
        out["dt"] = oracle.depth(f, rho);
        out["tree"] = oracle.optimal_tree(f, rho).to_text();
      } else {
        TruthTable tt;
        if (!dt_cnf.empty())
          tt = TruthTable::of(parse_cnf(read_file(dt_cnf)));
        else if (!dt_circuit.empty())
          tt = TruthTable::of(parse_circuit(read_file(dt_circuit)));
        else
          throw MalformedInput("dt needs --dnf, --cnf or --circuit");
        out["dt"] = oracle.depth(tt);
        out["tree"] = oracle.optimal_tree(tt).to_text();
      }
      emit(out);
      return 0;
    }

    if (*cdt) {
      common.fill(o_cdt_dnf, "dnf", cdt_dnf);
      common.fill(o_cdt_rho, "restriction", cdt_rho);
      common.fill(o_cdt_alpha, "alpha", cdt_alpha);
      const DnfFormula f = parse_dnf(read_file(cdt_dnf));
      const Restriction rho = restriction_arg(cdt_rho, f.dimension());
      json out{{"command", "cdt"}, {"cdt", cdt_depth(f, rho)}, {"dt", dt_depth_exact(f, rho)}};
      if (!cdt_alpha.empty()) {
        const auto tr = canonical_dt_run(f, rho, Restriction::full(bits_arg(cdt_alpha, f.dimension())));
        out["transcript"] = to_json(tr);
      }
      emit(out);
      return 0;
    }

    if (*pdt) {
      common.fill(o_pdt_family, "family", pdt_family);
      common.fill(o_pdt_rho, "restriction", pdt_rho);
      common.fill(o_pdt_w, "w", pdt_w);
      common.fill(o_pdt_t, "t", pdt_t);
      const auto fam = family_arg(pdt_family);
      if (fam.empty()) throw MalformedInput("empty family");
      const Restriction rho = restriction_arg(pdt_rho, fam.front().dimension());
      PartialDtSolver solver(fam, rho, pdt_w);
      json out{{"command", "partial-dt"}, {"w", pdt_w}, {"t", pdt_t}, {"feasible", solver.feasible(pdt_t)}};
      if (pdt_cert && out["feasible"].get<bool>()) {
        const auto cert = solver.certificate(pdt_t);
        json leaves = json::array();
        for (const auto& leaf : cert->completions) {
          json trees = json::array();
          for (const auto& tree : leaf) trees.push_back(tree.to_text());
          leaves.push_back(trees);
        }
        out["certificate"] = {{"common", cert->common.to_text()}, {"completions", leaves},
                              {"valid", validate_certificate(fam, rho, *cert)}};
        emit(out);
        return out["certificate"]["valid"].get<bool>() ? 0 : 1;
      }
      emit(out);
      return 0;
    }

    if (*ws) {
      common.fill(o_ws_dnf, "dnf", ws_dnf);
      common.fill(o_ws_family, "family", ws_family);
      common.fill(o_ws_rho, "restriction", ws_rho);
      common.fill(o_ws_witness, "witness", ws_witness);
      common.fill(o_ws_advice, "advice", ws_advice);
      const json wj = json::parse(read_file(ws_witness));
      json out{{"command", "witness-search"}};
      bool ok;
      if (!ws_family.empty()) {
        const auto fam = family_arg(ws_family);
        const std::size_t n = fam.at(0).dimension();
        const auto res = global_witness_search(fam, restriction_arg(ws_rho, n), global_partial_witness_from_json(wj),
                                               bits_arg(ws_advice, n));
        ok = std::holds_alternative<GlobalWitness>(res);
        if (ok)
          out["witness"] = to_json(fam, std::get<GlobalWitness>(res));
        else
          out["error"] = {{"stage", std::get<SearchError>(res).stage}, {"reason", std::get<SearchError>(res).reason}};
      } else {
        const DnfFormula f = parse_dnf(read_file(ws_dnf));
        const auto res = witness_search(f, restriction_arg(ws_rho, f.dimension()), partial_witness_from_json(wj),
                                        bits_arg(ws_advice, f.dimension()));
        ok = std::holds_alternative<Witness>(res);
        if (ok)
          out["witness"] = to_json(f, std::get<Witness>(res));
        else
          out["error"] = {{"stage", std::get<SearchError>(res).stage}, {"reason", std::get<SearchError>(res).reason}};
      }
      out["status"] = ok ? "found" : "error";
      emit(out);
      return ok ? 0 : 1;
    }

    if (*ref) {
      common.fill(o_ref_family, "family", ref_family);
      common.fill(o_ref_rho, "restriction", ref_rho);
      common.fill(o_ref_w, "w", ref_w);
      common.fill(o_ref_t, "t", ref_t);
      const auto fam = family_arg(ref_family);
      if (fam.empty()) throw MalformedInput("empty family");
      const Restriction rho = restriction_arg(ref_rho, fam.front().dimension());
      const bool feasible = has_w_partial_depth_t_dt(fam, rho, ref_w, ref_t);
      json out{{"command", "refute"}, {"w", ref_w}, {"t", ref_t}, {"feasible", feasible}};
      bool consistent;
      if (auto r = find_powerful_refutation(fam, rho, ref_w, ref_t)) {
        const bool valid = is_powerful_refutation(fam, rho, r->z, r->beta, ref_w, ref_t);
        out["refutation"] = {{"z", r->z.to_string()},
                             {"beta", r->beta.to_string()},
                             {"guided", r->guided},
                             {"valid", valid},
                             {"run", to_json(r->record)}};
        consistent = !feasible && valid;
      } else {
        out["refutation"] = nullptr;
        consistent = feasible;
      }
      emit(out);
      return consistent ? 0 : 1;
    }

    if (*gen) {
      json desc;
      if (o_gen_desc->count())
        desc = json::parse(read_file(gen_desc));
      else if (cfg.contains("generator"))
        desc = cfg.at("generator");
      else
        throw MalformedInput("gen needs --generator or a config with \"generator\"");
      common.fill(o_gen_n, "n", gen_n);
      common.fill(o_gen_random, "random", gen_random);
      common.fill(o_gen_rng, "rng_seed", gen_rng_seed);
      if (gen_seeds.empty() && cfg.contains("seeds")) gen_seeds = cfg.at("seeds").get<std::vector<std::string>>();
      const GeneratorPtr g = generator_from_json(desc, gen_n ? std::optional<std::size_t>(gen_n) : std::nullopt);
      json head{{"command", "gen"}, {"generator", g->descriptor()}, {"seed_bits", g->seed_bits()},
                {"output_bits", g->output_bits()}};
      if (const auto* cg = dynamic_cast<const ComposedGenerator*>(g.get())) {
        head["layout"] = cg->layout();
        head["schedule"] = to_json(cg->schedule());
        head["accounting"] = to_json(cg->accounting());
      }
      emit(head);
      auto expand_one = [&](const BitVec& seed) {
        const BitVec out = g->expand(seed);
        emit({{"seed", seed.to_hex()}, {"output", out.to_hex()}, {"bits", out.to_string()}});
      };
      for (const auto& s : gen_seeds) expand_one(BitVec::from_hex(s.rfind("0x", 0) == 0 ? s.substr(2) : s, g->seed_bits()));
      for (std::size_t i = 0; i < gen_random; ++i) expand_one(lab::CounterRng(gen_rng_seed, i).bits(g->seed_bits()));
      return 0;
    }

    for (auto* sub : experiments) {
      if (!*sub) continue;
      if (cfg.empty()) throw MalformedInput(sub->get_name() + " needs --config");
      auto ec = lab::config_from_json(cfg);
      ec.kind = sub->get_name();
      if (exp_samples) ec.samples = *exp_samples;
      if (exp_seed) ec.seed = *exp_seed;
      if (exp_jsonl.empty() && !ec.output.empty()) exp_jsonl = ec.output + ".jsonl";
      if (exp_csv.empty() && !ec.output.empty()) exp_csv = ec.output + ".csv";
      return run_reports({ec}, exp_jsonl, exp_csv);
    }

    if (*report) {
      if (!cfg.contains("experiments")) throw MalformedInput("report needs a config with \"experiments\"");
      std::vector<lab::ExperimentConfig> cfgs;
      for (const auto& e : cfg.at("experiments")) cfgs.push_back(lab::config_from_json(e));
      const std::string base = cfg.value("output", std::string{});
      if (exp_jsonl.empty() && !base.empty()) exp_jsonl = base + ".jsonl";
      if (exp_csv.empty() && !base.empty()) exp_csv = base + ".csv";
      return run_reports(cfgs, exp_jsonl, exp_csv);
    }
  } catch (const std::exception& e) {
    emit({{"error", e.what()}});
    std::cerr << "acprg: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
