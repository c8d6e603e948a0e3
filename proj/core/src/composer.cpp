#include "acprg/composer.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "acprg/error.hpp"
#include "acprg/generator_config.hpp"

namespace acprg {

namespace {

constexpr double kMaxCount = 4.0e18;

std::size_t checked_add(std::size_t a, std::size_t b) {
  std::size_t out;
  if (__builtin_add_overflow(a, b, &out)) throw CapExceeded("seed accounting overflows 64 bits");
  return out;
}

std::size_t checked_mul(std::size_t a, std::size_t b) {
  std::size_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("seed accounting overflows 64 bits");
  return out;
}

std::size_t to_count(double v, const char* what) {
  if (!(v >= 0.0) || v > kMaxCount) throw CapExceeded(std::string(what) + " overflows the accounting width");
  return static_cast<std::size_t>(v);
}

void validate(const GeneratorSpec& spec) {
  if (spec.depth < 2) throw MalformedInput("generator depth must be at least 2");
  if (spec.n == 0) throw MalformedInput("generator dimension must be positive");
  if (spec.m < spec.n) throw MalformedInput("size budget m must be at least n");
  if (spec.k == 0) throw MalformedInput("bottom fan-in k must be positive");
  if (!(spec.log2_eps < 0.0)) throw MalformedInput("target error must lie in (0, 1)");
}

}  // namespace

Schedule derive_schedule(const GeneratorSpec& spec) {
  validate(spec);
  Schedule s;
  if (spec.depth == 2) {
    s.delegate_to_base = true;
    return s;
  }
  const auto& o = spec.overrides;
  const double log2_m = std::log2(static_cast<double>(spec.m));
  s.w_raw = o.w ? *o.w : checked_mul(40, spec.k);
  if (s.w_raw == 0) throw MalformedInput("bucket count must be positive");
  s.w = std::bit_ceil(s.w_raw);
  s.t = o.t ? *o.t : to_count(std::ceil(80.0 * (log2_m - spec.log2_eps)), "t");
  if (s.t == 0) throw MalformedInput("t must be positive");
  s.hash_independence = o.hash_independence ? *o.hash_independence : checked_mul(2, s.t);
  if (s.hash_independence == 0) throw MalformedInput("hash independence must be positive");
  s.hash_independence_used = std::min(s.hash_independence, spec.n);
  s.log2_eps_child = o.log2_eps_child ? *o.log2_eps_child
                                      : spec.log2_eps - std::log2(static_cast<double>(s.w)) - static_cast<double>(s.t + 1);
  s.log2_eps_noise = o.log2_eps_noise ? *o.log2_eps_noise
                                      : spec.log2_eps - 2.0 * static_cast<double>(s.t) * std::log2(24.0 * spec.m);
  if (spec.child) {
    s.child = *spec.child;
    if (s.child.depth != spec.depth - 1 || s.child.n != spec.n)
      throw MalformedInput("explicit child spec must have depth d-1 and the same n");
  } else {
    s.child.depth = spec.depth - 1;
    s.child.m = checked_mul(2, checked_mul(spec.m, spec.m));
    s.child.n = spec.n;
    s.child.k = std::max<std::size_t>(1, to_count(std::ceil(log2_m), "child width"));
    s.child.log2_eps = s.log2_eps_child;
    s.child.base = spec.base;
    s.child.noise = spec.noise;
  }
  return s;
}

double closed_form_seed_bound(const GeneratorSpec& spec, double constant) {
  const double lm = std::max(1.0, std::log2(static_cast<double>(spec.m)));
  const double llm = std::max(1.0, std::log2(lm));
  return constant * (lm * lm + static_cast<double>(spec.k) * std::pow(lm, static_cast<double>(spec.depth) - 2.0)) *
         (lm - spec.log2_eps) * llm;
}

GeneratorPtr leaf_generator(const nlohmann::json& descriptor, std::size_t n, std::uint64_t m, double log2_eps) {
  nlohmann::json d = descriptor.is_object() && !descriptor.empty() ? descriptor : nlohmann::json{{"type", "kwise"}};
  const double want = std::ceil(std::log2(static_cast<double>(m)) - log2_eps);
  const std::size_t k = want >= static_cast<double>(n) ? n : std::max<std::size_t>(1, static_cast<std::size_t>(want));
  return generator_from_json(d, n, k);
}

ComposedGenerator::ComposedGenerator(GeneratorSpec spec) : spec_(std::move(spec)), schedule_(derive_schedule(spec_)) {
  if (schedule_.delegate_to_base) throw MalformedInput("depth-2 specs delegate to the base generator");
  noise_ = leaf_generator(spec_.noise, spec_.n, spec_.m, schedule_.log2_eps_noise);
  child_ = make_generator(schedule_.child);
  accounting_.hash = KwiseHash::seed_bits(spec_.n, schedule_.w, schedule_.hash_independence_used);
  accounting_.noise = noise_->seed_bits();
  accounting_.w = schedule_.w;
  accounting_.child_each = child_->seed_bits();
  accounting_.children = checked_mul(schedule_.w, accounting_.child_each);
  accounting_.total = checked_add(checked_add(accounting_.hash, accounting_.noise), accounting_.children);
  accounting_.closed_form = closed_form_seed_bound(spec_, kClosedFormConstant);
}

FoolingClaim ComposedGenerator::claim() const {
  return {"depth-" + std::to_string(spec_.depth) + " circuits with bottom width " + std::to_string(spec_.k),
          static_cast<std::size_t>(spec_.m), std::exp2(spec_.log2_eps)};
}

nlohmann::json ComposedGenerator::descriptor() const {
  auto j = to_json(spec_);
  j["type"] = "composed";
  return j;
}

KwiseHash ComposedGenerator::hash_at(const BitVec& seed, std::size_t offset) const {
  return KwiseHash::sample(seed, offset + hash_offset(), spec_.n, schedule_.w, schedule_.hash_independence_used);
}

BitVec ComposedGenerator::assemble(const BitVec& seed, std::size_t offset, std::size_t hybrid,
                                   const BitVec* tape) const {
  const std::size_t n = spec_.n;
  const auto bucket = hash_at(seed, offset).evaluate_all();
  BitVec out = noise_->expand_at(seed, offset + noise_offset());
  std::vector<BitVec> x(schedule_.w);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t c = bucket[j];
    if (x[c].empty()) x[c] = c < hybrid ? tape->slice(c * n, n) : child_->expand_at(seed, offset + child_offset(c));
    if (x[c].test(j)) out.flip(j);
  }
  return out;
}

BitVec ComposedGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  return assemble(seed, offset, 0, nullptr);
}

BitVec ComposedGenerator::hybrid_generate(std::size_t i, const BitVec& seed, const BitVec& tape) const {
  if (i > schedule_.w) throw MalformedInput("hybrid index exceeds bucket count");
  if (seed.size() != seed_bits()) throw DimensionMismatch("seed length does not match the layout");
  if (tape.size() != i * spec_.n) throw DimensionMismatch("tape must hold i*n bits");
  return assemble(seed, 0, i, &tape);
}

nlohmann::json ComposedGenerator::layout() const {
  nlohmann::json child;
  if (const auto* c = dynamic_cast<const ComposedGenerator*>(child_.get()))
    child = c->layout();
  else
    child = {{"total", child_->seed_bits()}, {"generator", child_->descriptor()}};
  return {{"total", accounting_.total},
          {"hash",
           {{"offset", hash_offset()},
            {"bits", accounting_.hash},
            {"independence", schedule_.hash_independence_used},
            {"range", schedule_.w},
            {"field_degree", field_degree_for(spec_.n, schedule_.w)}}},
          {"noise", {{"offset", noise_offset()}, {"bits", accounting_.noise}, {"generator", noise_->descriptor()}}},
          {"children",
           {{"offset", child_offset(0)}, {"count", schedule_.w}, {"bits_each", accounting_.child_each}, {"child", child}}}};
}

HybridGenerator::HybridGenerator(std::shared_ptr<const ComposedGenerator> g, std::size_t i) : g_(std::move(g)), i_(i) {
  if (i_ > g_->buckets()) throw MalformedInput("hybrid index exceeds bucket count");
}

nlohmann::json HybridGenerator::descriptor() const {
  return {{"type", "hybrid"}, {"index", i_}, {"generator", g_->descriptor()}};
}

BitVec HybridGenerator::do_expand(const BitVec& seed, std::size_t offset) const {
  const BitVec own = seed.slice(offset, g_->seed_bits());
  const BitVec tape = seed.slice(offset + g_->seed_bits(), i_ * g_->output_bits());
  return g_->hybrid_generate(i_, own, tape);
}

GeneratorPtr make_generator(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.depth == 2) return leaf_generator(spec.base, spec.n, spec.m, spec.log2_eps);
  return std::make_shared<ComposedGenerator>(spec);
}

SeedAccounting seed_length(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.depth > 2) return ComposedGenerator(spec).accounting();
  SeedAccounting a;
  a.total = make_generator(spec)->seed_bits();
  a.closed_form = closed_form_seed_bound(spec, kClosedFormConstant);
  return a;
}

nlohmann::json to_json(const GeneratorSpec& spec) {
  nlohmann::json j{{"depth", spec.depth}, {"m", spec.m}, {"n", spec.n}, {"k", spec.k}, {"log2_eps", spec.log2_eps}};
  if (spec.overrides.any()) {
    nlohmann::json o = nlohmann::json::object();
    if (spec.overrides.w) o["w"] = *spec.overrides.w;
    if (spec.overrides.t) o["t"] = *spec.overrides.t;
    if (spec.overrides.hash_independence) o["hash_independence"] = *spec.overrides.hash_independence;
    if (spec.overrides.log2_eps_child) o["log2_eps_child"] = *spec.overrides.log2_eps_child;
    if (spec.overrides.log2_eps_noise) o["log2_eps_noise"] = *spec.overrides.log2_eps_noise;
    j["overrides"] = o;
  }
  if (!spec.base.empty()) j["base"] = spec.base;
  if (!spec.noise.empty()) j["noise"] = spec.noise;
  if (spec.child) j["child"] = to_json(*spec.child);
  return j;
}

GeneratorSpec spec_from_json(const nlohmann::json& j) {
  GeneratorSpec s;
  try {
    s.depth = j.at("depth").get<unsigned>();
    s.n = j.at("n").get<std::size_t>();
    s.m = j.contains("m") ? j.at("m").get<std::uint64_t>() : s.n;
    s.k = j.value("k", std::size_t{1});
    if (j.contains("log2_eps"))
      s.log2_eps = j.at("log2_eps").get<double>();
    else if (j.contains("eps"))
      s.log2_eps = std::log2(j.at("eps").get<double>());
    else
      throw MalformedInput("generator spec needs \"eps\" or \"log2_eps\"");
    if (j.contains("overrides")) {
      const auto& o = j.at("overrides");
      if (o.contains("w")) s.overrides.w = o.at("w").get<std::size_t>();
      if (o.contains("t")) s.overrides.t = o.at("t").get<std::size_t>();
      if (o.contains("hash_independence")) s.overrides.hash_independence = o.at("hash_independence").get<std::size_t>();
      if (o.contains("log2_eps_child")) s.overrides.log2_eps_child = o.at("log2_eps_child").get<double>();
      if (o.contains("log2_eps_noise")) s.overrides.log2_eps_noise = o.at("log2_eps_noise").get<double>();
    }
    if (j.contains("base")) s.base = j.at("base");
    if (j.contains("noise")) s.noise = j.at("noise");
    if (j.contains("child")) {
      auto c = j.at("child");
      if (!c.contains("n")) c["n"] = s.n;
      s.child = std::make_shared<GeneratorSpec>(spec_from_json(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("generator spec: ") + e.what());
  }
  validate(s);
  return s;
}

nlohmann::json to_json(const Schedule& s) {
  if (s.delegate_to_base) return {{"delegate_to_base", true}};
  return {{"w_raw", s.w_raw},
          {"w", s.w},
          {"t", s.t},
          {"hash_independence", s.hash_independence},
          {"hash_independence_used", s.hash_independence_used},
          {"log2_eps_child", s.log2_eps_child},
          {"log2_eps_noise", s.log2_eps_noise},
          {"child", to_json(s.child)}};
}

nlohmann::json to_json(const SeedAccounting& a) {
  return {{"hash", a.hash},         {"noise", a.noise}, {"w", a.w},
          {"child_each", a.child_each}, {"children", a.children}, {"total", a.total},
          {"closed_form", a.closed_form}};
}

}  // namespace acprg
