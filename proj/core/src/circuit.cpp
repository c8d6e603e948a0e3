#include "acprg/circuit.hpp"

#include <algorithm>
#include <string>

#include "acprg/error.hpp"

namespace acprg {

Ac0Circuit Ac0Circuit::from_dnf(const DnfFormula& f) {
  Ac0Circuit c(f.dimension());
  std::vector<std::uint32_t> top;
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> ins;
    for (const auto& l : t.literals()) ins.push_back(c.add_input(l));
    top.push_back(c.add_gate(GateKind::And, std::move(ins)));
  }
  c.set_output(c.add_gate(GateKind::Or, std::move(top)));
  return c;
}

Ac0Circuit Ac0Circuit::from_cnf(const CnfFormula& h) {
  Ac0Circuit c(h.dimension());
  std::vector<std::uint32_t> top;
  for (const auto& cl : h.clauses()) {
    std::vector<std::uint32_t> ins;
    for (const auto& l : cl.literals()) ins.push_back(c.add_input(l));
    top.push_back(c.add_gate(GateKind::Or, std::move(ins)));
  }
  c.set_output(c.add_gate(GateKind::And, std::move(top)));
  return c;
}

std::uint32_t Ac0Circuit::add_input(Literal literal) {
  if (literal.var >= n_) throw MalformedInput("input variable " + std::to_string(literal.var + 1) + " exceeds n");
  gates_.push_back(Gate{GateKind::Input, literal, {}});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t Ac0Circuit::add_gate(GateKind kind, std::vector<std::uint32_t> inputs) {
  if (kind == GateKind::Input) throw MalformedInput("use add_input for literals");
  for (auto i : inputs) {
    if (i >= gates_.size()) throw MalformedInput("gate input refers to a later gate");
    if (gates_[i].kind == kind) throw MalformedInput("adjacent layers must alternate between AND and OR");
  }
  gates_.push_back(Gate{kind, {}, std::move(inputs)});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

void Ac0Circuit::set_output(std::uint32_t gate) {
  if (gate >= gates_.size()) throw MalformedInput("output gate out of range");
  output_ = gate;
  has_output_ = true;
}

Measures Ac0Circuit::measures() const {
  if (!has_output_) throw MalformedInput("circuit has no output");
  Measures m;
  std::vector<std::size_t> depth(gates_.size(), 0);
  std::vector<bool> reach(gates_.size(), false);
  reach[output_] = true;
  for (std::size_t g = gates_.size(); g-- > 0;) {
    if (!reach[g]) continue;
    for (auto i : gates_[g].inputs) reach[i] = true;
  }
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const Gate& gate = gates_[g];
    if (gate.kind == GateKind::Input || !reach[g]) continue;
    bool bottom = true;
    for (auto i : gate.inputs) {
      depth[g] = std::max(depth[g], depth[i]);
      if (gates_[i].kind != GateKind::Input) bottom = false;
    }
    depth[g] += 1;
    if (bottom) m.width = std::max(m.width, gate.inputs.size());
    const bool collapsed = gate.inputs.size() == 1 && g != output_;
    if (!collapsed) m.size_wires += gate.inputs.size();
  }
  if (gates_[output_].kind == GateKind::Input) m.size_wires = 1;
  m.depth = depth[output_];
  return m;
}

std::uint64_t Ac0Circuit::eval_lanes(std::span<const std::uint64_t> lanes) const {
  if (!has_output_) throw MalformedInput("circuit has no output");
  if (lanes.size() < n_) throw DimensionMismatch("fewer lanes than variables");
  std::vector<std::uint64_t> v(output_ + 1);
  for (std::uint32_t g = 0; g <= output_; ++g) {
    const Gate& gate = gates_[g];
    switch (gate.kind) {
      case GateKind::Input: v[g] = gate.literal.eval_lanes(lanes[gate.literal.var]); break;
      case GateKind::And: {
        std::uint64_t acc = ~std::uint64_t{0};
        for (auto i : gate.inputs) acc &= v[i];
        v[g] = acc;
        break;
      }
      case GateKind::Or: {
        std::uint64_t acc = 0;
        for (auto i : gate.inputs) acc |= v[i];
        v[g] = acc;
        break;
      }
    }
  }
  return v[output_];
}

bool Ac0Circuit::eval(const BitVec& x) const {
  if (x.size() != n_) throw DimensionMismatch("assignment length differs from circuit dimension");
  std::vector<std::uint64_t> lanes(n_);
  for (std::size_t i = 0; i < n_; ++i) lanes[i] = x.test(i) ? ~std::uint64_t{0} : 0;
  return eval_lanes(lanes) & 1u;
}

}  // namespace acprg
