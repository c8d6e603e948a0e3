#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "acprg/bits.hpp"
#include "acprg/formula.hpp"

namespace acprg {

enum class GateKind : std::uint8_t { Input, And, Or };

struct Gate {
  GateKind kind = GateKind::Input;
  Literal literal{};                  // Input gates only
  std::vector<std::uint32_t> inputs;  // And/Or gates only; indices of earlier gates
};

/// Layered AND/OR circuit with negations absorbed into input literals. Gates are stored
/// in topological order; the last gate added with set_output() is the output.
class Ac0Circuit {
public:
  Ac0Circuit() = default;
  explicit Ac0Circuit(std::size_t n) : n_(n) {}

  static Ac0Circuit from_dnf(const DnfFormula& f);
  static Ac0Circuit from_cnf(const CnfFormula& h);

  std::uint32_t add_input(Literal literal);
  /// Throws MalformedInput if an input index is not an earlier gate or if two
  /// adjacent layers share a gate kind.
  std::uint32_t add_gate(GateKind kind, std::vector<std::uint32_t> inputs);
  void set_output(std::uint32_t gate);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t gate_count() const noexcept { return gates_.size(); }
  const Gate& gate(std::uint32_t id) const noexcept { return gates_[id]; }
  std::uint32_t output() const noexcept { return output_; }

  /// size counts wires after treating non-output fan-in-1 gates as plain wires; the
  /// output wire is not counted. Matches DnfFormula::measures() on converted formulas.
  Measures measures() const;

  bool eval(const BitVec& x) const;
  std::uint64_t eval_lanes(std::span<const std::uint64_t> lanes) const;

private:
  std::size_t n_ = 0;
  std::vector<Gate> gates_;
  std::uint32_t output_ = 0;
  bool has_output_ = false;
};

}  // namespace acprg
