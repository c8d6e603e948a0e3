#include "acprg/restriction.hpp"

#include "acprg/error.hpp"

namespace acprg {

IndexSet::IndexSet(std::size_t n, std::initializer_list<std::size_t> indices) : members_(n) {
  for (auto i : indices) insert(i);
}

IndexSet IndexSet::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
  IndexSet s(n);
  for (auto i : indices) s.insert(i);
  return s;
}

void IndexSet::insert(std::size_t i) {
  if (i >= members_.size()) throw std::out_of_range("index " + std::to_string(i) + " outside [n]");
  members_.set(i);
}

void IndexSet::erase(std::size_t i) {
  if (i >= members_.size()) throw std::out_of_range("index " + std::to_string(i) + " outside [n]");
  members_.set(i, false);
}

Restriction Restriction::from_string(std::string_view cells) {
  Restriction r(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    switch (cells[i]) {
      case '0': r.fix(i, false); break;
      case '1': r.fix(i, true); break;
      case '*': break;
      default: throw MalformedInput("restriction strings are over {0,1,*}");
    }
  }
  return r;
}

Restriction Restriction::full(const BitVec& assignment) {
  return from_parts(BitVec(assignment.size(), true), assignment);
}

Restriction Restriction::from_parts(BitVec fixed, BitVec values) {
  if (fixed.size() != values.size()) throw DimensionMismatch("fixed mask and values differ in length");
  Restriction r;
  values &= fixed;
  r.fixed_ = std::move(fixed);
  r.values_ = std::move(values);
  return r;
}

void Restriction::fix(std::size_t i, bool value) {
  if (i >= dimension()) throw std::out_of_range("restriction index out of range");
  fixed_.set(i);
  values_.set(i, value);
}

void Restriction::unfix(std::size_t i) {
  if (i >= dimension()) throw std::out_of_range("restriction index out of range");
  fixed_.set(i, false);
  values_.set(i, false);
}

IndexSet Restriction::star_set() const { return IndexSet::from_indices(dimension(), stars()); }

BitVec Restriction::assignment() const {
  if (!is_total()) throw MalformedInput("assignment has starred coordinates");
  return values_;
}

std::string Restriction::to_string() const {
  std::string s(dimension(), '*');
  for (std::size_t i = 0; i < dimension(); ++i)
    if (fixed_.test(i)) s[i] = values_.test(i) ? '1' : '0';
  return s;
}

Restriction compose(const Restriction& rho, const Restriction& sigma) {
  if (rho.dimension() != sigma.dimension()) throw DimensionMismatch("compose: dimensions differ");
  // sigma contributes only where rho is a star.
  BitVec take_sigma = sigma.fixed_mask();
  take_sigma.and_not(rho.fixed_mask());
  return Restriction::from_parts(rho.fixed_mask() | sigma.fixed_mask(),
                                 rho.values() | (sigma.values() & take_sigma));
}

Restriction merge_by_set(const IndexSet& lambda, const Restriction& rho, const Restriction& sigma) {
  if (rho.dimension() != sigma.dimension() || lambda.dimension() != rho.dimension())
    throw DimensionMismatch("merge_by_set: dimensions differ");
  const BitVec& in = lambda.bits();
  const BitVec out = ~in;
  return Restriction::from_parts((rho.fixed_mask() & out) | (sigma.fixed_mask() & in),
                                 (rho.values() & out) | (sigma.values() & in));
}

Restriction mask(const Restriction& rho, const IndexSet& keep) {
  if (keep.dimension() != rho.dimension()) throw DimensionMismatch("mask: dimensions differ");
  return Restriction::from_parts(rho.fixed_mask() & keep.bits(), rho.values() & keep.bits());
}

}  // namespace acprg
