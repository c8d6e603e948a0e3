#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "acprg/bits.hpp"

namespace acprg {

enum class Cell : std::uint8_t { Zero, One, Star };

/// A subset of [n] (0-based), stored as a membership bit vector.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::size_t n) : members_(n) {}
  IndexSet(std::size_t n, std::initializer_list<std::size_t> indices);
  static IndexSet from_indices(std::size_t n, const std::vector<std::size_t>& indices);
  static IndexSet full(std::size_t n) { return IndexSet(BitVec(n, true)); }
  static IndexSet from_bits(BitVec members) { return IndexSet(std::move(members)); }

  std::size_t dimension() const noexcept { return members_.size(); }
  std::size_t size() const noexcept { return members_.count(); }
  bool contains(std::size_t i) const noexcept { return i < members_.size() && members_.test(i); }
  void insert(std::size_t i);
  void erase(std::size_t i);

  IndexSet complement() const { return IndexSet(~members_); }
  std::vector<std::size_t> indices() const { return members_.ones(); }
  const BitVec& bits() const noexcept { return members_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
  explicit IndexSet(BitVec members) : members_(std::move(members)) {}
  BitVec members_;
};

/// A partial assignment over {0,1,*}^n as two parallel bit vectors: which
/// coordinates are fixed and their values. Value bits of starred cells are zero.
class Restriction {
public:
  Restriction() = default;
  /// All-star restriction of dimension n.
  explicit Restriction(std::size_t n) : fixed_(n), values_(n) {}

  static Restriction from_string(std::string_view cells);
  /// A restriction with every coordinate fixed.
  static Restriction full(const BitVec& assignment);
  static Restriction from_parts(BitVec fixed, BitVec values);

  std::size_t dimension() const noexcept { return fixed_.size(); }

  Cell cell(std::size_t i) const noexcept {
    return fixed_.test(i) ? (values_.test(i) ? Cell::One : Cell::Zero) : Cell::Star;
  }
  bool is_fixed(std::size_t i) const noexcept { return fixed_.test(i); }
  bool is_star(std::size_t i) const noexcept { return !fixed_.test(i); }
  /// Value of a fixed cell; meaningless for stars.
  bool value(std::size_t i) const noexcept { return values_.test(i); }

  void fix(std::size_t i, bool value);
  void unfix(std::size_t i);

  const BitVec& fixed_mask() const noexcept { return fixed_; }
  const BitVec& values() const noexcept { return values_; }

  std::size_t star_count() const noexcept { return dimension() - fixed_.count(); }
  std::vector<std::size_t> stars() const { return (~fixed_).ones(); }
  IndexSet star_set() const;
  bool is_total() const noexcept { return star_count() == 0; }

  /// The fixed values as a full assignment; throws MalformedInput if any cell is a star.
  BitVec assignment() const;

  std::string to_string() const;

  friend bool operator==(const Restriction&, const Restriction&) = default;
  std::size_t hash() const noexcept { return fixed_.hash() * 31 + values_.hash(); }

private:
  BitVec fixed_;
  BitVec values_;
};

/// rho o sigma: the left operand wins wherever it is fixed.
Restriction compose(const Restriction& rho, const Restriction& sigma);

/// Lambda[rho, sigma]: sigma on coordinates in lambda, rho elsewhere.
Restriction merge_by_set(const IndexSet& lambda, const Restriction& rho, const Restriction& sigma);

/// Keeps the cells of rho inside `keep` and stars out everything else.
Restriction mask(const Restriction& rho, const IndexSet& keep);

}  // namespace acprg
