#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace minc {

/// A set of worlds of a fixed universe {0, ..., universe-1}, stored as a
/// bitset. Teams over the same universe are ordered by their bitset value
/// (world i contributes 2^i), which is the enumeration order used
/// throughout the workbench.
class Team {
public:
  Team() = default;
  explicit Team(std::size_t universe);

  static Team full(std::size_t universe);
  /// Team whose members are the set bits of `mask`; requires universe <= 64.
  static Team from_mask(std::size_t universe, std::uint64_t mask);
  static Team singleton(std::size_t universe, std::size_t world);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const noexcept;
  bool empty() const noexcept;

  bool contains(std::size_t world) const noexcept {
    return (words_[world >> 6] >> (world & 63)) & 1u;
  }
  void insert(std::size_t world) noexcept { words_[world >> 6] |= std::uint64_t{1} << (world & 63); }
  void erase(std::size_t world) noexcept { words_[world >> 6] &= ~(std::uint64_t{1} << (world & 63)); }

  bool subset_of(const Team& other) const noexcept;
  bool intersects(const Team& other) const noexcept;

  Team& operator|=(const Team& other) noexcept;
  Team& operator&=(const Team& other) noexcept;
  /// Set difference.
  Team& operator-=(const Team& other) noexcept;

  friend Team operator|(Team a, const Team& b) noexcept { return a |= b; }
  friend Team operator&(Team a, const Team& b) noexcept { return a &= b; }
  friend Team operator-(Team a, const Team& b) noexcept { return a -= b; }

  /// Complement within the universe.
  Team complement() const;

  /// Members in ascending order.
  std::vector<std::size_t> members() const;
  /// Smallest member; universe() when empty.
  std::size_t first() const noexcept;

  /// Bitset value; requires universe <= 64.
  std::uint64_t to_mask() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Team& a, const Team& b) noexcept;
  /// Orders by universe, then by bitset value.
  friend std::strong_ordering operator<=>(const Team& a, const Team& b) noexcept;

private:
  std::size_t universe_ = 0;
  boost::container::small_vector<std::uint64_t, 1> words_{0};
};

struct TeamHash {
  std::size_t operator()(const Team& t) const noexcept { return t.hash(); }
};

/// Calls `visit(subset)` for every subset of `team` in ascending bitset
/// order. Stops early (and returns true) once `visit` returns true.
/// Requires team.count() <= 62.
bool for_each_subset(const Team& team, const std::function<bool(const Team&)>& visit);

} // namespace minc
