#pragma once

#include "exotic/words.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace exotic {

/// Dense indexing of the ball B_R in canonical word order. Index 0 is the identity;
/// sphere S_k occupies [sphere_begin(k), sphere_begin(k + 1)).
///
/// Ranks are mixed-radix: the first letter is a digit in [0, alphabet), every later
/// letter is a digit in [0, branching) relative to its predecessor, so the canonical
/// lexicographic order within a sphere coincides with the rank order.
class BallIndex {
 public:
  /// Throws ResourceLimitError if |B_radius| does not fit in 32-bit table entries.
  BallIndex(GroupPresentation g, std::size_t radius);

  const GroupPresentation& presentation() const noexcept { return pres_; }
  std::size_t radius() const noexcept { return radius_; }
  /// |B_radius|.
  std::size_t size() const noexcept { return starts_.back(); }
  std::size_t ball_size(std::size_t k) const noexcept { return starts_[std::min(k, radius_) + 1]; }
  std::size_t sphere_begin(std::size_t k) const noexcept { return starts_[std::min(k, radius_ + 1)]; }
  std::size_t length_at(std::size_t index) const noexcept;

  /// Index of a reduced word, or size() when the word is longer than radius().
  std::size_t index_of(std::span<const Letter> word) const noexcept;
  std::size_t index_of(const GroupElement& u) const noexcept { return index_of(u.letters()); }
  Word word_at(std::size_t index) const;
  GroupElement element_at(std::size_t index) const { return GroupElement::from_reduced(word_at(index), pres_); }

  /// table[i] = index of (y · s_i), or size() when that product leaves the ball.
  std::vector<std::uint32_t> left_multiplication_table(Letter y) const;

 private:
  GroupPresentation pres_;
  std::size_t radius_;
  std::vector<std::size_t> starts_;  // starts_[k] = |B_{k-1}|, size radius_ + 2
  std::vector<std::size_t> powers_;  // branching^j
};

}  // namespace exotic
