#include "exotic/ball.hpp"

#include "exotic/error.hpp"
#include "exotic/parallel.hpp"

#include <algorithm>
#include <limits>

namespace exotic {

namespace {

// Gather kernels use signed 32-bit lane indices.
constexpr std::size_t kMaxBallEntries = static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()) - 1;

}  // namespace

BallIndex::BallIndex(GroupPresentation g, std::size_t radius) : pres_(g), radius_(radius) {
  const std::size_t alphabet = g.alphabet_size();
  const std::size_t branching = g.branching();
  starts_.assign(radius + 2, 0);
  powers_.assign(radius + 1, 1);
  for (std::size_t j = 1; j <= radius; ++j) powers_[j] = powers_[j - 1] * branching;
  std::size_t sphere = 1;
  for (std::size_t k = 0; k <= radius; ++k) {
    if (k == 1) {
      sphere = alphabet;
    } else if (k > 1) {
      if (branching != 0 && sphere > kMaxBallEntries / branching) {
        throw ResourceLimitError("ball of radius " + std::to_string(radius) + " in " + g.descriptor() +
                                     " exceeds the dense index limit",
                                 static_cast<double>(sphere) * static_cast<double>(branching),
                                 static_cast<double>(kMaxBallEntries), "--radius");
      }
      sphere *= branching;
    }
    starts_[k + 1] = starts_[k] + sphere;
    if (starts_[k + 1] > kMaxBallEntries) {
      throw ResourceLimitError("ball of radius " + std::to_string(radius) + " in " + g.descriptor() +
                                   " exceeds the dense index limit",
                               static_cast<double>(starts_[k + 1]), static_cast<double>(kMaxBallEntries), "--radius");
    }
  }
}

std::size_t BallIndex::length_at(std::size_t index) const noexcept {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), index);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

std::size_t BallIndex::index_of(std::span<const Letter> word) const noexcept {
  const std::size_t k = word.size();
  if (k > radius_) return size();
  if (k == 0) return 0;
  std::size_t rank = static_cast<std::size_t>(word[0]) * powers_[k - 1];
  for (std::size_t j = 1; j < k; ++j) rank += pres_.relative_digit(word[j - 1], word[j]) * powers_[k - 1 - j];
  return starts_[k] + rank;
}

Word BallIndex::word_at(std::size_t index) const {
  Word w;
  const std::size_t k = length_at(index);
  if (k == 0) return w;
  std::size_t rank = index - starts_[k];
  w.reserve(k);
  w.push_back(static_cast<Letter>(rank / powers_[k - 1]));
  rank %= powers_[k - 1];
  for (std::size_t j = 1; j < k; ++j) {
    const std::size_t p = powers_[k - 1 - j];
    w.push_back(pres_.from_relative_digit(w.back(), rank / p));
    rank %= p;
  }
  return w;
}

std::vector<std::uint32_t> BallIndex::left_multiplication_table(Letter y) const {
  std::vector<std::uint32_t> table(size());
  const auto sentinel = static_cast<std::uint32_t>(size());
  parallel_chunks(size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Word w = word_at(i);
      prepend_letter(w, y, pres_);
      table[i] = w.size() > radius_ ? sentinel : static_cast<std::uint32_t>(index_of(std::span<const Letter>(w.data(), w.size())));
    }
  });
  return table;
}

}  // namespace exotic
