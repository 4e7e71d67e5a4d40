#pragma once

// Reduced words in free groups F_d and free products (Z/mZ)^{*d}.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace exotic {

using Letter = std::uint16_t;
using Word = boost::container::small_vector<Letter, 14>;

enum class Family : std::uint8_t { Free, CyclicFreeProduct };

inline constexpr int kMaxRank = 64;
inline constexpr int kMaxOrder = 256;

/// Free(d): letters 2i (generator i) and 2i+1 (its inverse), i in [0, d).
/// CyclicFreeProduct(m, d): letter i*(m-1) + (e-1) is generator i raised to e in [1, m).
/// Letter codes are ordered; the canonical word order is (length, lexicographic codes).
class GroupPresentation {
 public:
  static GroupPresentation free(int rank);
  static GroupPresentation cyclic(int order, int factors);
  /// Parses `free:<d>` or `cyclic:<m>:<d>`.
  static GroupPresentation parse(std::string_view descriptor);

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  /// m for cyclic free products, 0 for free groups.
  int order() const noexcept { return order_; }

  std::size_t alphabet_size() const noexcept;
  /// Number of letters that may follow any given letter in a reduced word.
  std::size_t branching() const noexcept;

  Letter inverse(Letter x) const noexcept;
  bool can_follow(Letter prev, Letter next) const noexcept;
  /// Position of `next` among the letters allowed after `prev`.
  std::size_t relative_digit(Letter prev, Letter next) const noexcept;
  Letter from_relative_digit(Letter prev, std::size_t digit) const noexcept;

  int factor(Letter x) const noexcept;
  int exponent(Letter x) const noexcept;
  Letter generator(int index, bool inverted = false) const;
  Letter power(int factor_index, int exponent) const;
  bool is_letter(Letter x) const noexcept { return x < alphabet_size(); }

  std::string descriptor() const;
  std::string letter_name(Letter x) const;

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  GroupPresentation(Family family, int rank, int order) : family_(family), rank_(rank), order_(order) {}

  Family family_;
  int rank_;
  int order_;
};

class GroupElement {
 public:
  explicit GroupElement(GroupPresentation g) : pres_(g) {}

  /// Freely reduces `letters`; throws MalformedInputError on letters outside the alphabet.
  static GroupElement reduce(std::span<const Letter> letters, GroupPresentation g);
  /// Word syntax: free groups use a..z for generators and A..Z for inverses (or g<i>/G<i>,
  /// 1-based); cyclic products use x<i>^<e> (1-based factor). `e` or the empty string is the identity.
  static GroupElement parse(std::string_view text, GroupPresentation g);
  /// Wraps letters already known to be reduced.
  static GroupElement from_reduced(Word letters, GroupPresentation g);

  const GroupPresentation& presentation() const noexcept { return pres_; }
  std::span<const Letter> letters() const noexcept { return {word_.data(), word_.size()}; }
  const Word& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  bool is_identity() const noexcept { return word_.empty(); }
  std::string to_string() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) noexcept {
    return a.pres_ == b.pres_ && a.word_ == b.word_;
  }
  /// Canonical order: shorter words first, then lexicographic by letter code.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) noexcept;

 private:
  GroupPresentation pres_;
  Word word_;
};

GroupElement reduce(std::span<const Letter> letters, GroupPresentation g);
GroupElement multiply(const GroupElement& u, const GroupElement& v);
GroupElement inverse(const GroupElement& u);
inline std::size_t length(const GroupElement& u) noexcept { return u.length(); }

/// Appends `x` to the reduced word `w` in place, cancelling or merging at the junction.
void append_letter(Word& w, Letter x, const GroupPresentation& g);
/// Prepends `x` to the reduced word `w` in place.
void prepend_letter(Word& w, Letter x, const GroupPresentation& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& u) const noexcept;
};

}  // namespace exotic
