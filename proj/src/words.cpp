#include "exotic/words.hpp"

#include "exotic/error.hpp"

#include <algorithm>
#include <charconv>
#include <vector>

namespace exotic {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw MalformedInputError("expected an integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

GroupPresentation GroupPresentation::free(int rank) {
  if (rank < 1 || rank > kMaxRank) throw MalformedInputError("free group rank must lie in 1..64");
  return GroupPresentation(Family::Free, rank, 0);
}

GroupPresentation GroupPresentation::cyclic(int order, int factors) {
  if (order < 2 || order > kMaxOrder) throw MalformedInputError("cyclic factor order must lie in 2..256");
  if (factors < 1 || factors > kMaxRank) throw MalformedInputError("number of factors must lie in 1..64");
  return GroupPresentation(Family::CyclicFreeProduct, factors, order);
}

GroupPresentation GroupPresentation::parse(std::string_view descriptor) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = descriptor.find(':', start);
    parts.push_back(descriptor.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 2 && parts[0] == "free") return free(parse_int(parts[1], "free rank"));
  if (parts.size() == 3 && parts[0] == "cyclic") {
    return cyclic(parse_int(parts[1], "cyclic order"), parse_int(parts[2], "cyclic factor count"));
  }
  throw MalformedInputError("group descriptor must be free:<d> or cyclic:<m>:<d>, got '" + std::string(descriptor) +
                            "'");
}

std::size_t GroupPresentation::alphabet_size() const noexcept {
  if (family_ == Family::Free) return 2 * static_cast<std::size_t>(rank_);
  return static_cast<std::size_t>(rank_) * static_cast<std::size_t>(order_ - 1);
}

std::size_t GroupPresentation::branching() const noexcept {
  if (family_ == Family::Free) return 2 * static_cast<std::size_t>(rank_) - 1;
  return static_cast<std::size_t>(rank_ - 1) * static_cast<std::size_t>(order_ - 1);
}

Letter GroupPresentation::inverse(Letter x) const noexcept {
  if (family_ == Family::Free) return static_cast<Letter>(x ^ 1u);
  int f = factor(x);
  int e = exponent(x);
  return power(f, order_ - e);
}

int GroupPresentation::factor(Letter x) const noexcept {
  if (family_ == Family::Free) return x >> 1;
  return x / (order_ - 1);
}

int GroupPresentation::exponent(Letter x) const noexcept {
  if (family_ == Family::Free) return (x & 1u) ? -1 : 1;
  return x % (order_ - 1) + 1;
}

Letter GroupPresentation::generator(int index, bool inverted) const {
  if (index < 0 || index >= rank_) throw MalformedInputError("generator index out of range");
  if (family_ == Family::Free) return static_cast<Letter>(2 * index + (inverted ? 1 : 0));
  return power(index, inverted ? order_ - 1 : 1);
}

Letter GroupPresentation::power(int factor_index, int exp) const {
  return static_cast<Letter>(factor_index * (order_ - 1) + (exp - 1));
}

bool GroupPresentation::can_follow(Letter prev, Letter next) const noexcept {
  if (family_ == Family::Free) return next != inverse(prev);
  return factor(prev) != factor(next);
}

std::size_t GroupPresentation::relative_digit(Letter prev, Letter next) const noexcept {
  if (family_ == Family::Free) return next - (next > inverse(prev) ? 1u : 0u);
  const std::size_t block = static_cast<std::size_t>(order_ - 1);
  return next - (factor(next) > factor(prev) ? block : 0u);
}

Letter GroupPresentation::from_relative_digit(Letter prev, std::size_t digit) const noexcept {
  if (family_ == Family::Free) {
    return static_cast<Letter>(digit + (digit >= inverse(prev) ? 1u : 0u));
  }
  const std::size_t block = static_cast<std::size_t>(order_ - 1);
  const std::size_t f = digit / block;
  return static_cast<Letter>(digit + (f >= static_cast<std::size_t>(factor(prev)) ? block : 0u));
}

std::string GroupPresentation::descriptor() const {
  if (family_ == Family::Free) return "free:" + std::to_string(rank_);
  return "cyclic:" + std::to_string(order_) + ":" + std::to_string(rank_);
}

std::string GroupPresentation::letter_name(Letter x) const {
  if (family_ == Family::Free) {
    int i = factor(x);
    bool inv = (x & 1u) != 0;
    if (rank_ <= 26) return std::string(1, static_cast<char>((inv ? 'A' : 'a') + i));
    return std::string(inv ? "G" : "g") + std::to_string(i + 1);
  }
  std::string name = "x" + std::to_string(factor(x) + 1);
  int e = exponent(x);
  if (e != 1) name += "^" + std::to_string(e);
  return name;
}

void append_letter(Word& w, Letter x, const GroupPresentation& g) {
  if (w.empty()) {
    w.push_back(x);
    return;
  }
  Letter last = w.back();
  if (g.family() == Family::Free) {
    if (last == g.inverse(x)) {
      w.pop_back();
    } else {
      w.push_back(x);
    }
    return;
  }
  if (g.factor(last) != g.factor(x)) {
    w.push_back(x);
    return;
  }
  int e = (g.exponent(last) + g.exponent(x)) % g.order();
  w.pop_back();
  if (e != 0) w.push_back(g.power(g.factor(x), e));
}

void prepend_letter(Word& w, Letter x, const GroupPresentation& g) {
  if (w.empty()) {
    w.push_back(x);
    return;
  }
  Letter first = w.front();
  if (g.family() == Family::Free) {
    if (first == g.inverse(x)) {
      w.erase(w.begin());
    } else {
      w.insert(w.begin(), x);
    }
    return;
  }
  if (g.factor(first) != g.factor(x)) {
    w.insert(w.begin(), x);
    return;
  }
  int e = (g.exponent(first) + g.exponent(x)) % g.order();
  if (e == 0) {
    w.erase(w.begin());
  } else {
    w.front() = g.power(g.factor(x), e);
  }
}

GroupElement GroupElement::reduce(std::span<const Letter> letters, GroupPresentation g) {
  GroupElement out(g);
  for (Letter x : letters) {
    if (!g.is_letter(x)) {
      throw MalformedInputError("letter code " + std::to_string(x) + " is outside the alphabet of " + g.descriptor());
    }
    append_letter(out.word_, x, g);
  }
  return out;
}

GroupElement GroupElement::from_reduced(Word letters, GroupPresentation g) {
  GroupElement out(g);
  out.word_ = std::move(letters);
  return out;
}

GroupElement GroupElement::parse(std::string_view text, GroupPresentation g) {
  std::vector<Letter> raw;
  if (text == "e") return GroupElement(g);
  std::size_t i = 0;
  auto read_number = [&](std::string_view what) {
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    if (j == i) throw MalformedInputError("expected a number in word '" + std::string(text) + "' for " + std::string(what));
    int value = parse_int(text.substr(i, j - i), what);
    i = j;
    return value;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == ' ') {
      ++i;
      continue;
    }
    if (g.family() == Family::Free) {
      int index = -1;
      bool inverted = false;
      if ((c == 'g' || c == 'G') && i + 1 < text.size() && text[i + 1] >= '0' && text[i + 1] <= '9') {
        inverted = c == 'G';
        ++i;
        index = read_number("generator index") - 1;
      } else if (c >= 'a' && c <= 'z') {
        index = c - 'a';
        ++i;
      } else if (c >= 'A' && c <= 'Z') {
        index = c - 'A';
        inverted = true;
        ++i;
      } else {
        throw MalformedInputError("unexpected character '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
      }
      if (text.substr(i, 3) == "^-1") {
        inverted = !inverted;
        i += 3;
      }
      if (index < 0 || index >= g.rank()) {
        throw MalformedInputError("generator out of range in word '" + std::string(text) + "' for " + g.descriptor());
      }
      raw.push_back(g.generator(index, inverted));
    } else {
      if (c != 'x') {
        throw MalformedInputError("unexpected character '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
      }
      ++i;
      int f = read_number("factor index") - 1;
      int e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        bool negative = i < text.size() && text[i] == '-';
        if (negative) ++i;
        e = read_number("exponent");
        if (negative) e = -e;
      }
      if (f < 0 || f >= g.rank()) {
        throw MalformedInputError("factor out of range in word '" + std::string(text) + "' for " + g.descriptor());
      }
      e = ((e % g.order()) + g.order()) % g.order();
      if (e != 0) raw.push_back(g.power(f, e));
    }
  }
  return reduce(raw, g);
}

std::string GroupElement::to_string() const {
  if (word_.empty()) return "e";
  std::string out;
  for (Letter x : word_) out += pres_.letter_name(x);
  return out;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) noexcept {
  if (!(a.pres_ == b.pres_)) {
    if (auto c = a.pres_.family() <=> b.pres_.family(); c != 0) return c;
    if (auto c = a.pres_.order() <=> b.pres_.order(); c != 0) return c;
    return a.pres_.rank() <=> b.pres_.rank();
  }
  if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.word_.begin(), a.word_.end(), b.word_.begin(), b.word_.end());
}

GroupElement reduce(std::span<const Letter> letters, GroupPresentation g) { return GroupElement::reduce(letters, g); }

GroupElement multiply(const GroupElement& u, const GroupElement& v) {
  if (!(u.presentation() == v.presentation())) {
    throw DomainError("cannot multiply elements of " + u.presentation().descriptor() + " and " +
                      v.presentation().descriptor());
  }
  const auto& g = u.presentation();
  Word w = u.word();
  for (Letter x : v.letters()) append_letter(w, x, g);
  return GroupElement::from_reduced(std::move(w), g);
}

GroupElement inverse(const GroupElement& u) {
  const auto& g = u.presentation();
  Word w;
  w.reserve(u.length());
  for (auto it = u.word().rbegin(); it != u.word().rend(); ++it) w.push_back(g.inverse(*it));
  return GroupElement::from_reduced(std::move(w), g);
}

std::size_t GroupElementHash::operator()(const GroupElement& u) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Letter x : u.letters()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  h ^= u.length();
  h *= 1099511628211ull;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace exotic
