#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semiaffine {

/// A finite 0-1 word, the element of the free semigroup on two generators.
///
/// Symbol 0 is stored first; composing a word applies it first. Storage is a
/// packed bit vector with an explicit length, unused high bits kept zero so
/// that equality is a plain vector comparison.
class Word {
 public:
  Word() = default;

  /// Parses a string of '0' and '1' characters, first character = first symbol.
  static Word from_string(std::string_view bits);

  /// The word of `length` symbols whose first symbol is the most significant
  /// bit of `index`, so numeric order on indices is lexicographic order.
  static Word from_index(std::size_t length, std::uint64_t index);

  static Word repeat(int symbol, std::size_t count);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  int operator[](std::size_t i) const noexcept {
    return static_cast<int>((blocks_[i / 64] >> (i % 64)) & 1U);
  }

  void push_back(int symbol);

  std::size_t count_ones() const noexcept;
  std::size_t count_zeros() const noexcept { return size_ - count_ones(); }

  /// Inverse of from_index; requires size() <= 64.
  std::uint64_t index() const;

  Word concat(const Word& tail) const;
  Word reversed() const;
  Word prefix(std::size_t length) const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

  /// Length-lexicographic (shortlex) order.
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

}  // namespace semiaffine
