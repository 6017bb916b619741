#include "semiaffine/word.hpp"

#include <algorithm>
#include <bit>

#include "semiaffine/error.hpp"

namespace semiaffine {

Word Word::from_string(std::string_view bits) {
  Word word;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw PreconditionError("word string may contain only '0' and '1'");
    }
    word.push_back(c - '0');
  }
  return word;
}

Word Word::from_index(std::size_t length, std::uint64_t index) {
  if (length > 64) throw PreconditionError("from_index supports lengths up to 64");
  Word word;
  for (std::size_t i = 0; i < length; ++i) {
    word.push_back(static_cast<int>((index >> (length - 1 - i)) & 1U));
  }
  return word;
}

Word Word::repeat(int symbol, std::size_t count) {
  Word word;
  for (std::size_t i = 0; i < count; ++i) word.push_back(symbol);
  return word;
}

void Word::push_back(int symbol) {
  if (size_ % 64 == 0) blocks_.push_back(0);
  if (symbol != 0) blocks_.back() |= std::uint64_t{1} << (size_ % 64);
  ++size_;
}

std::size_t Word::count_ones() const noexcept {
  std::size_t total = 0;
  for (auto block : blocks_) total += static_cast<std::size_t>(std::popcount(block));
  return total;
}

std::uint64_t Word::index() const {
  if (size_ > 64) throw PreconditionError("index() requires a word of length <= 64");
  std::uint64_t result = 0;
  for (std::size_t i = 0; i < size_; ++i) result = (result << 1) | static_cast<std::uint64_t>((*this)[i]);
  return result;
}

Word Word::concat(const Word& tail) const {
  Word out = *this;
  for (std::size_t i = 0; i < tail.size(); ++i) out.push_back(tail[i]);
  return out;
}

Word Word::reversed() const {
  Word out;
  for (std::size_t i = size_; i-- > 0;) out.push_back((*this)[i]);
  return out;
}

Word Word::prefix(std::size_t length) const {
  Word out;
  for (std::size_t i = 0; i < std::min(length, size_); ++i) out.push_back((*this)[i]);
  return out;
}

std::string Word::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) out[i] = static_cast<char>('0' + (*this)[i]);
  return out;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.size_ <=> rhs.size_; c != 0) return c;
  for (std::size_t i = 0; i < lhs.size_; ++i) {
    if (auto c = lhs[i] <=> rhs[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace semiaffine
