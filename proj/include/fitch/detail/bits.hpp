#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace fitch::detail {

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

inline bool test_bit(std::span<const std::uint64_t> row, std::size_t i) {
  return (row[i >> 6] >> (i & 63)) & 1U;
}

inline void set_bit(std::span<std::uint64_t> row, std::size_t i) {
  row[i >> 6] |= std::uint64_t{1} << (i & 63);
}

inline void clear_bit(std::span<std::uint64_t> row, std::size_t i) {
  row[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

inline std::size_t popcount(std::span<const std::uint64_t> row) {
  std::size_t n = 0;
  for (auto w : row) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

// Calls f(i) for every set bit, ascending.
template <typename F>
void for_each_bit(std::span<const std::uint64_t> row, F&& f) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t word = row[w];
    while (word != 0) {
      f(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
}

// Fixed-width bit set over vertex indices; used as a subset mask.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  std::size_t bits() const { return bits_; }
  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool test(std::size_t i) const { return test_bit(words_, i); }
  void set(std::size_t i) { set_bit(words_, i); }
  void reset(std::size_t i) { clear_bit(words_, i); }
  std::size_t count() const { return popcount(words_); }
  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for_each_bit(words_, std::forward<F>(f));
  }

  bool operator==(const BitSet&) const = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fitch::detail
