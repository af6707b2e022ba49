#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace latlab {

// Dense square bit matrix, row-major, 64 columns per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
  void reset(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
  }

  std::span<std::uint64_t const> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t i) {
    return {bits_.data() + i * words_, words_};
  }

  // row(dst) |= row(src)
  void or_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) {
      bits_[dst * words_ + w] |= bits_[src * words_ + w];
    }
  }

  std::size_t row_count(std::size_t i) const {
    std::size_t c = 0;
    for (auto w : row(i)) c += std::popcount(w);
    return c;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
  }

  // Column indices set in row i, ascending.
  std::vector<std::size_t> row_indices(std::size_t i) const {
    std::vector<std::size_t> out;
    auto r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      auto word = r[w];
      while (word != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
    return out;
  }

  bool operator==(BitMatrix const&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// True iff every bit of a is also set in b.
inline bool is_subset(std::span<std::uint64_t const> a,
                      std::span<std::uint64_t const> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

}  // namespace latlab
