#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cayley {

// Fixed-width memory word. Bit index 0 is the MSB.
class BitWord {
 public:
  BitWord() = default;
  BitWord(int width, std::uint64_t value) : width_(width), value_(value) {
    if (width < 1 || width > 63) throw std::invalid_argument("BitWord width must be in [1, 63]");
    if (value > max_value(width)) {
      throw std::out_of_range("value " + std::to_string(value) + " does not fit in " +
                              std::to_string(width) + " bits");
    }
  }

  static constexpr std::uint64_t max_value(int width) {
    return (std::uint64_t{1} << width) - 1;
  }

  int width() const { return width_; }
  std::uint64_t value() const { return value_; }

  bool bit(int index) const {
    if (index < 0 || index >= width_) throw std::out_of_range("bit index out of range");
    return (value_ >> (width_ - 1 - index)) & 1U;
  }
  bool msb() const { return bit(0); }

  void set_msb(bool b) {
    const std::uint64_t mask = std::uint64_t{1} << (width_ - 1);
    value_ = b ? (value_ | mask) : (value_ & ~mask);
  }

  /// MSB wraps around to the LSB.
  BitWord rotated_left() const {
    BitWord out = *this;
    out.value_ = ((value_ << 1) | (value_ >> (width_ - 1))) & max_value(width_);
    return out;
  }
  void rotate_left() { *this = rotated_left(); }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < width_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  int width_ = 1;
  std::uint64_t value_ = 0;
};

inline BitWord circular_left_shift(const BitWord& word) { return word.rotated_left(); }

}  // namespace cayley
