#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace haarlab {

using Mask = std::uint64_t;

/// Point indices live in a single 64-bit word.
inline constexpr std::size_t kMaxPoints = 64;

/// A set of point indices of some finite space, stored as a membership mask.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(Mask bits) : bits_(bits) {}

  static Subset of(std::initializer_list<std::size_t> points) {
    Subset s;
    for (std::size_t p : points) s.bits_ |= Mask{1} << p;
    return s;
  }
  static Subset of(const std::vector<std::size_t>& points) {
    Subset s;
    for (std::size_t p : points) s.bits_ |= Mask{1} << p;
    return s;
  }
  static constexpr Subset singleton(std::size_t point) { return Subset(Mask{1} << point); }
  static constexpr Subset full(std::size_t n) {
    return Subset(n >= kMaxPoints ? ~Mask{0} : (Mask{1} << n) - 1);
  }

  [[nodiscard]] constexpr Mask bits() const noexcept { return bits_; }
  [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  [[nodiscard]] constexpr bool contains(std::size_t point) const noexcept {
    return point < kMaxPoints && ((bits_ >> point) & 1U) != 0;
  }
  [[nodiscard]] constexpr bool is_subset_of(Subset other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  [[nodiscard]] constexpr bool intersects(Subset other) const noexcept {
    return (bits_ & other.bits_) != 0;
  }
  /// Lowest member; undefined on the empty set.
  [[nodiscard]] constexpr std::size_t first() const noexcept {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }
  [[nodiscard]] constexpr Subset complement_in(std::size_t n) const noexcept {
    return Subset(~bits_ & full(n).bits_);
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (Mask m = bits_; m != 0; m &= m - 1) f(static_cast<std::size_t>(std::countr_zero(m)));
  }

  [[nodiscard]] std::vector<std::size_t> points() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t p) { out.push_back(p); });
    return out;
  }

  constexpr Subset& operator|=(Subset o) noexcept { bits_ |= o.bits_; return *this; }
  constexpr Subset& operator&=(Subset o) noexcept { bits_ &= o.bits_; return *this; }
  constexpr Subset& operator-=(Subset o) noexcept { bits_ &= ~o.bits_; return *this; }

  friend constexpr Subset operator|(Subset a, Subset b) noexcept { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) noexcept { return Subset(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) noexcept { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) noexcept = default;
  /// Canonical order: ascending mask value (a subset always precedes its supersets).
  friend constexpr std::strong_ordering operator<=>(Subset a, Subset b) noexcept {
    return a.bits_ <=> b.bits_;
  }

 private:
  Mask bits_ = 0;
};

/// "{0,2}"
std::string to_string(Subset s);

/// Calls f on every submask of `universe`, in ascending mask order.
template <typename F>
void for_each_submask(Subset universe, F&& f) {
  const Mask u = universe.bits();
  Mask m = 0;
  while (true) {
    f(Subset(m));
    if (m == u) break;
    m = (m - u) & u;  // next submask in ascending order
  }
}

}  // namespace haarlab
