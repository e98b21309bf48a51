#ifndef MKNF_TRUTH_HPP
#define MKNF_TRUTH_HPP

#include <algorithm>
#include <cstdint>

namespace mknf {

/// Three truth values with the total order False < Undef < True.
enum class Truth : std::uint8_t { False = 0, Undef = 1, True = 2 };

constexpr Truth meet(Truth a, Truth b) { return std::min(a, b); }
constexpr Truth join(Truth a, Truth b) { return std::max(a, b); }

/// Three-valued negation: f -> t, u -> u, t -> f.
constexpr Truth negate(Truth v) {
  return static_cast<Truth>(2 - static_cast<std::uint8_t>(v));
}

constexpr char to_char(Truth v) {
  switch (v) {
    case Truth::False: return 'f';
    case Truth::Undef: return 'u';
    default: return 't';
  }
}

}  // namespace mknf

#endif
