#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rssmeet {

// Storage order follows the 1-based numbering used by the bandit policies:
// 1 = up (+y), 2 = down (-y), 3 = right (+x), 4 = left (-x).
enum class Arm : std::uint8_t { PlusY = 0, MinusY = 1, PlusX = 2, MinusX = 3 };

enum class Axis : std::uint8_t { X, Y };

inline constexpr std::array<Arm, 4> kAllArms{Arm::PlusY, Arm::MinusY, Arm::PlusX,
                                              Arm::MinusX};

constexpr int index_of(Arm a) { return static_cast<int>(a); }

constexpr Arm arm_from_index(int i) { return static_cast<Arm>(i); }

/// 1-based arm number (1=up, 2=down, 3=right, 4=left).
constexpr int arm_number(Arm a) { return index_of(a) + 1; }

constexpr Arm arm_from_number(int i) { return arm_from_index(i - 1); }

constexpr Arm reverse(Arm a) {
  switch (a) {
    case Arm::PlusY: return Arm::MinusY;
    case Arm::MinusY: return Arm::PlusY;
    case Arm::PlusX: return Arm::MinusX;
    case Arm::MinusX: return Arm::PlusX;
  }
  return a;
}

constexpr Axis axis_of(Arm a) {
  return (a == Arm::PlusX || a == Arm::MinusX) ? Axis::X : Axis::Y;
}

/// Unit step of the arm as (dx, dy).
struct GridStep {
  int dx;
  int dy;
};

constexpr GridStep unit_step(Arm a) {
  switch (a) {
    case Arm::PlusY: return {0, 1};
    case Arm::MinusY: return {0, -1};
    case Arm::PlusX: return {1, 0};
    case Arm::MinusX: return {-1, 0};
  }
  return {0, 0};
}

constexpr std::string_view to_string(Arm a) {
  switch (a) {
    case Arm::PlusY: return "+y";
    case Arm::MinusY: return "-y";
    case Arm::PlusX: return "+x";
    case Arm::MinusX: return "-x";
  }
  return "?";
}

}  // namespace rssmeet
