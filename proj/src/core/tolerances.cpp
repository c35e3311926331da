#include "core/tolerances.hpp"

#include <array>
#include <utility>

namespace qspecies {

namespace {

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 10> kFields{{
    {"norm", &Tolerances::norm},
    {"unitary", &Tolerances::unitary},
    {"density", &Tolerances::density},
    {"density_eigen_floor", &Tolerances::density_eigen_floor},
    {"isometry", &Tolerances::isometry},
    {"gram", &Tolerances::gram},
    {"psd_floor", &Tolerances::psd_floor},
    {"entropy_zero", &Tolerances::entropy_zero},
    {"periodicity", &Tolerances::periodicity},
    {"machine", &Tolerances::machine},
}};

}  // namespace

bool Tolerances::set(std::string_view name, double value) {
  for (const auto& [key, field] : kFields) {
    if (key == name) {
      this->*field = value;
      return true;
    }
  }
  return false;
}

std::optional<double> Tolerances::get(std::string_view name) const {
  for (const auto& [key, field] : kFields) {
    if (key == name) return this->*field;
  }
  return std::nullopt;
}

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

}  // namespace qspecies
