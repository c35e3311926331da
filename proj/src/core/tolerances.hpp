#pragma once

#include <optional>
#include <string_view>

namespace qspecies {

// Numerical thresholds used by validity checks across the library. Every
// check reads its threshold from a Tolerances instance so the defaults can
// be overridden in one place (the CLI exposes them as --tol name=value).
struct Tolerances {
  double norm = 1e-10;                // state normalization | ||v|| - 1 |
  double unitary = 1e-10;             // max entry of |U^dagger U - I|
  double density = 1e-10;             // hermiticity and unit-trace deviation
  double density_eigen_floor = 1e-9;  // most negative admissible eigenvalue
  double isometry = 1e-10;            // image-set orthonormality deviation
  double gram = 1e-9;                 // Gram-residual feasibility threshold
  double psd_floor = 1e-10;           // eigenvalue floor in feasibility checks
  double entropy_zero = 1e-8;         // entropy treated as zero below this
  double periodicity = 1e-8;          // max entry of |U^period - I|
  double machine = 1e-10;             // clone-machine invariant checks

  // Named access used by the CLI override flags. Returns false / nullopt for
  // unknown names.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
};

const Tolerances& default_tolerances();

}  // namespace qspecies
