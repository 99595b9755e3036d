#pragma once

// Where a reported number came from: a closed form, a finite element solve
// at some refinement level with an error bound, or arithmetic on the
// other two.

#include <string>

#include "polya/spectrum.hpp"

namespace polya {

struct Provenance {
  enum class Kind { exact, fem, arithmetic };
  Kind kind = Kind::arithmetic;
  int level = -1;
  double error = 0.0;

  static Provenance exact() { return {Kind::exact, -1, 0.0}; }
  static Provenance arithmetic() { return {Kind::arithmetic, -1, 0.0}; }
  static Provenance fem(int level, double error) { return {Kind::fem, level, error}; }

  // "exact", "arithmetic" or "fem(5, 1.234568e-09)".
  std::string tag() const;
};

// exact for closed-form spectra; fem(level, largest error bound) otherwise.
Provenance provenance_of(const spectra::Spectrum& s);

}  // namespace polya
