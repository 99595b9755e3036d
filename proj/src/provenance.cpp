#include "polya/provenance.hpp"

#include <algorithm>
#include <cstdio>

namespace polya {

std::string Provenance::tag() const {
  switch (kind) {
    case Kind::exact: return "exact";
    case Kind::arithmetic: return "arithmetic";
    case Kind::fem: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "fem(%d, %.6e)", level, error);
      return buf;
    }
  }
  return "arithmetic";
}

Provenance provenance_of(const spectra::Spectrum& s) {
  if (s.is_exact()) return Provenance::exact();
  double e = 0.0;
  for (double x : s.errors) e = std::max(e, x);
  return Provenance::fem(s.fem_level, e);
}

}  // namespace polya
