#include "ionsq/space.hpp"

#include <string>

namespace ionsq {

SpaceDescriptor::SpaceDescriptor(int n_c_cut, int n_r_cut)
    : n_c_cut_(n_c_cut), n_r_cut_(n_r_cut) {
  if (n_c_cut < 1 || n_r_cut < 1) {
    throw DimensionError(
        "state-core", "cutoff",
        "Fock cutoffs must be >= 1 (squeezing needs at least two levels); got "
        "(" + std::to_string(n_c_cut) + ", " + std::to_string(n_r_cut) + ")");
  }
}

int SpaceDescriptor::subsystem_dim(Subsystem s) const {
  switch (s) {
    case Subsystem::Ion1:
    case Subsystem::Ion2:
      return 2;
    case Subsystem::ModeC:
      return dim_c();
    case Subsystem::ModeR:
      return dim_r();
  }
  throw DimensionError("state-core", "subsystem", "unknown subsystem");
}

long SpaceDescriptor::index_of(IonLevel s1, IonLevel s2, int n_c,
                               int n_r) const {
  if (n_c < 0 || n_c > n_c_cut_ || n_r < 0 || n_r > n_r_cut_) {
    throw DimensionError(
        "state-core", "fock-range",
        "Fock index out of range: (n_c=" + std::to_string(n_c) +
            ", n_r=" + std::to_string(n_r) + ") with cutoffs (" +
            std::to_string(n_c_cut_) + ", " + std::to_string(n_r_cut_) + ")");
  }
  long idx = static_cast<long>(s1) * 2 + static_cast<long>(s2);
  idx = idx * dim_c() + n_c;
  idx = idx * dim_r() + n_r;
  return idx;
}

BasisTuple SpaceDescriptor::tuple_of(long index) const {
  if (index < 0 || index >= dim()) {
    throw DimensionError("state-core", "index-range",
                         "basis index out of range: " + std::to_string(index));
  }
  BasisTuple t;
  t.n_r = static_cast<int>(index % dim_r());
  index /= dim_r();
  t.n_c = static_cast<int>(index % dim_c());
  index /= dim_c();
  t.s2 = static_cast<IonLevel>(index % 2);
  t.s1 = static_cast<IonLevel>(index / 2);
  return t;
}

long SpaceDescriptor::mode_index_of(int n_c, int n_r) const {
  return static_cast<long>(n_c) * dim_r() + n_r;
}

SpaceDescriptor make_space(int n_c_cut, int n_r_cut) {
  return SpaceDescriptor(n_c_cut, n_r_cut);
}

void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b,
                        const char* where) {
  if (a != b) {
    throw DimensionError("state-core", "space-mismatch",
                         std::string(where) + ": operands live on different "
                         "spaces");
  }
}

}  // namespace ionsq
