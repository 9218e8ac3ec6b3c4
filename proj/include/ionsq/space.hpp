// space.hpp — composite Hilbert space of two qubits and two truncated
// oscillator modes, with the basis index bijection.
#pragma once

#include "ionsq/types.hpp"

#include <array>

namespace ionsq {

// Subsystems in their fixed tensor order.
enum class Subsystem { Ion1 = 0, Ion2 = 1, ModeC = 2, ModeR = 3 };

// Internal-state encoding: |e> is component 0, |g> is component 1, so that
// sigma_z |e> = +|e> with the upper level excited.
enum class IonLevel { Excited = 0, Ground = 1 };

struct BasisTuple {
  IonLevel s1;
  IonLevel s2;
  int n_c;
  int n_r;
};

// Dimensions and index maps of (ion1 ⊗ ion2 ⊗ mode_c ⊗ mode_r). Basis index
// is row-major in that order. Immutable after construction.
class SpaceDescriptor {
 public:
  SpaceDescriptor(int n_c_cut, int n_r_cut);

  int n_c_cut() const { return n_c_cut_; }
  int n_r_cut() const { return n_r_cut_; }
  int dim_c() const { return n_c_cut_ + 1; }
  int dim_r() const { return n_r_cut_ + 1; }
  int mode_dim() const { return dim_c() * dim_r(); }
  long dim() const { return 4L * mode_dim(); }

  int subsystem_dim(Subsystem s) const;

  long index_of(IonLevel s1, IonLevel s2, int n_c, int n_r) const;
  long index_of(const BasisTuple& t) const {
    return index_of(t.s1, t.s2, t.n_c, t.n_r);
  }
  BasisTuple tuple_of(long index) const;

  // Mode-space offset (n_c * dim_r + n_r); the trailing factor of index_of.
  long mode_index_of(int n_c, int n_r) const;

  bool operator==(const SpaceDescriptor& other) const {
    return n_c_cut_ == other.n_c_cut_ && n_r_cut_ == other.n_r_cut_;
  }
  bool operator!=(const SpaceDescriptor& other) const {
    return !(*this == other);
  }

 private:
  int n_c_cut_;
  int n_r_cut_;
};

SpaceDescriptor make_space(int n_c_cut, int n_r_cut);

// Throws DimensionError unless both spaces agree.
void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b,
                        const char* where);

}  // namespace ionsq
