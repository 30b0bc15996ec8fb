#ifndef LGK_OBSERVABLES_HPP
#define LGK_OBSERVABLES_HPP

#include "lgk/gauge_action.hpp"

namespace lgk {

// Oriented lattice path: sign +1 walks the link source -> target, -1 walks it
// backwards.  `base` anchors zero-length paths to a site.
struct LoopPath {
  std::vector<std::pair<std::size_t, int>> steps;
  bool closed = false;
  std::optional<Site> base;
};

LoopPath loop_from_plaquette(const LatticeGraph& graph, const Plaquette& p);
LoopPath reversed(const LoopPath& loop);
LoopPath rotated(const LoopPath& loop, std::size_t shift);  // cyclic, closed only

// Head-to-tail consistency; throws on a broken path or if `closed`
// disagrees with the endpoints.
void validate_path(const LatticeGraph& graph, const LoopPath& loop);

enum class HoppingKernel { SingleComponent, NaiveDirac };

struct Couplings {
  double lattice_spacing = 1.0;  // a > 0
  double gauge_coupling = 1.0;   // g > 0
  double mass = 0.0;
  HoppingKernel kernel = HoppingKernel::SingleComponent;
};

// W(L): trace over defining indices of the ordered product of link connection
// components; backward steps use the adjoint components.
Matrix wilson_loop(const KinematicSpace& space, const LoopPath& loop);

// Q(C) = psi*(x_1) Phi(l_1) ... Phi(l_m) psi(y_m) with color indices
// contracted along the line; b_start/b_end pick the non-color components.
Matrix fermion_line(const KinematicSpace& space, const LoopPath& path,
                    int b_start = 0, int b_end = 0);

Matrix electric_term(const KinematicSpace& space, double a);
Matrix magnetic_term(const KinematicSpace& space, double g, double a);
Matrix mass_term(const KinematicSpace& space, double m, double a,
                 HoppingKernel kernel = HoppingKernel::SingleComponent);
Matrix hopping_term(const KinematicSpace& space, double a,
                    HoppingKernel kernel = HoppingKernel::SingleComponent);

// Electric + magnetic terms, plus mass and hopping when matter is present.
Matrix hamiltonian(const KinematicSpace& space, const Couplings& couplings);

cplx expectation(const Vector& state, const Matrix& op);

}  // namespace lgk

#endif
