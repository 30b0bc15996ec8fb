#ifndef LGK_SOLVER_HPP
#define LGK_SOLVER_HPP

#include <functional>

#include "lgk/linalg.hpp"

namespace lgk {

enum class SolverMode { Dense, Lanczos };

struct SpectrumRequest {
  SolverMode mode = SolverMode::Dense;
  Index k = 1;              // Lanczos: number of lowest eigenpairs
  Index max_iter = 300;
  double tol = 1e-10;
  std::uint64_t seed = 1;   // deterministic start vector
  bool want_vectors = false;
};

struct Spectrum {
  RealVector values;             // ascending
  Matrix vectors;                // columns, when requested
  RealVector residuals;          // ||H v - lambda v|| per reported pair
};

using MatVec = std::function<Vector(const Vector&)>;

// Full spectrum of a hermitian matrix (tolerance 1e-10 on hermiticity).
Spectrum eigs_dense(const Matrix& h, bool want_vectors = false);

// Lowest-k eigenpairs by Lanczos with full reorthogonalization and a seeded
// start vector.  Throws ConvergenceError carrying the best residual.
Spectrum eigs_lanczos(const MatVec& apply, Index dim, const SpectrumRequest& req);

Spectrum eigs(const Matrix& h, const SpectrumRequest& req);

}  // namespace lgk

#endif
