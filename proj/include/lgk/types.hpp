#ifndef LGK_TYPES_HPP
#define LGK_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lgk {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kSpanTol = 1e-9;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

class NestingError : public Error {
 public:
  explicit NestingError(const std::string& msg) : Error(msg) {}
};

// Thrown when a constraint set has an empty joint fixed space.
class SecondClassError : public Error {
 public:
  explicit SecondClassError(const std::string& msg) : Error(msg) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : Error(msg), best_residual(residual) {}
  double best_residual;
};

}  // namespace lgk

#endif
