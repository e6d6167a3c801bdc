// Shared dense types for the walk engines. Everything is double precision;
// amplitudes are std::complex<double> stored in Eigen matrices with one row
// per coin index and one column per position/vertex.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwalk {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

constexpr double kUnitarityTol = 1e-10;
constexpr double kNormTol = 1e-10;

// Error codes let callers (CLI, tests) react without parsing messages.
enum class ErrorCode {
  DimensionMismatch,
  DomainError,
  Disconnected,
  Unreachable,
  Singular,
  NotStochastic,
  NotUnitary,
  BadInput,
  TooLarge,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Amplitude tensor over (coin basis) x (ordered position set).
// positions[j] is the label of column j: lattice coordinates for line walks
// (contiguous by construction), vertex ids for graphs.
struct WalkState {
  int coin_dim = 1;
  std::vector<std::int64_t> positions;
  CMatrix amp;  // coin_dim x positions.size()

  std::int64_t num_positions() const {
    return static_cast<std::int64_t>(positions.size());
  }
  double norm_squared() const { return amp.squaredNorm(); }

  // Column index of a position label, or -1 if absent.
  std::int64_t find_position(std::int64_t label) const;
};

// Nonnegative weights over an ordered index set, summing to one.
struct ProbDist {
  std::vector<std::int64_t> support;
  RVector probs;

  double total() const { return probs.sum(); }
  double at(std::int64_t label) const;  // 0 for labels outside the support
  double mean() const;
  double variance() const;
};

// Initial (coin) state of a line walk: coin amplitudes plus start position.
// The unbiased one-parameter family sqrt(eta)|0> + e^{i alpha} sqrt(1-eta)|1>
// is a convenience constructor over the same storage.
struct InitSpec {
  CVector coin_amplitudes;  // length = coin dimension, unit norm
  std::int64_t start_position = 0;

  static InitSpec coin(Complex a0, Complex a1, std::int64_t start = 0);
  static InitSpec unbiased(double eta, double alpha_phase,
                           std::int64_t start = 0);
  void validate() const;  // unit norm within 1e-12
};

inline bool is_unitary(const CMatrix& u, double tol = kUnitarityTol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

void require_unitary(const CMatrix& u, double tol = kUnitarityTol);

}  // namespace qwalk
