#pragma once

#include <Eigen/Dense>
#include <vector>

#include "halfplane/boundary_expansion.hpp"
#include "halfplane/mapping.hpp"
#include "halfplane/offset_array.hpp"
#include "halfplane/series_kernels.hpp"

namespace halfplane {

/// Solver knobs. theta0 is in radians here; degrees exist only at the CLI.
struct SolverConfig {
  double theta0 = 0.349065850398866;  ///< default 20 degrees
  int N = 80;                         ///< series truncation order
  int M = 360;                        ///< collocation order (2M+1 nodes)
  double epsilon = 1e-16;             ///< increment stop threshold, max-norm
  double delta = 1e-12;               ///< I_k zeroing threshold
  int max_iter = 500;
  bool lanczos = true;

  void validate() const;
};

/// Converged spectral solution: the real coefficient sequence d_n together
/// with the derived one-sided families A_k, B_k, the area measure W and the
/// displacement pin constant C0. Immutable and safe to share across threads.
struct SpectralSolution {
  OffsetArray<double> d;  ///< index -N..N
  OffsetArray<double> A;  ///< A_k = sum_{n=-k}^{N} alpha_{n+k} d_{-n}
  OffsetArray<double> B;  ///< B_k = sum_{n=k}^{N} beta_{n-k} d_n
  double W = 0.0;
  double C0 = 0.0;
  double lambda = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> increment_norms;  ///< max|d^(q)| per iteration

  int order() const { return d.half(); }
};

/// Upper-triangular Toeplitz system for the negative-index unknowns
/// d_{-1}..d_{-N}: row 0 is the sum alpha_{n-1} d_{-n} constraint, rows
/// k = 1..N-1 carry entry alpha_{n-k-1} for n >= k+1.
Eigen::MatrixXd assemble_negative_system(const std::vector<double>& alpha,
                                         int N);

/// Counterpart for d_0..d_N: row 0 is the sum beta_{n+1} d_n constraint, rows
/// k = 1..N carry entry beta_{n-k+1} for n >= k; the diagonal is beta_1 = 1.
Eigen::MatrixXd assemble_positive_system(const std::vector<double>& beta,
                                         int N);

/// A_k, B_k over k in [-N, N] from a full coefficient vector d.
void ab_from_d(const OffsetArray<double>& d, const std::vector<double>& alpha,
               const std::vector<double>& beta, OffsetArray<double>& A,
               OffsetArray<double>& B);

/// C0 = sum_k (kappa A_{-k-1} + B_{-k-1})/k - sum_k (kappa A_{k-1} + B_{k-1})/k,
/// the integration constant pinning g(1) = 0.
double c0_constant(const OffsetArray<double>& A, const OffsetArray<double>& B,
                   int N, double kappa);

/// Pre-factorized iteration systems; the matrices are iteration-invariant,
/// only right-hand sides change across q.
class IterationSystems {
 public:
  IterationSystems(const std::vector<double>& alpha,
                   const std::vector<double>& beta, int N);

  /// Solves both systems; negative RHS has N entries (constraint row first),
  /// positive RHS has N+1. Returns the assembled increment d over [-N, N].
  OffsetArray<double> solve(const Eigen::VectorXd& rhs_negative,
                            const Eigen::VectorXd& rhs_positive) const;

  int order() const { return N_; }
  double rcond_negative() const { return rcond_neg_; }
  double rcond_positive() const { return rcond_pos_; }

 private:
  int N_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_neg_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_pos_;
  double rcond_neg_ = 0.0;
  double rcond_pos_ = 0.0;
};

/// Initial-guess right-hand sides (gravity load via J and the W constraint):
/// row 0 carries -W gamma/(1+kappa) resp. kappa W gamma/(1+kappa), row k
/// carries -k r^k J_{-k} resp. -k r^k J_k.
void initial_rhs(const RhsExpansion& rhs, double r, double W_gamma,
                 double kappa, int N, Eigen::VectorXd& rhs_negative,
                 Eigen::VectorXd& rhs_positive);

/// Iteration right-hand sides from the previous increment's A, B families;
/// constraint rows are zero, indices beyond [-N, N] count as zero.
void iterate_rhs(const OffsetArray<double>& A, const OffsetArray<double>& B,
                 const RhsExpansion& rhs, double r, int N,
                 Eigen::VectorXd& rhs_negative, Eigen::VectorXd& rhs_positive);

/// Full solve of the boundary-value problem for one mapping/material/config.
/// Non-convergence within max_iter (or detected divergence) returns the
/// best-effort accumulation with converged = false.
SpectralSolution solve(const Mapping& map, const MaterialParams& material,
                       const SolverConfig& config);

/// Variant reusing a precomputed RhsExpansion (I, J, W).
SpectralSolution solve(const Mapping& map, const MaterialParams& material,
                       const SolverConfig& config, const RhsExpansion& rhs);

}  // namespace halfplane
