#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "respf/types.hpp"

namespace respf {

/// Reversible finite-state rate matrix with invariant distribution mu.
/// Off-diagonal entries >= 0, rows sum to zero, mu_i Q_ij = mu_j Q_ji.
struct GeneratorMatrix {
  Matrix Q;
  Vector mu;

  Index size() const { return Q.rows(); }
  void validate(double tol = 1e-12) const;
};

/// Label map assigning each state a subsystem label; sigma(pi) for chains.
struct StatePartition {
  std::vector<int> labels;

  int n_labels() const;
  void validate(Index n_states) const;

  static StatePartition identity(Index n);
  static StatePartition single_class(Index n);
};

constexpr double kNoCoupling = std::numeric_limits<double>::infinity();

/// Full spectrum of -Q in the mu-weighted inner product. Eigenvalues
/// ascending with lambda_0 = 0; eigenvector columns mu-orthonormal.
struct SpectralReport {
  Vector eigenvalues;
  Matrix eigenvectors;
  double gap = 0.0;             // lambda_1 (lambda_*)
  double subsystem_gap = kNoCoupling;
  Vector coupling_norms;        // per eigenvector, filled by subsystem analysis
};

SpectralReport spectrum(const GeneratorMatrix& gen);

/// E_mu[f | sigma(pi)]: on each label class the mu-weighted class average.
Vector conditional_expectation(const Vector& f, const StatePartition& part,
                               const Vector& mu);

struct SubsystemGapResult {
  double lambda_pi = kNoCoupling;  // kNoCoupling when no eigenvalue couples
  Vector coupling_norms;           // per eigenvector, aligned with eigenvalues
};

/// Smallest nonzero eigenvalue of -Q whose eigenspace has a nonvanishing
/// conditional expectation onto sigma(pi). Eigenvalues within 1e-9 relative
/// are grouped and the group is tested as a subspace (Hilbert-Schmidt norm
/// of the projected eigenbasis), so the result is basis-independent under
/// degeneracy.
SubsystemGapResult subsystem_spectral_gap(const GeneratorMatrix& gen,
                                          const StatePartition& part,
                                          double tol = 1e-9);

/// Shared coupling analysis for any reversible spectrum (chains and
/// grid-discretized generators): modes need not exhaust the spectrum, in
/// which case a missing coupling is an error rather than kNoCoupling.
SubsystemGapResult subsystem_gap_from_modes(const Vector& eigenvalues,
                                            const Matrix& eigenvectors,
                                            const Vector& mu,
                                            const std::vector<int>& labels,
                                            double tol,
                                            bool spectrum_complete);

/// e^{tQ} f by spectral decomposition (exact for reversible Q). t >= 0.
Vector semigroup_apply(const GeneratorMatrix& gen, double t, const Vector& f);

struct DecayReport {
  std::vector<double> times;
  std::vector<double> lhs;        // <(P_t f)^2>_mu
  std::vector<double> rhs;        // e^{-2 lambda_pi t} <f^2>_mu
  std::vector<double> exponents;  // measured -log(lhs/<f^2>)/(2t)
  double lambda_pi = 0.0;
  bool all_hold = false;
};

/// Checks <(P_t f)^2> <= e^{-2 lambda_pi t} <f^2> (1 + 1e-10) at every t for
/// pi-measurable mean-zero f. Precondition violations raise DataError.
DecayReport verify_decay(const GeneratorMatrix& gen, const StatePartition& part,
                         const Vector& f, const std::vector<double>& times);

/// Plain-text chain format: first line n, then n rows of Q, the mu row and
/// the label row; '#' starts a comment.
std::pair<GeneratorMatrix, StatePartition> read_chain_file(std::istream& in);
std::pair<GeneratorMatrix, StatePartition> read_chain_file(const std::string& path);
void write_chain_file(std::ostream& out, const GeneratorMatrix& gen,
                      const StatePartition& part);

/// SpectralReport rows as CSV: lambda,coupling_norm,in_subsystem.
std::string spectral_report_csv(const SpectralReport& report, double tol);

/// The 4-state two-block example generator (rates 8/10, 1/10, 9/10) and its
/// {1,4} | {2,3} partition.
GeneratorMatrix chain_example_generator();
StatePartition chain_example_partition();

}  // namespace respf
