#include "respf/chain.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "respf/csv.hpp"

namespace respf {

void GeneratorMatrix::validate(double tol) const {
  const Index n = Q.rows();
  if (Q.cols() != n || n < 1) throw ConfigError("Q must be square");
  if (mu.size() != n) throw ConfigError("mu size must match Q");
  for (Index i = 0; i < n; ++i) {
    if (!(mu[i] > 0)) throw NumericError("invariant distribution must be positive");
    double row = 0;
    for (Index j = 0; j < n; ++j) {
      if (i != j && Q(i, j) < -tol)
        throw NumericError("off-diagonal rate is negative");
      row += Q(i, j);
    }
    if (std::abs(row) > tol) throw NumericError("row sums of Q must vanish");
  }
  if (std::abs(mu.sum() - 1.0) > 1e-10)
    throw NumericError("invariant distribution must sum to 1");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (std::abs(mu[i] * Q(i, j) - mu[j] * Q(j, i)) > tol)
        throw NumericError("detailed balance violated: symmetrization invalid");
}

int StatePartition::n_labels() const {
  std::set<int> s(labels.begin(), labels.end());
  return static_cast<int>(s.size());
}

void StatePartition::validate(Index n_states) const {
  if (static_cast<Index>(labels.size()) != n_states)
    throw ConfigError("partition labels must cover every state");
  if (labels.empty()) throw ConfigError("partition needs at least one label");
}

StatePartition StatePartition::identity(Index n) {
  StatePartition p;
  p.labels.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p.labels[static_cast<std::size_t>(i)] = static_cast<int>(i);
  return p;
}

StatePartition StatePartition::single_class(Index n) {
  StatePartition p;
  p.labels.assign(static_cast<std::size_t>(n), 0);
  return p;
}

SpectralReport spectrum(const GeneratorMatrix& gen) {
  gen.validate();
  const Index n = gen.size();
  const Vector s = gen.mu.array().sqrt();
  // H = -D^{1/2} Q D^{-1/2} is symmetric under detailed balance.
  Matrix H(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) H(i, j) = -gen.Q(i, j) * s[i] / s[j];
  H = 0.5 * (H + H.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigen decomposition failed");
  SpectralReport report;
  report.eigenvalues = solver.eigenvalues();
  // map back: phi = psi / sqrt(mu) columns are mu-orthonormal
  report.eigenvectors = solver.eigenvectors().array().colwise() / s.array();
  report.gap = n > 1 ? report.eigenvalues[1] : 0.0;
  report.coupling_norms = Vector::Zero(n);
  return report;
}

Vector conditional_expectation(const Vector& f, const StatePartition& part,
                               const Vector& mu) {
  part.validate(f.size());
  const int max_label =
      *std::max_element(part.labels.begin(), part.labels.end());
  const int min_label =
      *std::min_element(part.labels.begin(), part.labels.end());
  if (min_label < 0) throw ConfigError("labels must be nonnegative");
  Vector num = Vector::Zero(max_label + 1), den = Vector::Zero(max_label + 1);
  for (Index i = 0; i < f.size(); ++i) {
    const int l = part.labels[static_cast<std::size_t>(i)];
    num[l] += mu[i] * f[i];
    den[l] += mu[i];
  }
  Vector out(f.size());
  for (Index i = 0; i < f.size(); ++i) {
    const int l = part.labels[static_cast<std::size_t>(i)];
    out[i] = num[l] / den[l];
  }
  return out;
}

SubsystemGapResult subsystem_gap_from_modes(const Vector& eigenvalues,
                                            const Matrix& eigenvectors,
                                            const Vector& mu,
                                            const std::vector<int>& labels,
                                            double tol,
                                            bool spectrum_complete) {
  if (!(tol > 0)) throw ConfigError("coupling tolerance must be positive");
  StatePartition part;
  part.labels = labels;
  const Index n_modes = eigenvalues.size();
  SubsystemGapResult res;
  res.coupling_norms = Vector::Zero(n_modes);
  for (Index i = 0; i < n_modes; ++i) {
    const Vector ce =
        conditional_expectation(eigenvectors.col(i), part, mu);
    res.coupling_norms[i] = std::sqrt((mu.array() * ce.array().square()).sum());
  }
  // group eigenvalues within 1e-9 relative; test Eig(lambda) as a subspace
  const double scale = std::max(1.0, std::abs(eigenvalues[n_modes - 1]));
  Index i = 0;
  while (i < n_modes) {
    Index j = i;
    double hs2 = 0.0;
    while (j < n_modes &&
           std::abs(eigenvalues[j] - eigenvalues[i]) <= 1e-9 * scale) {
      hs2 += res.coupling_norms[j] * res.coupling_norms[j];
      ++j;
    }
    const double lambda = eigenvalues[i];
    if (lambda > 1e-12 * scale && std::sqrt(hs2) > tol) {
      res.lambda_pi = lambda;
      return res;
    }
    i = j;
  }
  if (!spectrum_complete)
    throw NumericError(
        "no coupled eigenvalue inside the computed spectral window");
  res.lambda_pi = kNoCoupling;
  return res;
}

SubsystemGapResult subsystem_spectral_gap(const GeneratorMatrix& gen,
                                          const StatePartition& part,
                                          double tol) {
  part.validate(gen.size());
  const SpectralReport rep = spectrum(gen);
  return subsystem_gap_from_modes(rep.eigenvalues, rep.eigenvectors, gen.mu,
                                  part.labels, tol, true);
}

Vector semigroup_apply(const GeneratorMatrix& gen, double t, const Vector& f) {
  if (t < 0) throw ConfigError("semigroup time must be >= 0");
  const SpectralReport rep = spectrum(gen);
  const Index n = gen.size();
  Vector out = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    const double coeff =
        (gen.mu.array() * rep.eigenvectors.col(k).array() * f.array()).sum();
    out += std::exp(-rep.eigenvalues[k] * t) * coeff * rep.eigenvectors.col(k);
  }
  return out;
}

DecayReport verify_decay(const GeneratorMatrix& gen, const StatePartition& part,
                         const Vector& f, const std::vector<double>& times) {
  const Vector ce = conditional_expectation(f, part, gen.mu);
  if ((ce - f).cwiseAbs().maxCoeff() > 1e-10)
    throw DataError("observable is not pi-measurable");
  if (std::abs(gen.mu.dot(f)) > 1e-12)
    throw DataError("observable must be mean-zero under mu");
  const auto gap = subsystem_spectral_gap(gen, part);
  DecayReport report;
  report.lambda_pi = gap.lambda_pi;
  const double f2 = (gen.mu.array() * f.array().square()).sum();
  report.all_hold = true;
  for (double t : times) {
    const Vector pf = semigroup_apply(gen, t, f);
    const double lhs = (gen.mu.array() * pf.array().square()).sum();
    double rhs;
    if (t == 0.0)
      rhs = f2;
    else if (gap.lambda_pi == kNoCoupling)
      rhs = 0.0;
    else
      rhs = std::exp(-2.0 * gap.lambda_pi * t) * f2;
    report.times.push_back(t);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    report.exponents.push_back(
        (t > 0 && lhs > 0 && f2 > 0) ? -std::log(lhs / f2) / (2 * t) : 0.0);
    if (lhs > rhs * (1.0 + 1e-10) + 1e-300) report.all_hold = false;
  }
  return report;
}

namespace {

std::vector<double> read_numbers_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<double> vals;
    double x;
    while (ss >> x) vals.push_back(x);
    if (!vals.empty()) return vals;
  }
  throw DataError("chain file ended early");
}

}  // namespace

std::pair<GeneratorMatrix, StatePartition> read_chain_file(std::istream& in) {
  const auto first = read_numbers_line(in);
  const Index n = static_cast<Index>(first.at(0));
  if (n < 1) throw DataError("chain file: state count must be positive");
  GeneratorMatrix gen;
  gen.Q.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto row = read_numbers_line(in);
    if (static_cast<Index>(row.size()) != n)
      throw DataError("chain file: bad Q row length");
    for (Index j = 0; j < n; ++j) gen.Q(i, j) = row[static_cast<std::size_t>(j)];
  }
  const auto murow = read_numbers_line(in);
  if (static_cast<Index>(murow.size()) != n)
    throw DataError("chain file: bad mu row length");
  gen.mu.resize(n);
  for (Index i = 0; i < n; ++i) gen.mu[i] = murow[static_cast<std::size_t>(i)];
  const auto labrow = read_numbers_line(in);
  if (static_cast<Index>(labrow.size()) != n)
    throw DataError("chain file: bad label row length");
  StatePartition part;
  for (double l : labrow) part.labels.push_back(static_cast<int>(l));
  gen.validate();
  part.validate(n);
  return {gen, part};
}

std::pair<GeneratorMatrix, StatePartition> read_chain_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open chain file: " + path);
  return read_chain_file(in);
}

void write_chain_file(std::ostream& out, const GeneratorMatrix& gen,
                      const StatePartition& part) {
  const Index n = gen.size();
  out << n << "\n";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      out << format_g17(gen.Q(i, j)) << (j + 1 < n ? " " : "\n");
  }
  for (Index i = 0; i < n; ++i)
    out << format_g17(gen.mu[i]) << (i + 1 < n ? " " : "\n");
  for (Index i = 0; i < n; ++i)
    out << part.labels[static_cast<std::size_t>(i)] << (i + 1 < n ? " " : "\n");
}

std::string spectral_report_csv(const SpectralReport& report, double tol) {
  std::ostringstream out;
  out << "lambda,coupling_norm,in_subsystem\n";
  for (Index i = 0; i < report.eigenvalues.size(); ++i) {
    out << format_g17(report.eigenvalues[i]) << ','
        << format_g17(report.coupling_norms[i]) << ','
        << (report.coupling_norms[i] > tol ? 1 : 0) << "\n";
  }
  return out.str();
}

GeneratorMatrix chain_example_generator() {
  GeneratorMatrix gen;
  gen.Q.resize(4, 4);
  gen.Q << -0.9, 0.8, 0.0, 0.1,
            0.8, -0.9, 0.1, 0.0,
            0.0, 0.1, -1.0, 0.9,
            0.1, 0.0, 0.9, -1.0;
  gen.mu = Vector::Constant(4, 0.25);
  return gen;
}

StatePartition chain_example_partition() {
  StatePartition part;
  part.labels = {0, 1, 1, 0};  // {1,4} vs {2,3}
  return part;
}

}  // namespace respf
