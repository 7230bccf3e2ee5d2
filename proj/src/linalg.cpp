#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssr {

int dims_product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw ValidationError("subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  std::ostringstream os;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].invariant << " (|x| = " << issues[i].magnitude
       << " > " << issues[i].tolerance << ")";
  }
  return os.str();
}

DensityOperator PureState::density() const {
  return DensityOperator{amplitudes * amplitudes.adjoint(), dims};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  DensityOperator out{kron(a.matrix, b.matrix), a.dims};
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  return out;
}

PureState kron(const PureState& a, const PureState& b) {
  PureState out;
  out.amplitudes.resize(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    out.amplitudes.segment(i * b.dim(), b.dim()) = a.amplitudes(i) * b.amplitudes;
  out.dims = a.dims;
  out.dims.insert(out.dims.end(), b.dims.begin(), b.dims.end());
  return out;
}

namespace {

// Flat index from a subsystem multi-index, strides in row-major convention.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

// Offsets of every multi-index over the subsystems `subs` (in that order).
std::vector<int> offsets_over(const std::vector<int>& dims,
                              const std::vector<int>& strides,
                              const std::vector<int>& subs) {
  int total = 1;
  for (int s : subs) total *= dims[s];
  std::vector<int> offs(total, 0);
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    for (int k = static_cast<int>(subs.size()) - 1; k >= 0; --k) {
      const int d = dims[subs[k]];
      offs[flat] += (rem % d) * strides[subs[k]];
      rem /= d;
    }
  }
  return offs;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const int n = static_cast<int>(rho.dims.size());
  if (dims_product(rho.dims) != rho.dim() || rho.matrix.rows() != rho.matrix.cols())
    throw ValidationError("partial_trace: dims do not match matrix size");
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::unique(kept.begin(), kept.end()) != kept.end())
    throw ValidationError("partial_trace: duplicate subsystem index");
  if (kept.front() < 0 || kept.back() >= n)
    throw ValidationError("partial_trace: subsystem index out of range");

  std::vector<int> traced;
  for (int i = 0, k = 0; i < n; ++i) {
    if (k < static_cast<int>(kept.size()) && kept[k] == i)
      ++k;
    else
      traced.push_back(i);
  }

  const auto strides = strides_of(rho.dims);
  const auto keep_offs = offsets_over(rho.dims, strides, kept);
  const auto trace_offs = offsets_over(rho.dims, strides, traced);

  const int dk = static_cast<int>(keep_offs.size());
  DensityOperator out;
  out.matrix = Matrix::Zero(dk, dk);
  for (int s : kept) out.dims.push_back(rho.dims[s]);

  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (int t : trace_offs) sum += rho.matrix(keep_offs[a] + t, keep_offs[b] + t);
      out.matrix(a, b) = sum;
    }
  return out;
}

DensityOperator permute_subsystems(const DensityOperator& rho, const std::vector<int>& order) {
  const int n = static_cast<int>(rho.dims.size());
  if (static_cast<int>(order.size()) != n)
    throw ValidationError("permute_subsystems: order length mismatch");
  std::vector<bool> seen(n, false);
  for (int s : order) {
    if (s < 0 || s >= n || seen[s])
      throw ValidationError("permute_subsystems: order is not a permutation");
    seen[s] = true;
  }

  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = rho.dims[order[k]];
  const auto old_strides = strides_of(rho.dims);
  const int d = rho.dim();

  std::vector<int> map(d, 0);
  for (int flat = 0; flat < d; ++flat) {
    int rem = flat, old_flat = 0;
    for (int k = n - 1; k >= 0; --k) {
      old_flat += (rem % new_dims[k]) * old_strides[order[k]];
      rem /= new_dims[k];
    }
    map[flat] = old_flat;
  }

  DensityOperator out{Matrix(d, d), new_dims};
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.matrix(a, b) = rho.matrix(map[a], map[b]);
  return out;
}

Spectrum eig_hermitian(const Matrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("eig_hermitian: matrix not square");
  const double herm = max_abs(h - h.adjoint());
  if (herm > 1e-10)
    throw ValidationError("eig_hermitian: matrix not Hermitian (residual " +
                          std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw ValidationError("eig_hermitian: eigensolver failed");
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double entropy_bits(const RealVector& probabilities) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
  const Spectrum spec = eig_hermitian(rho.matrix);
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    double lam = spec.eigenvalues(i);
    if (lam < -kEntropyClampTol)
      throw ValidationError("von_neumann_entropy: eigenvalue " + std::to_string(lam) +
                            " below -1e-10, state is not positive semidefinite");
    if (lam <= 0.0) continue;
    s -= lam * std::log2(lam);
  }
  return s;
}

SchmidtForm schmidt_decompose(const PureState& psi, int cut) {
  const int n = static_cast<int>(psi.dims.size());
  if (cut < 1 || cut >= n)
    throw ValidationError("schmidt_decompose: cut must split dims into two nonempty groups");
  if (dims_product(psi.dims) != psi.dim())
    throw ValidationError("schmidt_decompose: dims do not match amplitude count");

  int da = 1, db = 1;
  for (int i = 0; i < cut; ++i) da *= psi.dims[i];
  for (int i = cut; i < n; ++i) db *= psi.dims[i];

  Matrix amp(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) amp(a, b) = psi.amplitudes(a * db + b);

  Eigen::JacobiSVD<Matrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  // amp = U Σ V†, so ψ = Σ_k s_k |u_k> ⊗ conj(|v_k>).
  out.right = svd.matrixV().conjugate();
  return out;
}

ValidationReport validate_density(const DensityOperator& rho) {
  ValidationReport report;
  if (rho.matrix.rows() != rho.matrix.cols()) {
    report.issues.push_back({"square", static_cast<double>(rho.matrix.rows() - rho.matrix.cols()), 0.0});
    return report;
  }
  if (dims_product(rho.dims) != rho.dim()) {
    report.issues.push_back({"dims-product", static_cast<double>(rho.dim()), 0.0});
    return report;
  }
  if (!rho.matrix.allFinite()) {
    report.issues.push_back({"finite-entries", std::numeric_limits<double>::infinity(), 0.0});
    return report;
  }

  const double herm = max_abs(rho.matrix - rho.matrix.adjoint());
  if (herm > kHermitianTol) report.issues.push_back({"hermitian", herm, kHermitianTol});

  const double tr = std::abs(rho.matrix.trace() - Complex(1.0, 0.0));
  if (tr > kTraceTol) report.issues.push_back({"unit-trace", tr, kTraceTol});

  if (herm <= 1e-8) {  // spectrum meaningless for grossly non-Hermitian input
    Eigen::SelfAdjointEigenSolver<Matrix> solver((rho.matrix + rho.matrix.adjoint()) / 2.0);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) report.issues.push_back({"positive-semidefinite", min_eig, kPsdTol});
  }
  return report;
}

}  // namespace ssr
