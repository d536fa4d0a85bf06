#include "pginv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <sstream>

namespace pginv {

bool all_finite(const CMatrix& a) {
  return a.allFinite();
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols()
       << " vs " << b.rows() << "x" << b.cols() << ")";
    throw ShapeError(os.str());
  }
  return a * b;
}

CMatrix adjoint(const CMatrix& a) {
  return a.adjoint();
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (!all_finite(a)) throw NumericError("op_norm: non-finite entries");
  Eigen::JacobiSVD<CMatrix> dec(a);
  return dec.singularValues().size() > 0 ? dec.singularValues()(0) : 0.0;
}

double frob_norm(const CMatrix& a) {
  return a.norm();
}

SvdResult svd(const CMatrix& a) {
  if (!all_finite(a)) throw NumericError("svd: non-finite entries");
  Eigen::JacobiSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    std::ostringstream os;
    os << "svd: did not converge within " << a.rows() * a.cols() << " sweeps";
    throw NumericError(os.str());
  }
  return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

HermEigResult herm_eig(const CMatrix& a) {
  if (!all_finite(a)) throw NumericError("herm_eig: non-finite entries");
  if (a.rows() != a.cols()) throw ShapeError("herm_eig: matrix must be square");
  const double scale = op_norm(a);
  const double dev = op_norm(a - a.adjoint());
  if (dev > 1e-10 * (scale > 0.0 ? scale : 1.0)) {
    std::ostringstream os;
    os << "herm_eig: input is not Hermitian (|a - a*| = " << dev << ")";
    throw PreconditionError(os.str());
  }
  // Symmetrize so roundoff in the input cannot leak into complex eigenvalues.
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> dec(h);
  if (dec.info() != Eigen::Success) {
    throw NumericError("herm_eig: eigensolver did not converge");
  }
  return HermEigResult{dec.eigenvalues(), dec.eigenvectors()};
}

CMatrix pinv(const CMatrix& a) {
  const SvdResult s = svd(a);
  const double smax = s.singular_values.size() > 0 ? s.singular_values(0) : 0.0;
  return pinv(a, smax);
}

CMatrix pinv(const CMatrix& a, double sigma_scale) {
  if (a.size() == 0) return CMatrix(a.cols(), a.rows());
  const SvdResult s = svd(a);
  const double tol = rank_tolerance(sigma_scale);
  RVector inv = RVector::Zero(s.singular_values.size());
  for (int i = 0; i < s.singular_values.size(); ++i) {
    if (s.singular_values(i) > tol) inv(i) = 1.0 / s.singular_values(i);
  }
  return s.v * inv.asDiagonal() * s.u.adjoint();
}

LstsqResult lstsq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "lstsq: row counts differ (" << a.rows() << " vs " << b.rows() << ")";
    throw ShapeError(os.str());
  }
  const CMatrix x = pinv(a) * b;
  const double res = frob_norm(a * x - b);
  return LstsqResult{x, res};
}

std::vector<std::vector<int>> cluster_values(const RVector& ascending, double gap) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < ascending.size(); ++i) {
    if (groups.empty() || ascending(i) - ascending(groups.back().back()) > gap) {
      groups.emplace_back();
    }
    groups.back().push_back(i);
  }
  return groups;
}

}  // namespace pginv
