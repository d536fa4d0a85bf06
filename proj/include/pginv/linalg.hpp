#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pginv/errors.hpp"

namespace pginv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Shared numerical policy. Singular values below rank_tolerance(sigma_max)
// are treated as zero everywhere rank matters; one tolerance for the whole
// repo keeps regularity verdicts consistent across modules.
inline constexpr double kRankRelTol = 1e-9;
inline constexpr double kRankAbsTol = 1e-12;  // used when sigma_max == 0
inline constexpr double kEigClusterGap = 1e-6;
inline constexpr double kDefaultTol = 1e-8;

inline double rank_tolerance(double sigma_max) {
  return sigma_max > 0.0 ? kRankRelTol * sigma_max : kRankAbsTol;
}

struct SvdResult {
  CMatrix u;                 // isometric columns
  RVector singular_values;   // non-increasing, non-negative
  CMatrix v;                 // isometric columns
};

struct HermEigResult {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // unitary, columns aligned with eigenvalues
};

struct LstsqResult {
  CMatrix x;        // minimum-Frobenius-norm minimizer of |a x - b|_F
  double residual;  // |a x - b|_F at the minimizer
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);

// Largest singular value.
double op_norm(const CMatrix& a);

double frob_norm(const CMatrix& a);

SvdResult svd(const CMatrix& a);

// Requires |a - a*| <= 1e-10 |a|.
HermEigResult herm_eig(const CMatrix& a);

LstsqResult lstsq(const CMatrix& a, const CMatrix& b);

// Moore-Penrose pseudoinverse with the shared rank tolerance. sigma_scale
// overrides the scale used for the rank cut (defaults to the local largest
// singular value); callers pass a global scale when the matrix is one block
// of a larger operator.
CMatrix pinv(const CMatrix& a);
CMatrix pinv(const CMatrix& a, double sigma_scale);

// Groups ascending values into clusters separated by more than `gap`.
// Returns index groups in ascending order.
std::vector<std::vector<int>> cluster_values(const RVector& ascending, double gap);

bool all_finite(const CMatrix& a);

}  // namespace pginv
