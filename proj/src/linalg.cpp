// polyadmm - ADMM for composite problems with polyhedral nonsmooth terms
// Copyright (c) 2026 polyadmm contributors
// Licensed under Apache 2.0

#include "polyadmm/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace polyadmm::linalg {

Mat orthonormal_range(const Mat& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat nullspace(const Mat& m, double tol) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat subspace_intersection(const Mat& q1, const Mat& q2, double tol) {
  const int n = static_cast<int>(q1.rows() > 0 ? q1.rows() : q2.rows());
  if (q1.cols() == 0 || q2.cols() == 0) return Mat(n, 0);
  // x lies in both spans iff (2I - P1 - P2) x = 0.
  Mat m = 2.0 * Mat::Identity(n, n);
  m -= q1 * q1.transpose();
  m -= q2 * q2.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  int cnt = 0;
  while (cnt < n && eig.eigenvalues()(cnt) < tol) ++cnt;
  return eig.eigenvectors().leftCols(cnt);
}

double min_eigenvalue(const Mat& sym) {
  if (sym.rows() == 0) return kInf;
  Eigen::SelfAdjointEigenSolver<Mat> eig(sym);
  return eig.eigenvalues()(0);
}

Vec lstsq(const Mat& a, const Vec& b) {
  if (a.rows() == 0 || a.cols() == 0) return Vec::Zero(a.cols());
  return a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

}  // namespace polyadmm::linalg
