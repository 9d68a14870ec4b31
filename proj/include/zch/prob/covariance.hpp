#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zch/prob/info.hpp"

namespace zch::prob {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Zero-mean jointly Gaussian model over named variables.
class CovarianceModel {
 public:
  CovarianceModel(std::vector<std::string> names, Eigen::MatrixXd cov)
      : names_(std::move(names)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() ||
        cov_.rows() != static_cast<Eigen::Index>(names_.size()))
      throw std::invalid_argument("covariance dimension mismatch");
    repair();
  }

  const std::vector<std::string>& names() const { return names_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable: " + name);
  }

  Eigen::MatrixXd submatrix(const std::vector<int>& idx) const {
    Eigen::MatrixXd m(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = cov_(idx[i], idx[j]);
    return m;
  }

 private:
  // Symmetrize, then clamp slightly negative eigenvalues; reject anything
  // below -1e-10.
  void repair() {
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("covariance not symmetric");
    cov_ = 0.5 * (cov_ + cov_.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-10)
      throw std::invalid_argument("covariance not PSD, min eigenvalue " +
                                  std::to_string(min_eig));
    if (min_eig < 0.0) {
      Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0);
      cov_ = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
    }
  }

  std::vector<std::string> names_;
  Eigen::MatrixXd cov_;
};

namespace detail {

// log det of a PD matrix via Cholesky; adds up to `jitter` on the diagonal
// before giving up.
inline double log_det_pd(Eigen::MatrixXd m, double jitter = 1e-12) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      double ld = 0.0;
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        ld += 2.0 * std::log(llt.matrixL()(i, i));
      return ld;
    }
    m.diagonal().array() += jitter;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  throw NumericalError("singular conditional covariance, condition number " +
                       std::to_string(cond));
}

}  // namespace detail

// I(a;b|c) = 1/2 log( det S_{a,c} det S_{b,c} / (det S_c det S_{a,b,c}) ).
inline double gaussian_mutual_information(const CovarianceModel& model,
                                          const std::vector<std::string>& a,
                                          const std::vector<std::string>& b,
                                          const std::vector<std::string>& c = {},
                                          LogBase base = LogBase::Bits) {
  auto idx = [&](std::initializer_list<const std::vector<std::string>*> groups) {
    std::vector<int> out;
    for (const auto* g : groups)
      for (const auto& n : *g) out.push_back(model.index_of(n));
    return out;
  };
  const double ld_ac = detail::log_det_pd(model.submatrix(idx({&a, &c})));
  const double ld_bc = detail::log_det_pd(model.submatrix(idx({&b, &c})));
  const double ld_abc = detail::log_det_pd(model.submatrix(idx({&a, &b, &c})));
  const double ld_c = c.empty() ? 0.0 : detail::log_det_pd(model.submatrix(idx({&c})));
  double mi = 0.5 * (ld_ac + ld_bc - ld_c - ld_abc);  // nats
  if (base == LogBase::Bits) mi /= std::log(2.0);
  return mi;
}

}  // namespace zch::prob
