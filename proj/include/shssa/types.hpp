#pragma once

#include <complex>

#include <Eigen/Core>

namespace shssa {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Scalar field of the data and of the trajectory operator.
enum class Field { real, complex };

}  // namespace shssa
