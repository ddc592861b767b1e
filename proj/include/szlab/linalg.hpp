#pragma once

#include <Eigen/Dense>

namespace szlab::linalg {

// Singular values in descending order (LAPACK divide-and-conquer).
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

struct SvdLeft {
    Eigen::MatrixXcd u;      // left singular vectors, one per column
    Eigen::VectorXd values;  // descending
};
SvdLeft svd_left(const Eigen::MatrixXcd& m);

struct HermitianEig {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // columns
};
HermitianEig eigh(const Eigen::MatrixXcd& m);

double operator_norm(const Eigen::MatrixXcd& m);  // largest singular value

}  // namespace szlab::linalg
