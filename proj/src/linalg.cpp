#include "szlab/linalg.hpp"

#include <stdexcept>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace szlab::linalg {

namespace {
using MatrixXcd = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;

void check(lapack_int info, const char* what) {
    if (info != 0) throw std::runtime_error(std::string(what) + ": LAPACK info != 0");
}
}  // namespace

VectorXd singular_values(const MatrixXcd& m) {
    MatrixXcd a = m;  // destroyed by zgesdd
    const lapack_int rows = static_cast<lapack_int>(a.rows());
    const lapack_int cols = static_cast<lapack_int>(a.cols());
    VectorXd s(std::min(rows, cols));
    if (s.size() == 0) return s;
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows,
                                     s.data(), nullptr, 1, nullptr, 1);
    check(info, "singular_values");
    return s;
}

SvdLeft svd_left(const MatrixXcd& m) {
    MatrixXcd a = m;
    const lapack_int rows = static_cast<lapack_int>(a.rows());
    const lapack_int cols = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(rows, cols);
    SvdLeft out;
    out.values.resize(k);
    out.u.resize(rows, k);
    MatrixXcd vt(k, cols);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, a.data(), rows,
                                     out.values.data(), out.u.data(), rows, vt.data(), k);
    check(info, "svd_left");
    return out;
}

HermitianEig eigh(const MatrixXcd& m) {
    HermitianEig out;
    out.vectors = m;
    const lapack_int n = static_cast<lapack_int>(m.rows());
    out.values.resize(n);
    if (n == 0) return out;
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                     out.values.data());
    check(info, "eigh");
    return out;
}

double operator_norm(const MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    VectorXd s = singular_values(m);
    return s.size() ? s[0] : 0.0;
}

}  // namespace szlab::linalg
