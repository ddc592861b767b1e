#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace szlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

// Thin cache over FFTW complex transforms. Forward = e^{-i}, backward = e^{+i},
// both unnormalized. Plans are created once per size and reused; calls are
// serialized internally so the cache is safe to use from sweep workers.
namespace fft {

void forward(const Complex* in, Complex* out, int n);
void backward(const Complex* in, Complex* out, int n);

CVector forward(const CVector& in);
CVector backward(const CVector& in);

}  // namespace fft
}  // namespace szlab
