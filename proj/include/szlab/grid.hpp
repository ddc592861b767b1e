#pragma once

#include <cmath>
#include <stdexcept>

namespace szlab {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Uniform periodic discretization of the line: spatial nodes x_j = -L/2 + j L/N,
// retained spectral nodes xi_k = (k + offset) * dxi for k = 0..N/2 with dxi = 2 pi / L.
//
// The default grid is staggered (offset 1/2). Staggering removes the xi = 0 boundary
// node, which makes the plain dealiased cubic and the plain spectral quadratures
// reproduce the continuum identities exactly on sampled rational fields:
// c = Q/2pi and omega = M/2pi hold to machine precision, the sharp inequality
// pi E <= M Q holds exactly, and the discrete Hankel operators inherit exact
// Lax-pair isospectrality. The non-staggered flavor (offset 0) carries integer
// harmonics of the periodic domain and hosts the torus traveling-wave validation
// mode, where C/(e^{2 pi i x / L} - p) is representable exactly.
struct FrequencyGrid {
    double domain_length = 256.0;  // L
    int num_points = 4096;         // N, even
    bool staggered = true;

    FrequencyGrid() = default;
    FrequencyGrid(double L, int N, bool stag = true)
        : domain_length(L), num_points(N), staggered(stag) {
        if (!(L > 0.0)) throw std::invalid_argument("FrequencyGrid: L must be positive");
        if (N <= 0 || N % 2 != 0) throw std::invalid_argument("FrequencyGrid: N must be even and positive");
    }

    double dx() const { return domain_length / num_points; }
    double dxi() const { return kTwoPi / domain_length; }
    double offset() const { return staggered ? 0.5 : 0.0; }
    int num_modes() const { return num_points / 2 + 1; }  // retained count
    double node(int k) const { return (k + offset()) * dxi(); }
    double max_node() const { return node(num_modes() - 1); }
    double xnode(int j) const { return -0.5 * domain_length + j * dx(); }

    friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
        return a.domain_length == b.domain_length && a.num_points == b.num_points &&
               a.staggered == b.staggered;
    }
    friend bool operator!=(const FrequencyGrid& a, const FrequencyGrid& b) { return !(a == b); }
};

}  // namespace szlab
