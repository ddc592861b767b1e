#pragma once

#include "szlab/field.hpp"

namespace szlab {

struct ConservedQuantities {
    double mass = 0.0;      // Q = int |u|^2
    double momentum = 0.0;  // M = int conj(u) D u, D = -i d/dx
    double energy = 0.0;    // E = int |u|^4
};

// Q from the plain spectral sum (equals the physical-grid quadrature by Parseval),
// M from the frequency-weighted spectral sum, E from the quadrature of |u|^4 on
// the dealiased (2N) physical grid. These are the exact invariants of the
// semi-discrete flow: drift under time stepping measures integrator error only.
ConservedQuantities conserved_quantities(const SpectralField& u);

enum class NormKind { L2, L4, HomogeneousHalf, Sobolev };

// Sobolev order s is only read for NormKind::Sobolev.
double field_norm(const SpectralField& u, NormKind kind, double s = 0.0);

// Weighted inner product (1/2pi) int w(xi) uhat conj(vhat); weight (1+xi^2)^s.
Complex sobolev_inner(const SpectralField& u, const SpectralField& v, double s);

double h_half_norm(const SpectralField& u);  // paper H^{1/2} norm, weight (1+xi^2)^{1/2}

// pi E / (M Q). Throws on the zero field. Never exceeds 1 beyond rounding:
// the staggered-grid quadratures satisfy the sharp inequality pi E <= M Q exactly.
double gn_ratio(const SpectralField& u);

}  // namespace szlab
