#pragma once

#include "szlab/quantities.hpp"
#include "szlab/rational.hpp"

namespace szlab {

// Traveling-wave data for u0 = C/(z - p), Im p < 0. Derived values are the
// closed forms: Q = pi a^2 / r, M = pi a^2 / (2 r^2), E = pi a^4 / (2 r^3),
// c = Q / 2pi, omega = M / 2pi, and the single Hankel singular value a / (2 r).
// omega = M/2pi is adopted over the alternative printed form a^4/(4 r^3); the
// residue oracle (traveling_wave_oracle_residual) vanishes only for M/2pi.
struct SolitonParams {
    Complex amplitude;  // C
    Complex pole;       // p
    double a = 0.0, r = 0.0;
    double mass = 0.0, momentum = 0.0, energy = 0.0;  // Q, M, E
    double velocity = 0.0, phase_rate = 0.0;          // c, omega
    double hankel_value = 0.0;                        // s

    SolitonParams() = default;
    SolitonParams(Complex C, Complex p);

    RationalSymbol symbol() const { return RationalSymbol::single_pole(amplitude, pole); }
};

struct SolitonOnGrid {
    SolitonParams params;
    SpectralField field;
    // Grid-matched pair (Q_h/2pi, M_h/2pi) from the field's measured invariants;
    // the sampled soliton solves the discrete traveling-wave equation with these
    // exactly, and they converge to params.velocity/phase_rate at O((r/L)^2).
    double grid_velocity = 0.0;
    double grid_phase_rate = 0.0;
    double grid_residual = 0.0;  // discrete traveling-wave equation residual
};

// Synthesizes C/(z - p) on the grid and verifies the discrete traveling-wave
// relation. Throws if Im p >= 0 or the grid cannot resolve the pole.
SolitonOnGrid make_soliton(Complex C, Complex p, const FrequencyGrid& grid);

// Relative L2 residual of c D u + omega u - Pi(|u|^2 u) evaluated with the
// grid's dealiased cubic.
double traveling_wave_grid_residual(const SpectralField& u, double c, double omega);

struct CircleSoliton {
    double velocity = 0.0;
    double phase_rate = 0.0;
    SpectralField field;
    double residual = 0.0;  // full-band traveling-wave residual with (c, omega)
};

// Torus validation mode: u0(x) = C / (e^{2 pi i x / L} - p_disk) with |p_disk| > 1,
// expanded in the integer harmonics of the non-staggered grid. (c, omega) are
// recovered by matching the k = 0, 1 mode equations of the discrete flow; the
// paper states no closed form for them on the torus.
CircleSoliton make_circle_soliton(Complex C, Complex p_disk, const FrequencyGrid& grid);

// e^{-i omega t} u0(x - c t) realized as exact spectral phase twists.
SpectralField traveling_wave_reference(const SpectralField& u0, double c, double omega, double t);
SpectralField traveling_wave_reference(const SpectralField& u0, const SolitonParams& p, double t);

// || u - reference || in the requested norm; grids must match.
double deviation(const SpectralField& u, const SpectralField& reference, NormKind kind,
                 double sobolev_order = 0.0);

// Location of max |u| on the spatial nodes.
double peak_location(const SpectralField& u);

}  // namespace szlab
