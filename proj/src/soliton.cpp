#include "szlab/soliton.hpp"

#include <cmath>

#include "szlab/dynamics.hpp"

namespace szlab {

SolitonParams::SolitonParams(Complex C, Complex p) : amplitude(C), pole(p) {
    if (!(p.imag() < 0.0)) throw std::invalid_argument("SolitonParams: Im p must be negative");
    a = std::abs(C);
    r = -p.imag();
    mass = kPi * a * a / r;
    momentum = kPi * a * a / (2.0 * r * r);
    energy = kPi * a * a * a * a / (2.0 * r * r * r);
    velocity = mass / kTwoPi;
    phase_rate = momentum / kTwoPi;
    hankel_value = a / (2.0 * r);
}

double traveling_wave_grid_residual(const SpectralField& u, double c, double omega) {
    SpectralField w = cubic_term(u);
    const FrequencyGrid& g = u.grid();
    CVector res(u.num_modes());
    for (int k = 0; k < res.size(); ++k)
        res[k] = c * g.node(k) * u.amps()[k] + omega * u.amps()[k] - w.amps()[k];
    double num = 0.0, den = 0.0;
    for (int k = 0; k < res.size(); ++k) {
        num += std::norm(res[k]);
        den += std::norm(u.amps()[k]);
    }
    return std::sqrt(num / den);
}

SolitonOnGrid make_soliton(Complex C, Complex p, const FrequencyGrid& grid) {
    SolitonOnGrid out;
    out.params = SolitonParams(C, p);
    out.field = out.params.symbol().synthesize(grid);
    ConservedQuantities q = conserved_quantities(out.field);
    out.grid_velocity = q.mass / kTwoPi;
    out.grid_phase_rate = q.momentum / kTwoPi;
    out.grid_residual = traveling_wave_grid_residual(out.field, out.grid_velocity, out.grid_phase_rate);
    if (out.grid_residual > 1e-6)
        throw std::runtime_error("make_soliton: grid cannot represent the soliton as a traveling wave");
    return out;
}

CircleSoliton make_circle_soliton(Complex C, Complex p_disk, const FrequencyGrid& grid) {
    if (!(std::abs(p_disk) > 1.0))
        throw std::invalid_argument("make_circle_soliton: |p_disk| must exceed 1");
    if (grid.staggered)
        throw std::invalid_argument("make_circle_soliton: requires a non-staggered grid");
    // C/(z - p) = -(C/p) sum_k (z/p)^k, z = e^{2 pi i x / L}; amplitudes are
    // line-calibrated, uhat_k = L a_k.
    CVector amps(grid.num_modes());
    Complex inv_p = 1.0 / p_disk;
    Complex coef = -C * inv_p * grid.domain_length;
    for (int k = 0; k < amps.size(); ++k) {
        amps[k] = coef;
        coef *= inv_p;
    }
    CircleSoliton out;
    out.field = SpectralField(grid, std::move(amps));
    SpectralField w = cubic_term(out.field);
    // mode-matching: xi_0 = 0 gives omega, mode 1 gives c
    const Complex u0 = out.field.amps()[0], u1 = out.field.amps()[1];
    const Complex w0 = w.amps()[0], w1 = w.amps()[1];
    out.phase_rate = (w0 / u0).real();
    out.velocity = ((w1 / u1).real() - out.phase_rate) / grid.node(1);
    out.residual = traveling_wave_grid_residual(out.field, out.velocity, out.phase_rate);
    return out;
}

SpectralField traveling_wave_reference(const SpectralField& u0, double c, double omega, double t) {
    const FrequencyGrid& g = u0.grid();
    CVector amps(u0.num_modes());
    for (int k = 0; k < amps.size(); ++k) {
        const double ph = -(omega + c * g.node(k)) * t;
        amps[k] = u0.amps()[k] * Complex(std::cos(ph), std::sin(ph));
    }
    return SpectralField(g, std::move(amps));
}

SpectralField traveling_wave_reference(const SpectralField& u0, const SolitonParams& p, double t) {
    return traveling_wave_reference(u0, p.velocity, p.phase_rate, t);
}

double deviation(const SpectralField& u, const SpectralField& reference, NormKind kind,
                 double sobolev_order) {
    require_same_grid(u, reference);
    SpectralField diff = u.with_amps(u.amps() - reference.amps());
    return field_norm(diff, kind, sobolev_order);
}

double peak_location(const SpectralField& u) {
    const CVector& p = u.physical();
    int best = 0;
    double best_val = -1.0;
    for (int j = 0; j < p.size(); ++j) {
        const double v = std::abs(p[j]);
        if (v > best_val) {
            best_val = v;
            best = j;
        }
    }
    return u.grid().xnode(best);
}

}  // namespace szlab
