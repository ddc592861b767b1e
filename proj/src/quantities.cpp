#include "szlab/quantities.hpp"

#include <cmath>
#include <stdexcept>

namespace szlab {

ConservedQuantities conserved_quantities(const SpectralField& u) {
    const FrequencyGrid& g = u.grid();
    const CVector& a = u.amps();
    const double w = g.dxi() / kTwoPi;
    ConservedQuantities out;
    for (int k = 0; k < a.size(); ++k) {
        const double m2 = std::norm(a[k]);
        out.mass += w * m2;
        out.momentum += w * g.node(k) * m2;
    }
    const int pad = 2;
    CVector p = u.physical_padded(pad);
    const double dxp = g.domain_length / p.size();
    for (int j = 0; j < p.size(); ++j) {
        const double m2 = std::norm(p[j]);
        out.energy += dxp * m2 * m2;
    }
    return out;
}

double field_norm(const SpectralField& u, NormKind kind, double s) {
    const FrequencyGrid& g = u.grid();
    const CVector& a = u.amps();
    const double w = g.dxi() / kTwoPi;
    switch (kind) {
        case NormKind::L2: {
            double acc = 0.0;
            for (int k = 0; k < a.size(); ++k) acc += w * std::norm(a[k]);
            return std::sqrt(acc);
        }
        case NormKind::L4:
            return std::pow(conserved_quantities(u).energy, 0.25);
        case NormKind::HomogeneousHalf: {
            double acc = 0.0;
            for (int k = 0; k < a.size(); ++k) acc += w * g.node(k) * std::norm(a[k]);
            return std::sqrt(acc);
        }
        case NormKind::Sobolev: {
            if (s < 0.0) throw std::invalid_argument("field_norm: sobolev order must be >= 0");
            double acc = 0.0;
            for (int k = 0; k < a.size(); ++k) {
                const double xi = g.node(k);
                acc += w * std::pow(1.0 + xi * xi, s) * std::norm(a[k]);
            }
            return std::sqrt(acc);
        }
    }
    throw std::invalid_argument("field_norm: unknown kind");
}

Complex sobolev_inner(const SpectralField& u, const SpectralField& v, double s) {
    require_same_grid(u, v);
    const FrequencyGrid& g = u.grid();
    const double w = g.dxi() / kTwoPi;
    Complex acc = 0.0;
    for (int k = 0; k < u.amps().size(); ++k) {
        const double xi = g.node(k);
        acc += w * std::pow(1.0 + xi * xi, s) * u.amps()[k] * std::conj(v.amps()[k]);
    }
    return acc;
}

double h_half_norm(const SpectralField& u) { return field_norm(u, NormKind::Sobolev, 0.5); }

double gn_ratio(const SpectralField& u) {
    ConservedQuantities q = conserved_quantities(u);
    if (q.mass <= 0.0) throw std::invalid_argument("gn_ratio: zero field");
    return kPi * q.energy / (q.momentum * q.mass);
}

}  // namespace szlab
