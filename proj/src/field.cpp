#include "szlab/field.hpp"

#include <cmath>

namespace szlab {

SpectralField::SpectralField(const FrequencyGrid& grid, CVector amps)
    : grid_(grid), amps_(std::move(amps)) {
    if (amps_.size() != grid_.num_modes())
        throw std::invalid_argument("SpectralField: amplitude count != retained mode count");
}

SpectralField SpectralField::zero(const FrequencyGrid& grid) {
    return SpectralField(grid, CVector::Zero(grid.num_modes()));
}

namespace detail {

CVector synth_physical(const FrequencyGrid& grid, const CVector& amps, int np) {
    const int k_count = static_cast<int>(amps.size());
    const double o = grid.offset();
    CVector pre = CVector::Zero(np);
    for (int k = 0; k < k_count; ++k) {
        // e^{i xi_k x_j} = e^{-i pi (k+o)} e^{2 pi i j (k+o) / np}
        const double ph = -kPi * (k + o);
        pre[k % np] += amps[k] * Complex(std::cos(ph), std::sin(ph));
    }
    CVector out = fft::backward(pre);
    const double inv_l = 1.0 / grid.domain_length;
    if (o != 0.0) {
        for (int j = 0; j < np; ++j) {
            const double ph = kTwoPi * j * o / np;
            out[j] *= Complex(std::cos(ph), std::sin(ph)) * inv_l;
        }
    } else {
        out *= inv_l;
    }
    return out;
}

CVector analyze_physical(const FrequencyGrid& grid, const CVector& samples, int kmax, double offset) {
    const int np = static_cast<int>(samples.size());
    CVector in(np);
    if (offset != 0.0) {
        for (int j = 0; j < np; ++j) {
            const double ph = -kTwoPi * j * offset / np;
            in[j] = samples[j] * Complex(std::cos(ph), std::sin(ph));
        }
    } else {
        in = samples;
    }
    CVector bins = fft::forward(in);
    const double scale = grid.domain_length / np;
    CVector amps(kmax);
    for (int k = 0; k < kmax; ++k) {
        const double ph = kPi * (k + offset);
        amps[k] = bins[k % np] * Complex(std::cos(ph), std::sin(ph)) * scale;
    }
    return amps;
}

}  // namespace detail

const CVector& SpectralField::physical() const {
    if (!physical_cache_) physical_cache_ = detail::synth_physical(grid_, amps_, grid_.num_points);
    return *physical_cache_;
}

CVector SpectralField::physical_padded(int pad_factor) const {
    return detail::synth_physical(grid_, amps_, pad_factor * grid_.num_points);
}

bool SpectralField::finite() const {
    for (int k = 0; k < amps_.size(); ++k)
        if (!std::isfinite(amps_[k].real()) || !std::isfinite(amps_[k].imag())) return false;
    return true;
}

double SpectralField::max_abs_physical() const {
    const CVector& p = physical();
    double m = 0.0;
    for (int j = 0; j < p.size(); ++j) m = std::max(m, std::abs(p[j]));
    return m;
}

SpectralField project_szego(const FrequencyGrid& grid, const CVector& physical_samples) {
    if (physical_samples.size() != grid.num_points)
        throw GridMismatch();
    CVector amps = detail::analyze_physical(grid, physical_samples, grid.num_modes(), grid.offset());
    return SpectralField(grid, std::move(amps));
}

SpectralField project_szego(const SpectralField& u) { return u; }

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw GridMismatch();
}

}  // namespace szlab
