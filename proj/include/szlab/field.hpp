#pragma once

#include <optional>

#include "szlab/fft.hpp"
#include "szlab/grid.hpp"

namespace szlab {

// Hardy-space field: complex amplitudes on the retained nonnegative spectral nodes.
// Amplitudes are line-calibrated samples of the Fourier transform
// uhat(xi) = int u(x) e^{-i xi x} dx, so physical samples are
// u(x_j) = (1/L) sum_k amps[k] e^{i xi_k x_j}. Negative-frequency content is zero
// by construction. Values are immutable after construction; the physical-sample
// cache is the only mutable state and is concurrency-guarded by value copies in
// parallel drivers.
class SpectralField {
  public:
    SpectralField() = default;
    SpectralField(const FrequencyGrid& grid, CVector amps);

    static SpectralField zero(const FrequencyGrid& grid);

    const FrequencyGrid& grid() const { return grid_; }
    const CVector& amps() const { return amps_; }
    int num_modes() const { return static_cast<int>(amps_.size()); }

    // Physical samples on the N spatial nodes (cached after first use).
    const CVector& physical() const;
    // Physical samples on a pad_factor*N grid over the same domain (dealiasing grid).
    CVector physical_padded(int pad_factor = 2) const;

    bool finite() const;
    double max_abs_physical() const;

    SpectralField with_amps(CVector amps) const { return SpectralField(grid_, std::move(amps)); }

  private:
    FrequencyGrid grid_;
    CVector amps_;
    mutable std::optional<CVector> physical_cache_;
};

// Spectral synthesis helpers shared by the transforms.
namespace detail {
// spectral -> physical on an np-point grid over [-L/2, L/2)
CVector synth_physical(const FrequencyGrid& grid, const CVector& amps, int np);
// physical (np-point grid) -> amplitudes at nodes (k+offset)*dxi, k = 0..kmax-1
CVector analyze_physical(const FrequencyGrid& grid, const CVector& samples, int kmax, double offset);
}  // namespace detail

// Szego projection of arbitrary physical samples on the grid's N spatial nodes:
// keeps the retained nonnegative modes, zeroes the strictly negative ones.
SpectralField project_szego(const FrequencyGrid& grid, const CVector& physical_samples);

// Projection of a field already in Hardy form is the identity.
SpectralField project_szego(const SpectralField& u);

struct GridMismatch : std::invalid_argument {
    GridMismatch() : std::invalid_argument("field grids do not match") {}
};

void require_same_grid(const SpectralField& a, const SpectralField& b);

}  // namespace szlab
