#pragma once

#include <functional>
#include <string>
#include <vector>

#include "szlab/soliton.hpp"

namespace szlab {

// -i Pi(|u|^2 u): cubic formed pointwise on the factor-2 zero-padded physical
// grid (full dealiasing for a cubic nonlinearity), transformed back and
// truncated to the retained band. Hardy support is preserved by construction.
SpectralField rhs(const SpectralField& u);

// Pi(|u|^2 u) itself (the dealiased cubic without the -i).
SpectralField cubic_term(const SpectralField& u);

// Classical fourth-order Runge-Kutta step; dt may be negative (reverse runs).
SpectralField step_rk4(const SpectralField& u, double dt);

struct InitialCondition {
    enum class Kind { Soliton, Rational, SolitonPerturbed, Circle, Zero, File } kind = Kind::Soliton;
    Complex amplitude{1.0, 0.0};       // soliton / circle C
    Complex pole{0.0, -1.0};           // soliton p | circle p_disk
    std::vector<PoleTerm> rational;    // rational initial data
    // soliton + delta * g, g a normalized rational profile (H^{1/2} normalization)
    double delta = 0.0;
    std::vector<PoleTerm> perturbation;
    std::string path;                  // file initial data (hardy-core text format)
};

struct MonitorToggles {
    bool conservation = true;
    int hankel_top_k = 0;        // > 0: record snapshots for spectral post-passes
    bool cylinder_distance = false;
    double cylinder_a = 1.0;
    double cylinder_r = 1.0;
};

struct SimulationConfig {
    double domain_length = 256.0;
    int num_points = 4096;
    bool staggered = true;
    double dt = 1e-3;
    double t_final = 10.0;
    int snapshot_stride = 1000;  // steps between stored snapshots
    int log_stride = 10;         // steps between conservation-log rows
    InitialCondition initial;
    MonitorToggles monitors;

    FrequencyGrid grid() const { return FrequencyGrid(domain_length, num_points, staggered); }
    void validate() const;  // throws std::invalid_argument on violations
};

struct ConservationRow {
    double t;
    double mass, momentum, energy;
};

struct SimulationRecord {
    std::vector<double> snapshot_times;
    std::vector<SpectralField> snapshots;
    std::vector<ConservationRow> logs;
    std::vector<std::vector<double>> hankel_values;  // per snapshot, descending
    struct CylinderRow {
        double t, distance, theta, x0;
    };
    std::vector<CylinderRow> cylinder;
    bool blew_up = false;
    std::string diagnostic;

    struct Drift {
        double mass, momentum, energy;
    };
    Drift relative_drift() const;  // max over logged rows vs the t = 0 row
};

SpectralField build_initial_condition(const InitialCondition& ic, const FrequencyGrid& grid);

// Integrates the configured run. The stability guard dt * max|u0|^2 <= 0.2 is
// checked up front; max|u| > 1e6 flags numerical blow-up and stops the run
// (the equation itself is globally well-posed, so the flag always means a
// discretization failure, never physics).
SimulationRecord simulate(const SimulationConfig& config);

// Hook run after each stored snapshot (used by drivers for extra monitors).
SimulationRecord simulate(const SimulationConfig& config,
                          const std::function<void(double, const SpectralField&, SimulationRecord&)>& on_snapshot);

}  // namespace szlab
