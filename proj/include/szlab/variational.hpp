#pragma once

#include <random>
#include <vector>

#include "szlab/dynamics.hpp"

namespace szlab {

// Target orbit C(a, r) = { alpha/(x - p) : |alpha| = a, Im p = -r } with its
// induced invariants q = pi a^2 / r, e = pi a^4 / (2 r^3) and the constrained
// minimum m = pi a^2 / (2 r^2) of the momentum (q m = pi e).
struct CylinderSpec {
    double a = 1.0;
    double r = 1.0;
    CylinderSpec() = default;
    CylinderSpec(double a_, double r_);
    double q() const { return kPi * a * a / r; }
    double e() const { return kPi * a * a * a * a / (2.0 * r * r * r); }
    double m_min() const { return kPi * a * a / (2.0 * r * r); }
};

struct CylinderDistance {
    double distance = 0.0;
    double theta = 0.0;
    double x0 = 0.0;
};

// min over theta, x0 of || v - e^{i theta} a/(x - x0 + i r) ||_{H^{1/2}}, paper
// weight (1 + xi^2)^{1/2}. Exact in theta; x0 by a full scan over grid shifts
// followed by golden-section refinement.
CylinderDistance cylinder_distance(const SpectralField& v, const CylinderSpec& spec);

struct MinimizeOptions {
    int max_iterations = 100000;
    double gradient_tolerance = 1e-8;
    double initial_step = 0.1;
    double projection_tolerance = 1e-12;
};

struct MinimizeResult {
    SpectralField minimizer;
    struct HistoryRow {
        int iteration;
        double momentum;
        double gradient_norm;
        double step;
    };
    std::vector<HistoryRow> history;
    bool converged = false;   // gradient norm reached tolerance
    bool stalled = false;     // no descent step available before tolerance
    double final_gradient_norm = 0.0;
    std::string message;
};

// Projected gradient descent on M over {Q = q_target, E = e_target}. The
// feasibility step is the closed-form two-parameter rescaling u -> beta u(gamma x)
// (Q -> beta^2 Q / gamma, E -> beta^4 E / gamma), realized spectrally by
// resampling; the descent direction is the Lagrangian gradient
// D u - l1 u - l2 Pi(|u|^2 u) with least-squares multipliers, and steps
// backtrack from 0.1 until M decreases after re-projection.
MinimizeResult minimize_momentum(double q_target, double e_target, const SpectralField& init,
                                 const MinimizeOptions& options = {});

// u(x) -> beta u(gamma x) on the same grid (spectral resampling).
SpectralField rescale_field(const SpectralField& u, double beta, double gamma);
// Repeated closed-form (beta, gamma) projection onto {Q = q, E = e}.
SpectralField project_constraints(const SpectralField& u, double q_target, double e_target,
                                  double tol = 1e-12, int max_rounds = 80);

struct StabilityReport {
    double delta = 0.0;          // H^{1/2} perturbation size
    std::vector<SimulationRecord::CylinderRow> series;
    double sup_distance = 0.0;
    double initial_distance = 0.0;
    bool bounded = true;         // growing = final-window mean > 2x first-window mean
    bool blew_up = false;
    std::string diagnostic;
};

// Simulates soliton + delta * g (g normalized in H^{1/2}) and logs the cylinder
// distance at snapshot times.
StabilityReport stability_experiment(const CylinderSpec& spec, const RationalSymbol& perturbation,
                                     double delta, double t_final, const SimulationConfig& numerics);

// Seeded random fields for corpora: a superposition of a few random lower-half
// poles (smooth, generic, well inside the band).
SpectralField random_smooth_field(const FrequencyGrid& grid, std::mt19937_64& rng);
// Random spectral data supported on modes [k_min, k_max] with an exponential envelope.
SpectralField random_band_limited_field(const FrequencyGrid& grid, std::mt19937_64& rng,
                                        int k_min, int k_max, double decay_rate, double amplitude);

}  // namespace szlab
