#include "szlab/dynamics.hpp"

#include <cmath>

#include "szlab/io.hpp"

namespace szlab {

SpectralField cubic_term(const SpectralField& u) {
    const FrequencyGrid& g = u.grid();
    const int np = 2 * g.num_points;
    CVector up = u.physical_padded(2);
    for (int j = 0; j < np; ++j) up[j] *= std::norm(up[j]);
    CVector amps = detail::analyze_physical(g, up, g.num_modes(), g.offset());
    return SpectralField(g, std::move(amps));
}

SpectralField rhs(const SpectralField& u) {
    SpectralField w = cubic_term(u);
    return u.with_amps(Complex(0.0, -1.0) * w.amps());
}

SpectralField step_rk4(const SpectralField& u, double dt) {
    CVector k1 = rhs(u).amps();
    CVector k2 = rhs(u.with_amps(u.amps() + 0.5 * dt * k1)).amps();
    CVector k3 = rhs(u.with_amps(u.amps() + 0.5 * dt * k2)).amps();
    CVector k4 = rhs(u.with_amps(u.amps() + dt * k3)).amps();
    return u.with_amps(u.amps() + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

void SimulationConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(t_final >= dt)) throw std::invalid_argument("config: t_final must be >= dt");
    if (snapshot_stride < 1) throw std::invalid_argument("config: snapshot_stride must be >= 1");
    if (log_stride < 1) throw std::invalid_argument("config: log_stride must be >= 1");
    FrequencyGrid g(domain_length, num_points, staggered);  // validates L, N
    (void)g;
}

SpectralField build_initial_condition(const InitialCondition& ic, const FrequencyGrid& grid) {
    switch (ic.kind) {
        case InitialCondition::Kind::Zero:
            return SpectralField::zero(grid);
        case InitialCondition::Kind::Soliton:
            return make_soliton(ic.amplitude, ic.pole, grid).field;
        case InitialCondition::Kind::Rational:
            return RationalSymbol(ic.rational).synthesize(grid);
        case InitialCondition::Kind::SolitonPerturbed: {
            SpectralField base = make_soliton(ic.amplitude, ic.pole, grid).field;
            SpectralField g = RationalSymbol(ic.perturbation).synthesize(grid);
            const double nrm = h_half_norm(g);
            if (nrm <= 0.0) throw std::invalid_argument("perturbation profile vanishes");
            return base.with_amps(base.amps() + (ic.delta / nrm) * g.amps());
        }
        case InitialCondition::Kind::Circle:
            return make_circle_soliton(ic.amplitude, ic.pole, grid).field;
        case InitialCondition::Kind::File:
            return io::read_field(ic.path);
    }
    throw std::invalid_argument("unknown initial condition");
}

SimulationRecord simulate(const SimulationConfig& config) {
    return simulate(config, {});
}

SimulationRecord simulate(const SimulationConfig& config,
                          const std::function<void(double, const SpectralField&, SimulationRecord&)>& on_snapshot) {
    config.validate();
    const FrequencyGrid grid = config.grid();
    SpectralField u = build_initial_condition(config.initial, grid);

    const double m0 = u.max_abs_physical();
    if (config.dt * m0 * m0 > 0.2)
        throw std::invalid_argument("config: stability guard dt * max|u0|^2 <= 0.2 violated");

    const long steps = std::lround(config.t_final / config.dt);
    SimulationRecord rec;
    auto log_state = [&](double t, const SpectralField& v) {
        ConservedQuantities q = conserved_quantities(v);
        rec.logs.push_back({t, q.mass, q.momentum, q.energy});
        return std::isfinite(q.mass) && std::isfinite(q.momentum) && std::isfinite(q.energy);
    };
    auto snap = [&](double t, const SpectralField& v) {
        rec.snapshot_times.push_back(t);
        rec.snapshots.push_back(v);
        if (on_snapshot) on_snapshot(t, v, rec);
    };

    log_state(0.0, u);
    snap(0.0, u);
    for (long i = 1; i <= steps; ++i) {
        u = step_rk4(u, config.dt);
        const double t = i * config.dt;
        const bool log_now = (i % config.log_stride == 0) || i == steps;
        if (log_now) {
            if (!u.finite() || !log_state(t, u)) {
                rec.blew_up = true;
                rec.diagnostic = "non-finite state at t = " + std::to_string(t);
                break;
            }
            const double m = u.max_abs_physical();
            if (m > 1e6) {
                rec.blew_up = true;
                rec.diagnostic = "blow-up flag: max|u| = " + std::to_string(m) + " at t = " + std::to_string(t);
                break;
            }
        }
        if (i % config.snapshot_stride == 0 || i == steps) snap(t, u);
    }
    return rec;
}

SimulationRecord::Drift SimulationRecord::relative_drift() const {
    Drift d{0.0, 0.0, 0.0};
    if (logs.empty()) return d;
    const ConservationRow& r0 = logs.front();
    for (const auto& r : logs) {
        if (r0.mass > 0.0) d.mass = std::max(d.mass, std::abs(r.mass - r0.mass) / r0.mass);
        if (r0.momentum > 0.0)
            d.momentum = std::max(d.momentum, std::abs(r.momentum - r0.momentum) / r0.momentum);
        if (r0.energy > 0.0) d.energy = std::max(d.energy, std::abs(r.energy - r0.energy) / r0.energy);
    }
    return d;
}

}  // namespace szlab
