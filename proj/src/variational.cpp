#include "szlab/variational.hpp"

#include <cmath>

namespace szlab {
namespace {

Complex weighted_inner(const SpectralField& a, const SpectralField& b) {
    return sobolev_inner(a, b, 0.5);
}

// <v, phi_{x0}>_{H^{1/2}} as a function of x0, evaluable anywhere.
struct CylinderCorrelator {
    const FrequencyGrid* grid;
    CVector weighted;  // (dxi/2pi) (1+xi^2)^{1/2} vhat conj(phi0hat)
    Complex at(double x0) const {
        Complex acc = 0.0;
        for (int k = 0; k < weighted.size(); ++k) {
            const double ph = grid->node(k) * x0;
            acc += weighted[k] * Complex(std::cos(ph), std::sin(ph));
        }
        return acc;
    }
};

}  // namespace

CylinderSpec::CylinderSpec(double a_, double r_) : a(a_), r(r_) {
    if (!(a > 0.0) || !(r > 0.0)) throw std::invalid_argument("CylinderSpec: a, r must be positive");
}

CylinderDistance cylinder_distance(const SpectralField& v, const CylinderSpec& spec) {
    const FrequencyGrid& g = v.grid();
    const double w = g.dxi() / kTwoPi;
    // representative cylinder element a/(x + i r): phihat = -2 i pi a e^{-xi r}
    CVector phi0(v.num_modes());
    double nphi2 = 0.0, nv2 = 0.0;
    CylinderCorrelator corr{&g, CVector(v.num_modes())};
    for (int k = 0; k < v.num_modes(); ++k) {
        const double xi = g.node(k);
        const double sw = std::sqrt(1.0 + xi * xi);
        phi0[k] = Complex(0.0, -kTwoPi * spec.a) * std::exp(-xi * spec.r);
        nphi2 += w * sw * std::norm(phi0[k]);
        nv2 += w * sw * std::norm(v.amps()[k]);
        corr.weighted[k] = w * sw * v.amps()[k] * std::conj(phi0[k]);
    }
    if (nv2 == 0.0) {
        // degenerate input: distance to any cylinder element is its norm
        return {std::sqrt(nphi2), 0.0, 0.0};
    }
    // evaluate the correlation on every grid shift via one synthesis pass
    CVector amps = corr.weighted * g.domain_length;
    CVector samples = detail::synth_physical(g, amps, g.num_points);
    int best = 0;
    double best_val = -1.0;
    for (int j = 0; j < samples.size(); ++j) {
        if (std::abs(samples[j]) > best_val) {
            best_val = std::abs(samples[j]);
            best = j;
        }
    }
    // golden-section refinement of |G(x0)| around the best grid shift
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = g.xnode(best) - g.dx(), hi = g.xnode(best) + g.dx();
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(corr.at(x1)), f2 = std::abs(corr.at(x2));
    for (int it = 0; it < 80 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(corr.at(x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(corr.at(x1));
        }
    }
    const double x0 = 0.5 * (lo + hi);
    const Complex gv = corr.at(x0);
    CylinderDistance out;
    out.x0 = x0;
    out.theta = std::arg(gv);
    out.distance = std::sqrt(std::max(0.0, nv2 + nphi2 - 2.0 * std::abs(gv)));
    return out;
}

SpectralField rescale_field(const SpectralField& u, double beta, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("rescale_field: gamma must be positive");
    const FrequencyGrid& g = u.grid();
    const int k = u.num_modes();
    const double o = g.offset();
    CVector amps(k);
    // uhat_new(xi) = (beta/gamma) uhat(xi/gamma), 4-point Lagrange resampling
    for (int i = 0; i < k; ++i) {
        const double s = (g.node(i) / gamma) / g.dxi() - o;  // fractional source index
        if (s > k - 1.0) {
            amps[i] = 0.0;
            continue;
        }
        int base = static_cast<int>(std::floor(s)) - 1;
        base = std::max(0, std::min(base, k - 4));
        const double t = s - base;
        Complex acc = 0.0;
        for (int n = 0; n < 4; ++n) {
            double lag = 1.0;
            for (int q = 0; q < 4; ++q)
                if (q != n) lag *= (t - q) / (n - q);
            acc += lag * u.amps()[base + n];
        }
        amps[i] = (beta / gamma) * acc;
    }
    return SpectralField(g, std::move(amps));
}

SpectralField project_constraints(const SpectralField& u, double q_target, double e_target,
                                  double tol, int max_rounds) {
    if (!(q_target > 0.0) || !(e_target > 0.0))
        throw std::invalid_argument("project_constraints: targets must be positive");
    SpectralField v = u;
    for (int round = 0; round < max_rounds; ++round) {
        ConservedQuantities q = conserved_quantities(v);
        if (!(q.mass > 0.0) || !(q.energy > 0.0) || !std::isfinite(q.mass) || !std::isfinite(q.energy))
            throw std::runtime_error("project_constraints: degenerate field");
        if (std::abs(q.mass - q_target) <= tol * q_target &&
            std::abs(q.energy - e_target) <= tol * e_target)
            return v;
        const double gamma = (e_target / (q_target * q_target)) * (q.mass * q.mass / q.energy);
        const double beta = std::sqrt(gamma * q_target / q.mass);
        v = rescale_field(v, beta, gamma);
    }
    throw std::runtime_error("project_constraints: did not reach the constraint set (infeasible targets?)");
}

MinimizeResult minimize_momentum(double q_target, double e_target, const SpectralField& init,
                                 const MinimizeOptions& options) {
    MinimizeResult out{SpectralField::zero(init.grid()), {}, false, false, 0.0, ""};
    SpectralField u = project_constraints(init, q_target, e_target, options.projection_tolerance);
    const FrequencyGrid& g = u.grid();
    double m_cur = conserved_quantities(u).momentum;
    double step = options.initial_step;
    const double w = g.dxi() / kTwoPi;

    auto l2 = [&](const CVector& a, const CVector& b) {
        Complex acc = 0.0;
        for (int k = 0; k < a.size(); ++k) acc += w * a[k] * std::conj(b[k]);
        return acc;
    };

    for (int it = 0; it < options.max_iterations; ++it) {
        CVector cu = cubic_term(u).amps();
        CVector gm(u.num_modes());
        for (int k = 0; k < gm.size(); ++k) gm[k] = g.node(k) * u.amps()[k];
        // least-squares multipliers: gm - l1 u - l2 cu orthogonal to {u, cu}
        const double a11 = l2(u.amps(), u.amps()).real();
        const Complex a12 = l2(cu, u.amps());
        const double a22 = l2(cu, cu).real();
        const Complex b1 = l2(gm, u.amps());
        const Complex b2 = l2(gm, cu);
        const double det = a11 * a22 - std::norm(a12);
        CVector grad;
        if (det > 1e-30) {
            const Complex l1 = (b1 * a22 - std::conj(a12) * b2) / det;
            const Complex l2m = (a11 * b2 - a12 * b1) / det;
            grad = gm - l1 * u.amps() - l2m * cu;
        } else {
            grad = gm;
        }
        const double gn = std::sqrt(std::abs(l2(grad, grad).real()));
        out.history.push_back({it, m_cur, gn, step});
        out.final_gradient_norm = gn;
        if (gn <= options.gradient_tolerance) {
            out.converged = true;
            out.message = "gradient tolerance reached";
            break;
        }
        bool descended = false;
        double s = step;
        for (int half = 0; half < 60; ++half) {
            SpectralField cand = u.with_amps(u.amps() - s * grad);
            SpectralField proj;
            try {
                proj = project_constraints(cand, q_target, e_target, options.projection_tolerance);
            } catch (const std::exception&) {
                s *= 0.5;
                continue;
            }
            const double m_new = conserved_quantities(proj).momentum;
            if (m_new < m_cur - 1e-15) {
                u = proj;
                m_cur = m_new;
                descended = true;
                break;
            }
            s *= 0.5;
        }
        step = std::min(options.initial_step, 2.0 * s);
        if (!descended) {
            out.stalled = true;
            out.message = "no descent direction below step underflow";
            break;
        }
    }
    if (!out.converged && !out.stalled) out.message = "iteration limit reached";
    out.minimizer = u;
    return out;
}

StabilityReport stability_experiment(const CylinderSpec& spec, const RationalSymbol& perturbation,
                                     double delta, double t_final, const SimulationConfig& numerics) {
    SimulationConfig cfg = numerics;
    cfg.t_final = t_final;
    cfg.initial.kind = InitialCondition::Kind::SolitonPerturbed;
    cfg.initial.amplitude = spec.a;
    cfg.initial.pole = Complex(0.0, -spec.r);
    cfg.initial.delta = delta;
    cfg.initial.perturbation = perturbation.terms();
    cfg.monitors.cylinder_distance = true;
    cfg.monitors.cylinder_a = spec.a;
    cfg.monitors.cylinder_r = spec.r;

    StabilityReport rep;
    rep.delta = delta;
    SimulationRecord rec = simulate(cfg, [&](double t, const SpectralField& u, SimulationRecord& r) {
        CylinderDistance d = cylinder_distance(u, spec);
        r.cylinder.push_back({t, d.distance, d.theta, d.x0});
    });
    rep.series = rec.cylinder;
    rep.blew_up = rec.blew_up;
    rep.diagnostic = rec.diagnostic;
    if (!rep.series.empty()) {
        rep.initial_distance = rep.series.front().distance;
        for (const auto& row : rep.series) rep.sup_distance = std::max(rep.sup_distance, row.distance);
        const size_t n = rep.series.size();
        const size_t win = std::max<size_t>(1, n / 5);
        double first = 0.0, last = 0.0;
        for (size_t i = 0; i < win; ++i) first += rep.series[i].distance;
        for (size_t i = n - win; i < n; ++i) last += rep.series[i].distance;
        first /= win;
        last /= win;
        rep.bounded = !(last > 2.0 * first && last > 1e-12);
    }
    return rep;
}

SpectralField random_smooth_field(const FrequencyGrid& grid, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> npoles(2, 4);
    std::uniform_real_distribution<double> real_part(-0.4 * grid.domain_length / 8.0,
                                                     0.4 * grid.domain_length / 8.0);
    std::uniform_real_distribution<double> depth(0.7, 2.2);
    std::normal_distribution<double> coeff(0.0, 1.0);
    std::vector<PoleTerm> terms;
    const int n = npoles(rng);
    for (int i = 0; i < n; ++i) {
        PoleTerm t;
        t.pole = Complex(real_part(rng), -depth(rng));
        t.coeffs = {Complex(coeff(rng), coeff(rng))};
        terms.push_back(std::move(t));
    }
    return RationalSymbol(terms).synthesize(grid);
}

SpectralField random_band_limited_field(const FrequencyGrid& grid, std::mt19937_64& rng,
                                        int k_min, int k_max, double decay_rate, double amplitude) {
    if (k_min < 0 || k_max >= grid.num_modes() || k_min > k_max)
        throw std::invalid_argument("random_band_limited_field: bad band");
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector amps = CVector::Zero(grid.num_modes());
    for (int k = k_min; k <= k_max; ++k)
        amps[k] = Complex(gauss(rng), gauss(rng)) * std::exp(-decay_rate * grid.node(k));
    SpectralField f(grid, std::move(amps));
    const double m = f.max_abs_physical();
    if (m <= 0.0) return f;
    return f.with_amps(f.amps() * (amplitude / m));
}

}  // namespace szlab
