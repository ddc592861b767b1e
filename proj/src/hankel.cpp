#include "szlab/hankel.hpp"

#include <cmath>
#include <limits>

namespace szlab {
namespace {

// Two-sided line-calibrated spectrum of np physical samples: value at signed
// bin m on the lattice (m + offset) * dxi.
struct FullSpectrum {
    CVector bins;  // raw forward-FFT bins, scaled by L/np
    double offset;
    int np;
    Complex at(int m) const {
        int idx = ((m % np) + np) % np;
        const double ph = kPi * (m + offset);
        return bins[idx] * Complex(std::cos(ph), std::sin(ph));
    }
};

FullSpectrum full_spectrum(const FrequencyGrid& grid, const CVector& samples, double offset) {
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
    FullSpectrum out{fft::forward(in), offset, np};
    out.bins *= grid.domain_length / np;
    return out;
}

int field_kernel_size(const SpectralField& u, double cutoff) {
    const FrequencyGrid& g = u.grid();
    const int max_k = (u.num_modes() + 1) / 2;  // node_i + node_j must stay in-band
    if (cutoff <= 0.0) return max_k;
    const int want = static_cast<int>(std::floor(cutoff / g.dxi() - g.offset())) + 1;
    if (want > max_k)
        throw std::invalid_argument("build_hankel: field under-resolved for requested cutoff");
    if (want < 1) throw std::invalid_argument("build_hankel: nonpositive cutoff");
    return want;
}

CVector two_sided_b_of_field(const SpectralField& u, int half_width) {
    // |u|^2 on the dealiased grid; returns b(m) for m in [-(half_width-1), half_width-1]
    // packed at index m + half_width - 1. Exact lookup: |u|^2 lives on the
    // integer lattice for either grid flavor.
    const FrequencyGrid& g = u.grid();
    CVector p = u.physical_padded(2);
    for (int j = 0; j < p.size(); ++j) p[j] = std::norm(p[j]);
    FullSpectrum fs = full_spectrum(g, p, 0.0);
    CVector b(2 * half_width - 1);
    for (int m = -(half_width - 1); m <= half_width - 1; ++m) b[m + half_width - 1] = fs.at(m);
    return b;
}

}  // namespace

double ToeplitzOperator::hermiticity_defect() const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

HankelOperator build_hankel(const RationalSymbol& u, double cutoff, int kernel_points) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("build_hankel: nonpositive cutoff");
    if (kernel_points < 1) throw std::invalid_argument("build_hankel: kernel_points < 1");
    HankelOperator h;
    h.cutoff = cutoff;
    h.size = kernel_points;
    h.provenance = OperatorProvenance::RationalClosedForm;
    h.dxi = cutoff / kernel_points;
    h.nodes_in.resize(kernel_points);
    for (int i = 0; i < kernel_points; ++i) h.nodes_in[i] = (i + 0.5) * h.dxi;
    h.nodes_out = h.nodes_in;
    const double w = h.dxi / kTwoPi;
    // kernel depends on node_i + node_j only: tabulate one diagonal family
    std::vector<Complex> table(2 * kernel_points - 1);
    for (int s = 0; s < 2 * kernel_points - 1; ++s) table[s] = w * u.uhat((s + 1.0) * h.dxi);
    h.mat.resize(kernel_points, kernel_points);
    for (int i = 0; i < kernel_points; ++i)
        for (int j = 0; j < kernel_points; ++j) h.mat(i, j) = table[i + j];
    return h;
}

HankelOperator build_hankel(const SpectralField& u, double cutoff) {
    const FrequencyGrid& g = u.grid();
    const int k = field_kernel_size(u, cutoff);
    HankelOperator h;
    h.size = k;
    h.provenance = OperatorProvenance::FieldLookup;
    h.dxi = g.dxi();
    h.nodes_in.resize(k);
    h.nodes_out.resize(k);
    for (int i = 0; i < k; ++i) {
        h.nodes_in[i] = g.node(i);
        h.nodes_out[i] = i * g.dxi();
    }
    h.cutoff = h.nodes_in[k - 1];
    const double w = g.dxi() / kTwoPi;
    h.mat.resize(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) h.mat(i, j) = w * u.amps()[i + j];
    return h;
}

ToeplitzOperator build_toeplitz(const RationalSymbol& u, double cutoff, int kernel_points) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("build_toeplitz: nonpositive cutoff");
    ToeplitzOperator t;
    t.cutoff = cutoff;
    t.size = kernel_points;
    t.provenance = OperatorProvenance::RationalClosedForm;
    t.dxi = cutoff / kernel_points;
    t.nodes.resize(kernel_points);
    for (int i = 0; i < kernel_points; ++i) t.nodes[i] = (i + 0.5) * t.dxi;
    const double w = t.dxi / kTwoPi;
    std::vector<Complex> table(2 * kernel_points - 1);
    for (int d = -(kernel_points - 1); d <= kernel_points - 1; ++d)
        table[d + kernel_points - 1] = w * u.abs_squared_transform(d * t.dxi);
    t.mat.resize(kernel_points, kernel_points);
    for (int i = 0; i < kernel_points; ++i)
        for (int j = 0; j < kernel_points; ++j) t.mat(i, j) = table[i - j + kernel_points - 1];
    return t;
}

ToeplitzOperator build_toeplitz(const SpectralField& u, double cutoff) {
    const FrequencyGrid& g = u.grid();
    const int k = field_kernel_size(u, cutoff);
    ToeplitzOperator t;
    t.size = k;
    t.provenance = OperatorProvenance::FieldLookup;
    t.dxi = g.dxi();
    t.nodes.resize(k);
    for (int i = 0; i < k; ++i) t.nodes[i] = g.node(i);
    t.cutoff = t.nodes[k - 1];
    CVector b = two_sided_b_of_field(u, k);
    const double w = g.dxi() / kTwoPi;
    t.mat.resize(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t.mat(i, j) = w * b[i - j + k - 1];
    return t;
}

ToeplitzOperator build_toeplitz(const FrequencyGrid& grid, const CVector& real_samples,
                                double cutoff) {
    if (real_samples.size() != grid.num_points)
        throw std::invalid_argument("build_toeplitz: samples must live on the grid's spatial nodes");
    const int max_k = grid.num_modes() / 2;
    int k = max_k;
    if (cutoff > 0.0) {
        k = static_cast<int>(std::floor(cutoff / grid.dxi())) + 1;
        if (k > max_k) throw std::invalid_argument("build_toeplitz: under-resolved symbol");
    }
    ToeplitzOperator t;
    t.size = k;
    t.provenance = OperatorProvenance::FieldLookup;
    t.dxi = grid.dxi();
    t.nodes.resize(k);
    for (int i = 0; i < k; ++i) t.nodes[i] = grid.node(i);
    t.cutoff = t.nodes[k - 1];
    FullSpectrum fs = full_spectrum(grid, real_samples, 0.0);
    const double w = grid.dxi() / kTwoPi;
    t.mat.resize(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t.mat(i, j) = w * fs.at(i - j);
    return t;
}

Eigen::VectorXd takagi_values(const HankelOperator& h) { return linalg::singular_values(h.mat); }

int rank_estimate(const HankelOperator& h, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("rank_estimate: tau must be in (0,1)");
    Eigen::VectorXd s = takagi_values(h);
    if (s.size() == 0 || s[0] <= 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > tau * s[0]) ++r;
    return r;
}

RangeCheckReport kronecker_range_check(const RationalSymbol& u, const HankelOperator& h) {
    RangeCheckReport rep;
    rep.expected_rank = u.degree();
    rep.estimated_rank = rank_estimate(h);
    linalg::SvdLeft svd = linalg::svd_left(h.mat);
    const int n = rep.expected_rank;
    const int k = h.size;
    Eigen::MatrixXcd un = svd.u.leftCols(std::min(n, static_cast<int>(svd.u.cols())));

    const double w = std::sqrt(h.dxi / kTwoPi);
    Eigen::MatrixXcd basis(k, n);
    int col = 0;
    for (const auto& term : u.terms()) {
        for (size_t m = 1; m <= term.coeffs.size(); ++m) {
            std::vector<PoleTerm> tt{PoleTerm{term.pole, std::vector<Complex>(m, 0.0)}};
            tt[0].coeffs[m - 1] = 1.0;
            RationalFunction fm(tt);
            for (int i = 0; i < k; ++i) basis(i, col) = w * fm.transform(h.nodes_out[i]);
            rep.labels.push_back("pole(" + std::to_string(term.pole.real()) + "," +
                                 std::to_string(term.pole.imag()) + ")^" + std::to_string(m));
            ++col;
        }
    }
    auto proj_residual = [&](const CVector& f) {
        const double nf = f.norm();
        if (nf == 0.0) return 0.0;
        CVector r = f - un * (un.adjoint() * f);
        return r.norm() / nf;
    };
    for (int c = 0; c < n; ++c) rep.residuals.push_back(proj_residual(basis.col(c)));
    CVector uvec(k);
    for (int i = 0; i < k; ++i) uvec[i] = w * u.uhat(h.nodes_out[i]);
    rep.labels.push_back("u");
    rep.residuals.push_back(proj_residual(uvec));

    Eigen::VectorXd s = svd.values;
    rep.gap_ratio = (s.size() > n && s[n] > 0.0) ? s[n - 1] / s[n]
                                                 : std::numeric_limits<double>::infinity();
    // beyond-rank left vectors should be orthogonal to Ran H_u
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, n);
    const int extra = std::min(10, static_cast<int>(svd.u.cols()) - n);
    for (int i = 0; i < extra; ++i)
        rep.kernel_orthogonality =
            std::max(rep.kernel_orthogonality, (q.adjoint() * svd.u.col(n + i)).norm());
    rep.pass = (rep.estimated_rank == rep.expected_rank);
    for (double r : rep.residuals) rep.pass = rep.pass && r <= 1e-6;
    return rep;
}

double hs_norm(const HankelOperator& h) { return h.frobenius(); }

double hs_identity_residual(const RationalSymbol& u, const HankelOperator& h) {
    const double fro = hs_norm(h);
    const double target = std::sqrt(u.closed_qme().momentum / kTwoPi);
    return std::abs(fro - target) / std::max(fro, 1e-300);
}

double lax_identity_residual(const SpectralField& u) {
    HankelOperator m = build_hankel(u);
    ToeplitzOperator t = build_toeplitz(u);
    HankelOperator w = build_hankel(cubic_term(u));
    Eigen::MatrixXcd r = t.mat * m.mat + m.mat * t.mat.conjugate() -
                         m.mat * m.mat.conjugate() * m.mat - w.mat;
    const double wn = linalg::operator_norm(w.mat);
    if (wn == 0.0) return 0.0;
    return linalg::operator_norm(r) / wn;
}

double traveling_wave_identity_residual(const SpectralField& u, double c, double omega) {
    if (c == 0.0) throw std::invalid_argument("traveling_wave_identity_residual: c must be nonzero");
    HankelOperator m = build_hankel(u);
    ToeplitzOperator t = build_toeplitz(u);
    Eigen::MatrixXcd a_out = -t.mat / c;
    Eigen::MatrixXcd a_in = a_out;
    for (int i = 0; i < m.size; ++i) {
        a_out(i, i) += m.nodes_out[i];
        a_in(i, i) += m.nodes_in[i];
    }
    Eigen::MatrixXcd r = a_out * m.mat + m.mat * a_in.conjugate() + (omega / c) * m.mat +
                         (1.0 / c) * (m.mat * m.mat.conjugate() * m.mat);
    const double mn = linalg::operator_norm(m.mat);
    if (mn == 0.0) return 0.0;
    return linalg::operator_norm(r) / mn;
}

AuSpectrum spectrum_au(const ToeplitzOperator& t, double c, const CVector* overlap_target) {
    if (c == 0.0) throw std::invalid_argument("spectrum_au: c must be nonzero");
    Eigen::MatrixXcd a = -t.mat / c;
    for (int i = 0; i < t.size; ++i) a(i, i) += t.nodes[i];
    linalg::HermitianEig eig = linalg::eigh(a);
    AuSpectrum out;
    out.eigenvalues = eig.values;
    out.ground_vector = eig.vectors.col(0);
    for (int i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] < 0.0) ++out.negative_count;
    if (overlap_target != nullptr && overlap_target->size() == out.ground_vector.size()) {
        const double nu = overlap_target->norm();
        const double nv = out.ground_vector.norm();
        if (nu > 0.0 && nv > 0.0)
            out.ground_overlap_with_u =
                std::abs(out.ground_vector.dot(*overlap_target)) / (nu * nv);
    }
    return out;
}

AuSpectrum spectrum_au(const RationalSymbol& u, double c, double cutoff, int kernel_points) {
    ToeplitzOperator t = build_toeplitz(u, cutoff, kernel_points);
    CVector uvec(kernel_points);
    for (int i = 0; i < kernel_points; ++i) uvec[i] = u.uhat(t.nodes[i]);
    return spectrum_au(t, c, &uvec);
}

std::vector<std::vector<double>> takagi_series(const SimulationRecord& record, int top_k) {
    std::vector<std::vector<double>> out;
    for (const SpectralField& snap : record.snapshots) {
        Eigen::VectorXd s = takagi_values(build_hankel(snap));
        std::vector<double> row;
        for (int i = 0; i < std::min<int>(top_k, s.size()); ++i) row.push_back(s[i]);
        out.push_back(std::move(row));
    }
    return out;
}

double isospectral_drift(const SimulationRecord& record, int top_k) {
    std::vector<std::vector<double>> series = takagi_series(record, top_k);
    if (series.empty()) return 0.0;
    const std::vector<double>& s0 = series.front();
    double drift = 0.0;
    for (const auto& row : series) {
        for (size_t i = 0; i < s0.size() && i < row.size(); ++i) {
            if (s0[i] <= 1e-10) continue;
            drift = std::max(drift, std::abs(row[i] - s0[i]) / s0[i]);
        }
    }
    return drift;
}

SpectralField soliton_kernel_element(const SolitonOnGrid& soliton, const SpectralField& g) {
    const FrequencyGrid& grid = g.grid();
    if (!grid.staggered)
        throw std::invalid_argument("soliton_kernel_element: requires the staggered grid");
    if (!(grid == soliton.field.grid())) throw GridMismatch();
    // Blaschke factor (W - conj(sigma)) / (1 - conj(sigma) W) in the integer
    // harmonic W = e^{i dxi x}, sigma = e^{-i p dxi}.
    const Complex sigma = std::exp(Complex(0.0, -1.0) * soliton.params.pole * grid.dxi());
    const Complex sb = std::conj(sigma);
    FrequencyGrid igrid(grid.domain_length, grid.num_points, false);
    CVector phi(igrid.num_modes());
    phi[0] = -sb * grid.domain_length;
    Complex pw = grid.domain_length * (1.0 - sb * sb);
    for (int m = 1; m < phi.size(); ++m) {
        phi[m] = pw;
        pw *= sb;
    }
    SpectralField phi_field(igrid, std::move(phi));
    CVector prod = phi_field.physical_padded(2);
    CVector gp = g.physical_padded(2);
    for (int j = 0; j < prod.size(); ++j) prod[j] *= gp[j];
    CVector amps = detail::analyze_physical(grid, prod, grid.num_modes(), grid.offset());
    return SpectralField(grid, std::move(amps));
}

KernelActionCheck toeplitz_kernel_action(const SolitonOnGrid& soliton, const SpectralField& v) {
    const SpectralField& u = soliton.field;
    require_same_grid(u, v);
    const FrequencyGrid& grid = u.grid();
    CVector up = u.physical_padded(2);
    CVector vp = v.physical_padded(2);
    CVector w(up.size());
    for (int j = 0; j < up.size(); ++j) w[j] = std::norm(up[j]) * vp[j];

    FullSpectrum fs = full_spectrum(grid, w, grid.offset());
    const int np = static_cast<int>(w.size());
    double pos = 0.0, neg = 0.0;
    for (int m = -np / 2; m < np / 2; ++m) {
        const double a2 = std::norm(fs.at(m));
        if (m + grid.offset() >= 0.0)
            pos += a2;
        else
            neg += a2;
    }
    KernelActionCheck out;
    out.hardy_leakage = (pos > 0.0) ? std::sqrt(neg / pos) : 0.0;

    ToeplitzOperator t = build_toeplitz(u);
    const int k = t.size;
    CVector vtrunc(k), wtrunc(k);
    for (int i = 0; i < k; ++i) {
        vtrunc[i] = v.amps()[i];
        wtrunc[i] = fs.at(i);
    }
    CVector tv = t.mat * vtrunc;
    const double wn = wtrunc.norm();
    out.action_residual = (wn > 0.0) ? (tv - wtrunc).norm() / wn : 0.0;
    return out;
}

}  // namespace szlab
