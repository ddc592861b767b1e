#pragma once

#include <string>
#include <vector>

#include "szlab/dynamics.hpp"
#include "szlab/linalg.hpp"
#include "szlab/rational.hpp"

namespace szlab {

// ---------------------------------------------------------------------------
// Antilinear bookkeeping (the single place it is written down).
//
// Operators are stored against orthonormalized spectral coordinates
// h_i = sqrt(dxi/2pi) hhat(node_i); with a uniform node spacing the matrix of
// H_u is then simply M_ij = (dxi/2pi) uhat(node_i + node_j), complex symmetric.
// A Hankel operator is antilinear and acts as H(h) = M conj(h), so compositions
// assemble with explicit conjugations:
//     H_a H_b  (linear)     ->  Ma conj(Mb)
//     T  H     (antilinear)  ->  T  M
//     H  T     (antilinear)  ->  M  conj(T)
//     H^3      (antilinear)  ->  M conj(M) M
// Toeplitz matrices are linear, T(h) = T h.
//
// On the staggered grid a Hankel array maps half-integer input nodes to the
// integer output lattice (node_out_i = i * dxi); the array itself is the same
// symmetric kernel table either way, and all compositions above remain valid
// with the lattice carried alongside for frequency-weighted factors (D).
// ---------------------------------------------------------------------------

enum class OperatorProvenance { RationalClosedForm, FieldLookup };

struct HankelOperator {
    double cutoff = 0.0;  // Xi
    int size = 0;         // K
    OperatorProvenance provenance = OperatorProvenance::RationalClosedForm;
    Eigen::MatrixXcd mat;          // action H(h) = mat * conj(h)
    Eigen::VectorXd nodes_in;      // input lattice (length K)
    Eigen::VectorXd nodes_out;     // output lattice (length K)
    double dxi = 0.0;              // node spacing

    double frobenius() const { return mat.norm(); }
};

struct ToeplitzOperator {
    double cutoff = 0.0;
    int size = 0;
    OperatorProvenance provenance = OperatorProvenance::RationalClosedForm;
    Eigen::MatrixXcd mat;      // linear action
    Eigen::VectorXd nodes;     // acts on this lattice (integer differences)
    double dxi = 0.0;
    double hermiticity_defect() const;  // max |T - T^H| entry
};

// Closed-form build on the midpoint grid of [0, Xi], K points.
HankelOperator build_hankel(const RationalSymbol& u, double cutoff, int kernel_points);
// Exact-lookup build from a field; cutoff defaults to half the field band so
// node_i + node_j always stays in-band. Throws if more is requested.
HankelOperator build_hankel(const SpectralField& u, double cutoff = 0.0);
// Hankel of an explicit symbol table on the field's lattice (used for H_{Pi(|u|^2 u)}).
HankelOperator build_hankel_of_symbol(const SpectralField& symbol, double cutoff = 0.0);

// Toeplitz of b = |u|^2 from the closed-form transform, midpoint grid.
ToeplitzOperator build_toeplitz(const RationalSymbol& u, double cutoff, int kernel_points);
// Toeplitz of b = |u|^2 from a field (exact grid lookup of the dealiased product).
ToeplitzOperator build_toeplitz(const SpectralField& u, double cutoff = 0.0);
// Toeplitz of arbitrary real physical samples given on the grid's spatial nodes.
ToeplitzOperator build_toeplitz(const FrequencyGrid& grid, const CVector& real_samples,
                                double cutoff = 0.0);

// Takagi values = singular values of the complex-symmetric matrix, descending.
Eigen::VectorXd takagi_values(const HankelOperator& h);

// Count of singular values above tau * s_max; 0 for the zero operator.
int rank_estimate(const HankelOperator& h, double tau = 1e-8);

struct RangeCheckReport {
    int expected_rank = 0;
    int estimated_rank = 0;
    std::vector<std::string> labels;     // one per basis function + "u"
    std::vector<double> residuals;       // relative projection residuals
    double kernel_orthogonality = 0.0;   // max overlap of beyond-rank vectors with Ran
    double gap_ratio = 0.0;              // s_N / s_{N+1}
    bool pass = false;                   // all residuals <= 1e-6 and rank matches
};

// Projects the basis 1/(z-p_j)^m (m <= m_j) and u itself onto the span of the
// top-N left singular vectors.
RangeCheckReport kronecker_range_check(const RationalSymbol& u, const HankelOperator& h);

double hs_norm(const HankelOperator& h);
// | frobenius - (1/sqrt(2 pi)) ||u||_{Hdot half} | / frobenius, closed-form norm.
double hs_identity_residual(const RationalSymbol& u, const HankelOperator& h);

// Relative operator-norm residual of H_{Pi(|u|^2u)} = T H + H T - H^3.
double lax_identity_residual(const SpectralField& u);

// Relative operator-norm residual of A H + H A + (omega/c) H + (1/c) H^3 with
// A = D - (1/c) T_{|u|^2}; throws when c = 0.
double traveling_wave_identity_residual(const SpectralField& u, double c, double omega);

struct AuSpectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    CVector ground_vector;
    int negative_count = 0;
    double ground_overlap_with_u = 0.0;  // |<v_min, u>| / (||v_min|| ||u||)
};

AuSpectrum spectrum_au(const RationalSymbol& u, double c, double cutoff, int kernel_points);
AuSpectrum spectrum_au(const ToeplitzOperator& t, double c, const CVector* overlap_target = nullptr);

// Max over tracked values and snapshot times of |s_i(t) - s_i(0)| / s_i(0);
// only values above 1e-10 at t = 0 are tracked.
double isospectral_drift(const SimulationRecord& record, int top_k);
// Per-snapshot top-k Takagi values for a record (fills record-independent table).
std::vector<std::vector<double>> takagi_series(const SimulationRecord& record, int top_k);

// Kernel element of a sampled soliton's Hankel operator: the discrete Blaschke
// factor in the grid harmonic (the torus counterpart of ((x - conj p)/(x - p)) g).
// conj(u) * v is Hardy, so T_{|u|^2} acts on v as the pointwise product |u|^2 v.
SpectralField soliton_kernel_element(const SolitonOnGrid& soliton, const SpectralField& g);

struct KernelActionCheck {
    double hardy_leakage = 0.0;    // negative-frequency fraction of conj(u) v
    double action_residual = 0.0;  // || T v - (|u|^2 v)^+ || / || |u|^2 v ||
};
KernelActionCheck toeplitz_kernel_action(const SolitonOnGrid& soliton, const SpectralField& v);

}  // namespace szlab
