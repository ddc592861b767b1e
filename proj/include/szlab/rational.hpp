#pragma once

#include <vector>

#include "szlab/field.hpp"

namespace szlab {

// One pole with its partial-fraction coefficients: sum_m coeffs[m-1] / (z - pole)^m.
struct PoleTerm {
    Complex pole;
    std::vector<Complex> coeffs;
};

// Rational function in partial-fraction form with arbitrary complex poles off the
// real axis. Used for exact residue-calculus arithmetic; intermediates (products
// with conjugates) legitimately carry upper-half poles.
class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(std::vector<PoleTerm> terms);

    const std::vector<PoleTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;

    Complex eval(Complex z) const;

    RationalFunction conjugate() const;             // poles reflect to conj(p)
    RationalFunction derivative_d() const;          // D = -i d/dx
    RationalFunction scaled(Complex s) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

    // Drop upper-half-plane poles (the Szego projection of a rational function
    // whose transform splits by pole half-plane).
    RationalFunction szego_projected() const;

    // Fourier transform at real frequency xi (two-sided; exact residue formula).
    Complex transform(double xi) const;

    // L2 inner product int f conj(g) dx via residues. Finite whenever every term
    // decays (degree >= 1 per pole).
    static Complex l2_inner(const RationalFunction& f, const RationalFunction& g);
    double l2_norm() const;

  private:
    void merge_duplicates();
    std::vector<PoleTerm> terms_;
};

// Element of M(N): all poles strictly below the real axis, pairwise distinct,
// top coefficient of each pole nonzero.
class RationalSymbol {
  public:
    RationalSymbol() = default;
    explicit RationalSymbol(std::vector<PoleTerm> terms);
    static RationalSymbol single_pole(Complex coeff, Complex pole);  // coeff/(z-pole)

    const std::vector<PoleTerm>& terms() const { return fn_.terms(); }
    const RationalFunction& fn() const { return fn_; }
    int degree() const { return fn_.degree(); }

    Complex eval(Complex z) const { return fn_.eval(z); }
    // uhat(xi) for xi >= 0: linear combination of xi^{m-1} e^{-ip xi}.
    Complex uhat(double xi) const { return fn_.transform(xi); }

    // Sample the closed-form transform on the grid nodes.
    SpectralField synthesize(const FrequencyGrid& grid) const;

    friend RationalSymbol operator+(const RationalSymbol& a, const RationalSymbol& b);

    // |u|^2 as a rational function (poles in both half-planes).
    RationalFunction abs_squared() const;
    // Transform of |u|^2 at any real frequency (exact).
    Complex abs_squared_transform(double zeta) const;

    // Pi(|u|^2 u) in partial fractions — the residue oracle for the cubic term.
    RationalSymbol cubic_szego() const;

    struct ClosedQME {
        double mass, momentum, energy;
    };
    ClosedQME closed_qme() const;  // exact Q, M, E by residue calculus

  private:
    RationalFunction fn_;
};

// Relative L2 residual of c D u + omega u - Pi(|u|^2 u), all terms in closed
// form. Zero (to rounding) exactly when (c, omega) solve the traveling-wave
// equation for the symbol.
double traveling_wave_oracle_residual(const RationalSymbol& u, double c, double omega);

}  // namespace szlab
