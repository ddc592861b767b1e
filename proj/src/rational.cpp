#include "szlab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace szlab {
namespace {

constexpr double kPoleTol = 1e-12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

// rising factorial n (n+1) ... (n+m-1)
double rising(int n, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= n + i;
    return r;
}

Complex ipow(Complex z, int n) {
    Complex r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

bool close(Complex a, Complex b) { return std::abs(a - b) <= kPoleTol * (1.0 + std::abs(a)); }

}  // namespace

RationalFunction::RationalFunction(std::vector<PoleTerm> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_) {
        if (t.pole.imag() == 0.0)
            throw std::invalid_argument("RationalFunction: pole on the real axis");
        while (!t.coeffs.empty() && std::abs(t.coeffs.back()) == 0.0) t.coeffs.pop_back();
    }
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const PoleTerm& t) { return t.coeffs.empty(); }),
                 terms_.end());
    merge_duplicates();
}

void RationalFunction::merge_duplicates() {
    std::vector<PoleTerm> merged;
    for (const auto& t : terms_) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const PoleTerm& m) { return close(m.pole, t.pole); });
        if (it == merged.end()) {
            merged.push_back(t);
        } else {
            if (it->coeffs.size() < t.coeffs.size()) it->coeffs.resize(t.coeffs.size(), 0.0);
            for (size_t m = 0; m < t.coeffs.size(); ++m) it->coeffs[m] += t.coeffs[m];
            while (!it->coeffs.empty() && std::abs(it->coeffs.back()) < 1e-300) it->coeffs.pop_back();
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PoleTerm& t) { return t.coeffs.empty(); }),
                 merged.end());
    // deterministic ordering
    std::sort(merged.begin(), merged.end(), [](const PoleTerm& a, const PoleTerm& b) {
        if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
        return a.pole.imag() < b.pole.imag();
    });
    terms_ = std::move(merged);
}

int RationalFunction::degree() const {
    int d = 0;
    for (const auto& t : terms_) d += static_cast<int>(t.coeffs.size());
    return d;
}

Complex RationalFunction::eval(Complex z) const {
    Complex acc = 0.0;
    for (const auto& t : terms_) {
        Complex inv = 1.0 / (z - t.pole);
        Complex p = inv;
        for (const auto& c : t.coeffs) {
            acc += c * p;
            p *= inv;
        }
    }
    return acc;
}

RationalFunction RationalFunction::conjugate() const {
    std::vector<PoleTerm> out;
    for (const auto& t : terms_) {
        PoleTerm n;
        n.pole = std::conj(t.pole);
        for (const auto& c : t.coeffs) n.coeffs.push_back(std::conj(c));
        out.push_back(std::move(n));
    }
    return RationalFunction(std::move(out));
}

RationalFunction RationalFunction::derivative_d() const {
    // D (z-p)^{-m} = i m (z-p)^{-(m+1)}
    std::vector<PoleTerm> out;
    for (const auto& t : terms_) {
        PoleTerm n;
        n.pole = t.pole;
        n.coeffs.assign(t.coeffs.size() + 1, 0.0);
        for (size_t m = 1; m <= t.coeffs.size(); ++m)
            n.coeffs[m] = Complex(0.0, static_cast<double>(m)) * t.coeffs[m - 1];
        out.push_back(std::move(n));
    }
    return RationalFunction(std::move(out));
}

RationalFunction RationalFunction::scaled(Complex s) const {
    std::vector<PoleTerm> out = terms_;
    for (auto& t : out)
        for (auto& c : t.coeffs) c *= s;
    return RationalFunction(std::move(out));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    std::vector<PoleTerm> out = a.terms_;
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return RationalFunction(std::move(out));
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    // (z-p)^{-m} (z-q)^{-n} with p != q expands as
    //   sum_k A_k (z-p)^{-k} + sum_l B_l (z-q)^{-l},
    //   A_k = (-1)^{m-k} C(m+n-k-1, n-1) (p-q)^{-(m+n-k)}.
    std::vector<PoleTerm> out;
    for (const auto& ta : a.terms_) {
        for (size_t ma = 1; ma <= ta.coeffs.size(); ++ma) {
            if (std::abs(ta.coeffs[ma - 1]) == 0.0) continue;
            for (const auto& tb : b.terms_) {
                for (size_t nb = 1; nb <= tb.coeffs.size(); ++nb) {
                    if (std::abs(tb.coeffs[nb - 1]) == 0.0) continue;
                    const Complex cc = ta.coeffs[ma - 1] * tb.coeffs[nb - 1];
                    const int m = static_cast<int>(ma), n = static_cast<int>(nb);
                    if (close(ta.pole, tb.pole)) {
                        PoleTerm t;
                        t.pole = ta.pole;
                        t.coeffs.assign(m + n, 0.0);
                        t.coeffs[m + n - 1] = cc;
                        out.push_back(std::move(t));
                        continue;
                    }
                    const Complex pq = ta.pole - tb.pole;
                    PoleTerm tp, tq;
                    tp.pole = ta.pole;
                    tp.coeffs.assign(m, 0.0);
                    for (int k = 1; k <= m; ++k) {
                        const double sign = ((m - k) % 2 == 0) ? 1.0 : -1.0;
                        tp.coeffs[k - 1] = cc * sign * binomial(m + n - k - 1, n - 1) / ipow(pq, m + n - k);
                    }
                    tq.pole = tb.pole;
                    tq.coeffs.assign(n, 0.0);
                    for (int l = 1; l <= n; ++l) {
                        const double sign = ((n - l) % 2 == 0) ? 1.0 : -1.0;
                        tq.coeffs[l - 1] = cc * sign * binomial(m + n - l - 1, m - 1) / ipow(-pq, m + n - l);
                    }
                    out.push_back(std::move(tp));
                    out.push_back(std::move(tq));
                }
            }
        }
    }
    return RationalFunction(std::move(out));
}

RationalFunction RationalFunction::szego_projected() const {
    std::vector<PoleTerm> out;
    for (const auto& t : terms_)
        if (t.pole.imag() < 0.0) out.push_back(t);
    return RationalFunction(std::move(out));
}

Complex RationalFunction::transform(double xi) const {
    // Lower-half pole: -2 pi i (-i xi)^{m-1}/(m-1)! e^{-ip xi} for xi > 0.
    // Upper-half pole: +2 pi i (-i xi)^{m-1}/(m-1)! e^{-ip xi} for xi < 0.
    Complex acc = 0.0;
    for (const auto& t : terms_) {
        const bool lower = t.pole.imag() < 0.0;
        if (lower && xi <= 0.0) continue;
        if (!lower && xi >= 0.0) continue;
        const Complex ph = std::exp(Complex(0.0, -1.0) * t.pole * xi);
        const double sgn = lower ? -1.0 : 1.0;
        for (size_t m = 1; m <= t.coeffs.size(); ++m) {
            if (std::abs(t.coeffs[m - 1]) == 0.0) continue;
            acc += t.coeffs[m - 1] * sgn * Complex(0.0, kTwoPi) *
                   ipow(Complex(0.0, -xi), static_cast<int>(m) - 1) / factorial(static_cast<int>(m) - 1) * ph;
        }
    }
    return acc;
}

Complex RationalFunction::l2_inner(const RationalFunction& f, const RationalFunction& g) {
    // (1/(x-a)^m, 1/(x-b)^n) closes around whichever half-plane holds a; the
    // conjugated pole br = conj(b) sits on the other side unless Im a and Im b
    // have opposite signs, in which case the two poles share a half-plane and
    // the contour picks up both residues. Terms with a and br in the same
    // half-plane integrate to the sum of both residues; we only ever need the
    // generic configuration (a, b on the same side) plus the mixed case used by
    // |u|^2-type functions, handled below by always closing in the lower plane.
    Complex acc = 0.0;
    for (const auto& tf : f.terms()) {
        for (size_t m = 1; m <= tf.coeffs.size(); ++m) {
            if (std::abs(tf.coeffs[m - 1]) == 0.0) continue;
            for (const auto& tg : g.terms()) {
                for (size_t n = 1; n <= tg.coeffs.size(); ++n) {
                    if (std::abs(tg.coeffs[n - 1]) == 0.0) continue;
                    const Complex a = tf.pole;
                    const Complex br = std::conj(tg.pole);
                    const Complex cc = tf.coeffs[m - 1] * std::conj(tg.coeffs[n - 1]);
                    const int mi = static_cast<int>(m), ni = static_cast<int>(n);
                    Complex val = 0.0;
                    // integrand (x-a)^{-m} (x-br)^{-n}; close in the lower half-plane
                    if (a.imag() < 0.0 && br.imag() < 0.0 && close(a, br))
                        throw std::invalid_argument("l2_inner: confluent poles in integrand");
                    if (a.imag() < 0.0) {
                        // residue at a of (x-br)^{-n}/(x-a)^m
                        const double sign = ((mi - 1) % 2 == 0) ? 1.0 : -1.0;
                        val += sign * rising(ni, mi - 1) / factorial(mi - 1) / ipow(a - br, ni + mi - 1);
                    }
                    if (br.imag() < 0.0) {
                        const double sign = ((ni - 1) % 2 == 0) ? 1.0 : -1.0;
                        val += sign * rising(mi, ni - 1) / factorial(ni - 1) / ipow(br - a, ni + mi - 1);
                    }
                    acc += cc * Complex(0.0, -kTwoPi) * val;
                }
            }
        }
    }
    return acc;
}

double RationalFunction::l2_norm() const {
    return std::sqrt(std::max(0.0, l2_inner(*this, *this).real()));
}

RationalSymbol::RationalSymbol(std::vector<PoleTerm> terms) : fn_(std::move(terms)) {
    for (const auto& t : fn_.terms()) {
        if (t.pole.imag() >= 0.0)
            throw std::invalid_argument("RationalSymbol: pole must lie in the lower half-plane");
        if (t.coeffs.empty() || std::abs(t.coeffs.back()) == 0.0)
            throw std::invalid_argument("RationalSymbol: vanishing top coefficient");
    }
}

RationalSymbol RationalSymbol::single_pole(Complex coeff, Complex pole) {
    return RationalSymbol({PoleTerm{pole, {coeff}}});
}

SpectralField RationalSymbol::synthesize(const FrequencyGrid& grid) const {
    for (const auto& t : terms())
        if (-t.pole.imag() < 4.0 * grid.dx())
            throw std::invalid_argument("RationalSymbol: pole too close to the real axis for this grid");
    CVector amps(grid.num_modes());
    for (int k = 0; k < amps.size(); ++k) amps[k] = uhat(grid.node(k));
    return SpectralField(grid, std::move(amps));
}

RationalSymbol operator+(const RationalSymbol& a, const RationalSymbol& b) {
    RationalFunction sum = a.fn() + b.fn();
    return RationalSymbol(sum.terms());
}

RationalFunction RationalSymbol::abs_squared() const { return fn_ * fn_.conjugate(); }

Complex RationalSymbol::abs_squared_transform(double zeta) const {
    return abs_squared().transform(zeta);
}

RationalSymbol RationalSymbol::cubic_szego() const {
    RationalFunction cubic = (fn_ * fn_.conjugate() * fn_).szego_projected();
    return RationalSymbol(cubic.terms());
}

RationalSymbol::ClosedQME RationalSymbol::closed_qme() const {
    ClosedQME out{};
    out.mass = RationalFunction::l2_inner(fn_, fn_).real();
    out.momentum = RationalFunction::l2_inner(fn_.derivative_d(), fn_).real();
    RationalFunction sq = fn_ * fn_;
    out.energy = RationalFunction::l2_inner(sq, sq).real();
    return out;
}

double traveling_wave_oracle_residual(const RationalSymbol& u, double c, double omega) {
    RationalFunction lhs = u.fn().derivative_d().scaled(c) + u.fn().scaled(omega);
    RationalFunction res = lhs + u.cubic_szego().fn().scaled(-1.0);
    const double nu = u.fn().l2_norm();
    return res.l2_norm() / nu;
}

}  // namespace szlab
