#pragma once

#include <string>
#include <vector>

#include "szlab/variational.hpp"

namespace szlab {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool larger_is_better = false;
    bool pass = false;
};

struct VerifyOptions {
    unsigned long long seed = 1;
    double domain_length = 256.0;
    int num_points = 4096;
    double hankel_cutoff = 40.0;
    int hankel_points = 2048;
    int gn_corpus_size = 200;
    bool empty_corpus = false;       // produces the explicit "no checks run" failure
    bool inject_wrong_omega = false; // fault injection: the misprinted phase rate
};

// The five-point traveling-wave corpus used across identity checks.
std::vector<std::pair<Complex, Complex>> soliton_corpus();
// Rational symbols of degree 1..5 (includes a double pole).
std::vector<RationalSymbol> rational_corpus();

// Identity/oracle checks: Lax residuals, Hilbert-Schmidt identity, Kronecker
// rank/range, GN corpus, A_u spectrum, H^2 eigenrelation. Individual failures
// do not abort the suite.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace szlab
