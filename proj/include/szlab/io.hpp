#pragma once

#include <string>
#include <vector>

#include "szlab/dynamics.hpp"
#include "szlab/hankel.hpp"
#include "szlab/variational.hpp"

namespace szlab::io {

inline constexpr const char* kToolVersion = "szlab 0.1.0";

// All data files are written atomically (temp file + rename) and carry the
// manifest hash and tool version, so identical manifests produce byte-identical
// outputs (no wall-clock content).

std::string format_double(double x);  // shortest round-trip decimal

void atomic_write(const std::string& path, const std::string& content);

// Field snapshot format: "L N staggered" header, then one "k real imag" line
// per retained mode.
std::string field_to_text(const SpectralField& u);
SpectralField field_from_text(const std::string& text);
void write_field(const std::string& path, const SpectralField& u);
SpectralField read_field(const std::string& path);

// Operator export: "Xi K provenance" header, then row-major complex entries.
std::string hankel_to_text(const HankelOperator& h);
void write_hankel(const std::string& path, const HankelOperator& h);

struct Manifest {
    std::string command;
    std::string config_path;
    std::string out_dir;
    unsigned long long seed = 0;
    std::vector<std::string> overrides;
    std::string version = kToolVersion;

    std::string canonical() const;
    std::string hash() const;  // FNV-1a 64 over the canonical form, hex
};

std::string file_header(const Manifest& m);  // "# version=... manifest=..." line

// Strict JSON config: schema_version must equal 1 and unknown keys are errors.
struct CliConfig {
    SimulationConfig simulation;
    // stability sweep
    std::vector<double> stability_deltas{1e-2};
    double stability_t_final = 100.0;
    CylinderSpec stability_cylinder;
    std::vector<PoleTerm> stability_perturbation;
    // minimize
    double minimize_q = kPi;
    double minimize_e = kPi / 2.0;
    int minimize_runs = 5;
    int minimize_max_iterations = 100000;
    // spectrum
    Complex spectrum_amplitude{1.0, 0.0};
    Complex spectrum_pole{0.0, -1.0};
    double spectrum_cutoff = 40.0;
    int spectrum_kernel_points = 2048;
};

CliConfig parse_config_text(const std::string& text);  // throws std::runtime_error naming bad keys
CliConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

std::string read_text_file(const std::string& path);

}  // namespace szlab::io
