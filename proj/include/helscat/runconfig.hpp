#pragma once

#include <set>
#include <string>
#include <vector>

#include "helscat/materials.hpp"
#include "helscat/quantum.hpp"

namespace helscat {

// One flat configuration record for every subcommand; defaults reproduce the
// bundled silicon study.
struct RunConfig {
    // particle
    double radius_nm = 250.0;
    std::string material_path = "data/silicon_nk.txt";
    // beam
    double waist_mm = 0.5;
    int q = 0;
    int s = -1;
    // lens
    double na = 0.9;
    double focal_mm = 1.0;
    // classical sweep grid (uniform in wavelength, endpoints included)
    double lambda_min_nm = 975.0;
    double lambda_max_nm = 1150.0;
    int n_lambda = 176;
    // two-photon layer; sigma_thz follows the convention 1 THz = 1e12 rad/s
    double sigma_thz = 3.0;
    std::vector<double> lambda_in_nm; // empty -> use the sweep grid
    std::string input_state = "psi_plus";
    // numerics
    int quad_theta = 128;
    int quad_radial = 96;
    int quad_azimuthal = 64;
    int freq_grid_points = 64;
    double freq_window_sigmas = 6.0;

    // which keys were set explicitly (config file or flag), for defaults
    // that depend on it
    std::set<std::string> explicit_keys;

    bool is_explicit(const std::string& key) const { return explicit_keys.count(key) != 0; }
    double sigma_rads() const { return sigma_thz * 1e12; }
};

// Set one key to a textual value; unknown keys and malformed or out-of-type
// values throw config_error naming the key.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Apply a whole `key = value` file ('#' starts a comment).
void apply_config_file(RunConfig& cfg, const std::string& path);

// Range validation of every field (no filesystem access).
void validate(const RunConfig& cfg);

BasisLabel input_state(const RunConfig& cfg);

std::vector<double> sweep_grid(const RunConfig& cfg);
std::vector<double> lambda_in_grid(const RunConfig& cfg);

// FNV-1a fingerprints over a canonical serialization. The classical variant
// covers exactly what the sweep consumes (particle, beam, lens, grid,
// classical quadratures, material file content) and is what spectrum caches
// are matched against; the full variant adds the quantum-layer fields.
std::string classical_fingerprint(const RunConfig& cfg, const Material& mat);
std::string full_fingerprint(const RunConfig& cfg, const Material& mat);

} // namespace helscat
