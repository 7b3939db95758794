#pragma once

#include <string>
#include <vector>

#include "helscat/beam.hpp"
#include "helscat/quantum.hpp"

namespace helscat {

// Shortest decimal string that round-trips the exact binary double. Keeps
// CSV output bit-stable and diff-able across runs and thread counts.
std::string format_double(double v);

// 16-digit lower-case hex of a 64-bit FNV-1a hash.
std::string fnv1a_hex(const std::string& bytes);
std::string fnv1a_hex(const std::vector<std::string>& fields);

// Write via a temporary file in the same directory plus rename, so readers
// never observe a half-written file.
void atomic_write(const std::string& path, const std::string& content);

// --- spectrum CSV (the classical cache format) -----------------------------
// Comment header carries the full-configuration fingerprint and the
// classical-only fingerprint; rows ascend in wavelength and print the exact
// sweep-grid doubles, so a reloaded spectrum is bit-identical to the swept
// one.
std::string spectrum_csv(const HelicitySpectrum& spectrum, const std::string& full_fingerprint);

// Parse a spectrum CSV; the returned spectrum carries the classical
// fingerprint from the header and ascends in frequency. Malformed content
// throws data_error.
HelicitySpectrum read_spectrum_csv(const std::string& path);

// --- other emitters ---------------------------------------------------------
struct XsecRow {
    double lambda_nm = 0.0;
    double total = 0.0;
    double a2 = 0.0;   // electric quadrupole term
    double b3 = 0.0;   // magnetic octupole term
    double rest = 0.0; // everything else
};

std::string xsec_csv(const std::vector<XsecRow>& rows, const std::string& full_fingerprint,
                     const std::string& classical_fingerprint);

std::string purity_csv(const std::vector<PurityRow>& rows, const std::string& full_fingerprint,
                       const std::string& classical_fingerprint);

// {basis: [...], re: 4x4, im: 4x4, purity: loss} as pretty-printed JSON.
std::string rho_json(const DensityMatrix4& dm, double loss);

} // namespace helscat
