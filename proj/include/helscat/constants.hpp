#pragma once

namespace helscat {

// Lengths are carried in millimetres through the beam-optics layer (waists,
// focal lengths and wavelengths are all naturally sub-metre), wavelengths in
// tables and CLI output in nanometres, angular frequencies in rad/s.
inline constexpr double c_m_per_s  = 299792458.0;
inline constexpr double c_mm_per_s = c_m_per_s * 1e3;
inline constexpr double c_nm_per_s = c_m_per_s * 1e9;

inline constexpr double pi = 3.14159265358979323846;

inline double omega_from_lambda_nm(double lambda_nm) {
    return 2.0 * pi * c_nm_per_s / lambda_nm;
}

inline double lambda_nm_from_omega(double omega) {
    return 2.0 * pi * c_nm_per_s / omega;
}

} // namespace helscat
