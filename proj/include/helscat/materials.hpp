#pragma once

#include <complex>
#include <string>
#include <vector>

namespace helscat {

// Tabulated complex refractive index m(lambda) = n + i k, loaded from a
// whitespace-separated three-column text file:
//
//     wavelength_nm   n   k
//
// Lines starting with '#' (and blank lines) are comments. Wavelengths must be
// strictly ascending. Queries interpolate n and k linearly between bracketing
// rows; asking outside the tabulated range is an error rather than an
// extrapolation.
class Material {
public:
    static Material load(const std::string& path);

    std::complex<double> refractive_index(double lambda_nm) const;

    double lambda_min_nm() const { return lambda_nm_.front(); }
    double lambda_max_nm() const { return lambda_nm_.back(); }
    std::size_t rows() const { return lambda_nm_.size(); }

    // Raw file bytes, kept so a run can fingerprint the table it actually used.
    const std::string& content() const { return content_; }
    const std::string& path() const { return path_; }

private:
    std::vector<double> lambda_nm_;
    std::vector<double> n_;
    std::vector<double> k_;
    std::string content_;
    std::string path_;
};

// Resolve a material file: absolute paths and paths that exist relative to the
// working directory are used as-is; otherwise each directory in the
// HELSCAT_MATERIAL_DIR environment variable (':'-separated) is tried.
std::string resolve_material_path(const std::string& name);

} // namespace helscat
