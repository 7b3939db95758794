#include "helscat/materials.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helscat/errors.hpp"

namespace helscat {

Material Material::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw data_error("material file not readable: " + path);

    Material mat;
    mat.path_ = path;
    {
        std::ostringstream buf;
        buf << in.rdbuf();
        mat.content_ = buf.str();
    }

    std::istringstream lines(mat.content_);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream row(line);
        double lam, n, k;
        if (!(row >> lam >> n >> k))
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": expected 'wavelength_nm n k'");
        std::string extra;
        if (row >> extra)
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": trailing junk after three columns");
        if (!(lam > 0.0) || !(n > 0.0) || k < 0.0)
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": need wavelength > 0, n > 0, k >= 0");
        if (!mat.lambda_nm_.empty() && lam <= mat.lambda_nm_.back())
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": wavelengths must be strictly ascending");
        mat.lambda_nm_.push_back(lam);
        mat.n_.push_back(n);
        mat.k_.push_back(k);
    }
    if (mat.lambda_nm_.size() < 2)
        throw data_error(path + ": need at least two data rows");
    return mat;
}

std::complex<double> Material::refractive_index(double lambda_nm) const {
    if (lambda_nm < lambda_nm_.front() || lambda_nm > lambda_nm_.back())
        throw data_error("wavelength " + std::to_string(lambda_nm) +
                         " nm outside tabulated range [" +
                         std::to_string(lambda_nm_.front()) + ", " +
                         std::to_string(lambda_nm_.back()) + "] of " + path_);

    const auto it = std::upper_bound(lambda_nm_.begin(), lambda_nm_.end(), lambda_nm);
    std::size_t hi = (it == lambda_nm_.end()) ? lambda_nm_.size() - 1
                                              : static_cast<std::size_t>(it - lambda_nm_.begin());
    if (hi == 0)
        hi = 1;
    const std::size_t lo = hi - 1;
    const double t = (lambda_nm - lambda_nm_[lo]) / (lambda_nm_[hi] - lambda_nm_[lo]);
    return {n_[lo] + t * (n_[hi] - n_[lo]), k_[lo] + t * (k_[hi] - k_[lo])};
}

std::string resolve_material_path(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name))
        return name;
    if (const char* env = std::getenv("HELSCAT_MATERIAL_DIR")) {
        // try each search directory with the name as given, then with its
        // basename so bundled defaults like "data/silicon_nk.txt" still
        // resolve from an installed material directory
        const fs::path given(name);
        for (const fs::path& candidate :
             {given, fs::path(given.filename())}) {
            if (candidate.is_absolute())
                continue;
            std::istringstream dirs(env);
            std::string dir;
            while (std::getline(dirs, dir, ':')) {
                if (dir.empty())
                    continue;
                const fs::path p = fs::path(dir) / candidate;
                if (fs::exists(p))
                    return p.string();
            }
        }
    }
    throw data_error("material file not found: " + name +
                     " (searched working directory and HELSCAT_MATERIAL_DIR)");
}

} // namespace helscat
