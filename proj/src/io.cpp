#include "helscat/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helscat/constants.hpp"
#include "helscat/errors.hpp"

namespace helscat {

namespace {

constexpr char spectrum_header[] = "lambda_nm,re_alpha,im_alpha,re_beta,im_beta";

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double parse_double_or_throw(const std::string& tok, const std::string& where) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + tok.size())
        throw data_error(where + ": not a number: '" + tok + "'");
    return v;
}

} // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
    return hex64(fnv1a(bytes, 14695981039346656037ULL));
}

std::string fnv1a_hex(const std::vector<std::string>& fields) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& f : fields) {
        h = fnv1a(f, h);
        h ^= 0x1f; // field separator so concatenation cannot alias
        h *= 1099511628211ULL;
    }
    return hex64(h);
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw data_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw data_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw data_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

std::string spectrum_csv(const HelicitySpectrum& spectrum, const std::string& full_fingerprint) {
    std::string out;
    out += "# helicity splitting spectrum\n";
    out += "# fingerprint = " + full_fingerprint + "\n";
    out += "# classical = " + spectrum.fingerprint + "\n";
    out += spectrum_header;
    out += '\n';
    // rows ascend in wavelength; the sweep stores descending wavelength
    // (ascending frequency), so walk backwards
    for (std::size_t idx = spectrum.size(); idx-- > 0;) {
        out += format_double(spectrum.lambda_nm[idx]);
        out += ',';
        out += format_double(spectrum.alpha[idx].real());
        out += ',';
        out += format_double(spectrum.alpha[idx].imag());
        out += ',';
        out += format_double(spectrum.beta[idx].real());
        out += ',';
        out += format_double(spectrum.beta[idx].imag());
        out += '\n';
    }
    return out;
}

HelicitySpectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw data_error("spectrum cache not readable: " + path);

    HelicitySpectrum sp;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::vector<double> lam;
    std::vector<cplx> alpha, beta;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string where = path + ":" + std::to_string(lineno);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream comment(line.substr(1));
            std::string key, eq, value;
            if (comment >> key >> eq >> value && eq == "=" && key == "classical")
                sp.fingerprint = value;
            continue;
        }
        if (!saw_header) {
            if (line != spectrum_header)
                throw data_error(where + ": expected column header '" +
                                 std::string(spectrum_header) + "'");
            saw_header = true;
            continue;
        }
        std::array<std::string, 5> tok;
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= 5)
                    throw data_error(where + ": too many columns");
                tok[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != 5)
            throw data_error(where + ": expected 5 columns, got " + std::to_string(field));
        const double l = parse_double_or_throw(tok[0], where);
        if (!(l > 0.0))
            throw data_error(where + ": wavelength must be positive");
        if (!lam.empty() && !(l > lam.back()))
            throw data_error(where + ": wavelengths must be strictly ascending");
        lam.push_back(l);
        alpha.emplace_back(parse_double_or_throw(tok[1], where),
                           parse_double_or_throw(tok[2], where));
        beta.emplace_back(parse_double_or_throw(tok[3], where),
                          parse_double_or_throw(tok[4], where));
    }
    if (!saw_header)
        throw data_error(path + ": missing column header");
    if (lam.size() < 2)
        throw data_error(path + ": need at least two spectrum rows");

    // store ascending in frequency (descending wavelength)
    const std::size_t n = lam.size();
    sp.lambda_nm.resize(n);
    sp.omega.resize(n);
    sp.alpha.resize(n);
    sp.beta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t slot = n - 1 - i;
        sp.lambda_nm[slot] = lam[i];
        sp.omega[slot] = omega_from_lambda_nm(lam[i]);
        sp.alpha[slot] = alpha[i];
        sp.beta[slot] = beta[i];
    }
    return sp;
}

std::string xsec_csv(const std::vector<XsecRow>& rows, const std::string& full_fingerprint,
                     const std::string& classical_fingerprint) {
    std::string out;
    out += "# scattered power fractions by multipole\n";
    out += "# fingerprint = " + full_fingerprint + "\n";
    out += "# classical = " + classical_fingerprint + "\n";
    out += "lambda_nm,sigma_total,sigma_a2,sigma_b3,sigma_rest\n";
    for (const auto& r : rows) {
        out += format_double(r.lambda_nm);
        out += ',';
        out += format_double(r.total);
        out += ',';
        out += format_double(r.a2);
        out += ',';
        out += format_double(r.b3);
        out += ',';
        out += format_double(r.rest);
        out += '\n';
    }
    return out;
}

std::string purity_csv(const std::vector<PurityRow>& rows, const std::string& full_fingerprint,
                       const std::string& classical_fingerprint) {
    std::string out;
    out += "# two-photon purity loss spectrum\n";
    out += "# fingerprint = " + full_fingerprint + "\n";
    out += "# classical = " + classical_fingerprint + "\n";
    out += "lambda_in_nm,purity_exact,purity_approx,tau_psi_s,tau_chi_s,shift_psi_rads,shift_chi_rads\n";
    for (const auto& r : rows) {
        out += format_double(r.lambda_in_nm);
        out += ',';
        out += format_double(r.exact);
        out += ',';
        out += format_double(r.approx);
        out += ',';
        out += format_double(r.tau_psi);
        out += ',';
        out += format_double(r.tau_chi);
        out += ',';
        out += format_double(r.shift_psi);
        out += ',';
        out += format_double(r.shift_chi);
        out += '\n';
    }
    return out;
}

std::string rho_json(const DensityMatrix4& dm, double loss) {
    nlohmann::ordered_json j;
    j["basis"] = basis_label_names;
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::ordered_json re_row = nlohmann::ordered_json::array();
        nlohmann::ordered_json im_row = nlohmann::ordered_json::array();
        for (int k = 0; k < 4; ++k) {
            re_row.push_back(dm.rho[i][k].real());
            im_row.push_back(dm.rho[i][k].imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    j["re"] = re;
    j["im"] = im;
    j["purity"] = loss;
    return j.dump(2) + "\n";
}

} // namespace helscat
