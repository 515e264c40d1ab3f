#include "turinv/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace turinv {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return in;
}

json spectrum_to_json(const SpectrumFile& s) {
    json j;
    if (s.model != 0) j["model"] = s.model;
    j["L"] = s.L;
    j["m"] = s.m;
    j["k"] = s.k;
    j["M"] = s.M;
    j["alpha"] = s.spectrum.alpha;
    j["beta"] = s.spectrum.beta;
    if (!s.source.empty()) j["source"] = s.source;
    return j;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const Grid1D& g,
                     const FieldPair& f) {
    std::ofstream out = open_out(path);
    out << "x,n,c\n";
    for (int j = 0; j < g.N; ++j)
        out << format_double(g.node(j)) << ',' << format_double(f.n[j]) << ','
            << format_double(f.c[j]) << '\n';
}

FieldFile read_field_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,n,c", 0) != 0)
        throw IoError(path.string() + ": expected header 'x,n,c'");
    FieldFile out;
    std::vector<double> xs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        double x, n, c;
        char c1, c2;
        if (!(row >> x >> c1 >> n >> c2 >> c) || c1 != ',' || c2 != ',')
            throw IoError(path.string() + ":" + std::to_string(lineno) +
                          ": malformed row");
        xs.push_back(x);
        out.fields.n.push_back(n);
        out.fields.c.push_back(c);
    }
    if (xs.size() < 2) throw IoError(path.string() + ": too few rows");
    const double dx = xs[1] - xs[0];
    out.grid.N = static_cast<int>(xs.size());
    out.grid.L = dx * out.grid.N;  // cell centers at (j + 1/2) dx
    return out;
}

void write_spectrum_json(const std::filesystem::path& path,
                         const SpectrumFile& s) {
    std::ofstream out = open_out(path);
    out << spectrum_to_json(s).dump(2) << '\n';
}

SpectrumFile read_spectrum_json(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    SpectrumFile s;
    try {
        s.model = j.value("model", 0);
        s.L = j.at("L").get<double>();
        s.m = j.at("m").get<int>();
        s.k = j.at("k").get<double>();
        s.M = j.at("M").get<int>();
        s.spectrum.alpha = j.at("alpha").get<std::vector<double>>();
        s.spectrum.beta = j.value("beta", std::vector<double>{});
        s.source = j.value("source", std::string{});
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    if (static_cast<int>(s.spectrum.alpha.size()) != s.M + 1)
        throw IoError(path.string() + ": alpha length does not match M");
    return s;
}

void write_recovery_json(const std::filesystem::path& path, Model model,
                         int M, const RecoveryResult& r) {
    json j;
    j["model"] = model == Model::Model1 ? 1 : 2;
    j["M"] = M;
    j["status"] = to_string(r.status);
    j["params"] = {{"d_n", r.params.d_n}, {"d_c", r.params.d_c},
                   {"chi0", r.params.chi0}, {"r", r.params.r},
                   {"k", r.params.k}};
    j["residual_norm"] = r.residual_norm;
    j["iterations"] = r.iterations;
    j["jacobian_condition"] = r.jacobian_condition;
    j["starts_tried"] = r.starts_tried;
    j["k_fixed"] = r.k_fixed;
    j["r_fixed"] = r.r_fixed;
    j["beta_gap"] = r.beta_gap;
    if (!r.degeneracy_reason.empty())
        j["degeneracy_reason"] = r.degeneracy_reason;
    json minima = json::array();
    for (const Minimum& m : r.minima)
        minima.push_back({{"params",
                           {{"d_n", m.params.d_n}, {"d_c", m.params.d_c},
                            {"chi0", m.params.chi0}, {"r", m.params.r},
                            {"k", m.params.k}}},
                          {"residual_norm", m.residual_norm},
                          {"iterations", m.iterations}});
    j["minima"] = minima;
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_dispersion_csv(const std::filesystem::path& path,
                          const DispersionReport& rep, double chi0_boundary) {
    std::ofstream out = open_out(path);
    out << "# verdict=" << (rep.unstable ? "unstable" : "stable")
        << " m_star=" << rep.m_star
        << " q_star=" << format_double(rep.q_star);
    if (chi0_boundary > 0.0)
        out << " chi0_boundary=" << format_double(chi0_boundary);
    out << '\n';
    out << "m,q,growth\n";
    for (size_t i = 0; i < rep.modes.size(); ++i)
        out << rep.modes[i] << ',' << format_double(rep.q_values[i]) << ','
            << format_double(rep.growth[i]) << '\n';
}

ModelParams ExperimentConfig::params() const {
    ModelParams p;
    p.model = model;
    p.d_n = d_n;
    p.d_c = d_c;
    p.chi0 = chi0;
    p.r = r;
    p.k = 1.0;  // placeholder; the pattern supplies the wavenumber
    return p;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    ExperimentConfig cfg;
    bool m_explicit = false;

    std::string section;
    std::string line;
    int lineno = 0;

    auto fail = [&](const std::string& msg) -> void {
        throw IoError(path.string() + ":" + std::to_string(lineno) + ": " +
                      msg);
    };
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{}
                                      : s.substr(a, b - a + 1);
    };

    using Setter = std::function<void(const std::string&)>;
    auto as_double = [&](double& slot) {
        return Setter([&](const std::string& v) {
            size_t used = 0;
            slot = std::stod(v, &used);
            if (used != v.size()) fail("expected a number, got '" + v + "'");
        });
    };
    auto as_int = [&](int& slot) {
        return Setter([&](const std::string& v) {
            size_t used = 0;
            slot = std::stoi(v, &used);
            if (used != v.size()) fail("expected an integer, got '" + v + "'");
        });
    };
    auto as_bool = [&](bool& slot) {
        return Setter([&](const std::string& v) {
            if (v == "1" || v == "true") slot = true;
            else if (v == "0" || v == "false") slot = false;
            else fail("expected 0/1/true/false, got '" + v + "'");
        });
    };

    std::map<std::string, std::map<std::string, Setter>> schema;
    schema["model"]["model"] = [&](const std::string& v) {
        cfg.model = model_from_int(std::stoi(v));
    };
    schema["model"]["d_n"] = as_double(cfg.d_n);
    schema["model"]["d_c"] = as_double(cfg.d_c);
    schema["model"]["chi0"] = as_double(cfg.chi0);
    schema["model"]["r"] = as_double(cfg.r);
    schema["domain"]["L"] = as_double(cfg.L);
    schema["domain"]["N"] = as_int(cfg.N);
    schema["ic"]["mode"] = as_int(cfg.ic_mode);
    schema["ic"]["amplitude"] = as_double(cfg.ic_amplitude);
    schema["ic"]["noise"] = as_bool(cfg.ic_noise);
    schema["ic"]["max_mode"] = as_int(cfg.ic_max_mode);
    schema["ic"]["seed"] = [&](const std::string& v) {
        cfg.seed = std::stoull(v);
    };
    schema["tolerances"]["steady_tol"] = as_double(cfg.steady_tol);
    schema["tolerances"]["t_max"] = as_double(cfg.t_max);
    schema["tolerances"]["cfl"] = as_double(cfg.cfl);
    schema["extract"]["M"] = [&](const std::string& v) {
        size_t used = 0;
        cfg.M = std::stoi(v, &used);
        if (used != v.size()) fail("expected an integer, got '" + v + "'");
        m_explicit = true;
    };
    schema["extract"]["noise_floor"] = as_double(cfg.noise_floor);
    schema["invert"]["equations"] = [&](const std::string& v) {
        if (v == "printed") cfg.equations = EquationSet::Printed;
        else if (v == "galerkin") cfg.equations = EquationSet::GalerkinClosure;
        else fail("equations must be 'printed' or 'galerkin'");
        cfg.equations_explicit = true;
    };
    schema["invert"]["use_beta"] = as_bool(cfg.use_beta);
    schema["invert"]["fit_M"] = as_int(cfg.fit_M);
    schema["invert"]["fix_k"] = as_bool(cfg.fix_k);
    schema["invert"]["fix_r"] = as_bool(cfg.fix_r);
    schema["invert"]["r_ref"] = as_double(cfg.r_ref);
    schema["invert"]["max_error"] = as_double(cfg.max_error);
    schema["output"]["dir"] = [&](const std::string& v) {
        cfg.out_dir = v;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema.count(section))
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail("key '" + key + "' outside any section");
        auto& keys = schema.at(section);
        auto it = keys.find(key);
        if (it == keys.end())
            fail("unknown key '" + key + "' in [" + section + "]");
        try {
            it->second(value);
        } catch (const IoError&) {
            throw;
        } catch (const std::exception& e) {
            fail("bad value '" + value + "' for '" + key + "': " + e.what());
        }
    }

    if (!m_explicit) cfg.M = cfg.model == Model::Model1 ? 3 : 2;
    cfg.params().validate();  // positivity of the model parameters
    if (cfg.N < 64) throw IoError(path.string() + ": [domain] N must be >= 64");
    if (cfg.M < 1) throw IoError(path.string() + ": [extract] M must be >= 1");
    return cfg;
}

}  // namespace turinv
