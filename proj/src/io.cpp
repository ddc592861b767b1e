#include "szlab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace szlab::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    double back = 0.0;
    std::sscanf(buf, "%lg", &back);
    if (back == x) {
        // try shorter forms for clean output
        for (int prec = 1; prec <= 16; ++prec) {
            char b2[40];
            std::snprintf(b2, sizeof(b2), "%.*g", prec, x);
            double r2 = 0.0;
            std::sscanf(b2, "%lg", &r2);
            if (r2 == x) return b2;
        }
    }
    return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
    }
    fs::rename(tmp, p);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string field_to_text(const SpectralField& u) {
    std::ostringstream out;
    const FrequencyGrid& g = u.grid();
    out << format_double(g.domain_length) << " " << g.num_points << " " << (g.staggered ? 1 : 0)
        << "\n";
    for (int k = 0; k < u.num_modes(); ++k)
        out << k << " " << format_double(u.amps()[k].real()) << " "
            << format_double(u.amps()[k].imag()) << "\n";
    return out.str();
}

SpectralField field_from_text(const std::string& text) {
    std::istringstream in(text);
    double length = 0.0;
    int n = 0, stag = 1;
    if (!(in >> length >> n >> stag)) throw std::runtime_error("field text: bad header");
    FrequencyGrid g(length, n, stag != 0);
    CVector amps = CVector::Zero(g.num_modes());
    int k;
    double re, im;
    while (in >> k >> re >> im) {
        if (k < 0 || k >= g.num_modes()) throw std::runtime_error("field text: mode index out of range");
        amps[k] = Complex(re, im);
    }
    return SpectralField(g, std::move(amps));
}

void write_field(const std::string& path, const SpectralField& u) {
    atomic_write(path, field_to_text(u));
}

SpectralField read_field(const std::string& path) { return field_from_text(read_text_file(path)); }

std::string hankel_to_text(const HankelOperator& h) {
    std::ostringstream out;
    out << format_double(h.cutoff) << " " << h.size << " "
        << (h.provenance == OperatorProvenance::RationalClosedForm ? "rational" : "field") << "\n";
    for (int i = 0; i < h.size; ++i) {
        for (int j = 0; j < h.size; ++j) {
            if (j) out << " ";
            out << format_double(h.mat(i, j).real()) << " " << format_double(h.mat(i, j).imag());
        }
        out << "\n";
    }
    return out.str();
}

void write_hankel(const std::string& path, const HankelOperator& h) {
    atomic_write(path, hankel_to_text(h));
}

std::string Manifest::canonical() const {
    json j;
    j["command"] = command;
    j["config"] = config_path;
    j["out"] = out_dir;
    j["seed"] = seed;
    j["overrides"] = overrides;
    j["version"] = version;
    return j.dump();
}

std::string Manifest::hash() const {
    // FNV-1a 64
    const std::string s = canonical();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, static_cast<uint64_t>(h));
    return buf;
}

std::string file_header(const Manifest& m) {
    return std::string("# version=") + m.version + " manifest=" + m.hash() + " seed=" +
           std::to_string(m.seed) + "\n";
}

namespace {

[[noreturn]] void bad_key(const std::string& where, const std::string& key) {
    throw std::runtime_error("config error: unknown key \"" + key + "\" in " + where);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) bad_key(where, it.key());
    }
}

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error("config error: " + where + " must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<PoleTerm> parse_terms(const json& j, const std::string& where) {
    std::vector<PoleTerm> out;
    for (const auto& t : j) {
        check_keys(t, where, {"pole", "coeffs"});
        PoleTerm pt;
        pt.pole = parse_complex(t.at("pole"), where + ".pole");
        for (const auto& c : t.at("coeffs")) pt.coeffs.push_back(parse_complex(c, where + ".coeffs"));
        out.push_back(std::move(pt));
    }
    return out;
}

}  // namespace

CliConfig parse_config_text(const std::string& text) {
    json j = json::parse(text);
    CliConfig cfg;
    check_keys(j, "top level",
               {"schema_version", "grid", "time", "initial", "monitors", "stability", "minimize",
                "spectrum"});
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw std::runtime_error("config error: schema_version must be 1");

    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"domain_length", "num_points", "staggered"});
        if (g.contains("domain_length")) cfg.simulation.domain_length = g["domain_length"].get<double>();
        if (g.contains("num_points")) cfg.simulation.num_points = g["num_points"].get<int>();
        if (g.contains("staggered")) cfg.simulation.staggered = g["staggered"].get<bool>();
    }
    if (j.contains("time")) {
        const json& t = j["time"];
        check_keys(t, "time", {"dt", "t_final", "snapshot_stride", "log_stride"});
        if (t.contains("dt")) cfg.simulation.dt = t["dt"].get<double>();
        if (t.contains("t_final")) cfg.simulation.t_final = t["t_final"].get<double>();
        if (t.contains("snapshot_stride")) cfg.simulation.snapshot_stride = t["snapshot_stride"].get<int>();
        if (t.contains("log_stride")) cfg.simulation.log_stride = t["log_stride"].get<int>();
    }
    if (j.contains("initial")) {
        const json& ic = j["initial"];
        check_keys(ic, "initial",
                   {"kind", "amplitude", "pole", "rational", "delta", "perturbation", "path"});
        InitialCondition& out = cfg.simulation.initial;
        const std::string kind = ic.value("kind", "soliton");
        if (kind == "soliton") out.kind = InitialCondition::Kind::Soliton;
        else if (kind == "rational") out.kind = InitialCondition::Kind::Rational;
        else if (kind == "soliton_perturbed") out.kind = InitialCondition::Kind::SolitonPerturbed;
        else if (kind == "circle") out.kind = InitialCondition::Kind::Circle;
        else if (kind == "zero") out.kind = InitialCondition::Kind::Zero;
        else if (kind == "file") out.kind = InitialCondition::Kind::File;
        else throw std::runtime_error("config error: unknown initial.kind \"" + kind + "\"");
        if (ic.contains("amplitude")) out.amplitude = parse_complex(ic["amplitude"], "initial.amplitude");
        if (ic.contains("pole")) out.pole = parse_complex(ic["pole"], "initial.pole");
        if (ic.contains("rational")) out.rational = parse_terms(ic["rational"], "initial.rational");
        if (ic.contains("delta")) out.delta = ic["delta"].get<double>();
        if (ic.contains("perturbation"))
            out.perturbation = parse_terms(ic["perturbation"], "initial.perturbation");
        if (ic.contains("path")) out.path = ic["path"].get<std::string>();
    }
    if (j.contains("monitors")) {
        const json& m = j["monitors"];
        check_keys(m, "monitors",
                   {"conservation", "hankel_top_k", "cylinder_distance", "cylinder_a", "cylinder_r"});
        MonitorToggles& out = cfg.simulation.monitors;
        if (m.contains("conservation")) out.conservation = m["conservation"].get<bool>();
        if (m.contains("hankel_top_k")) out.hankel_top_k = m["hankel_top_k"].get<int>();
        if (m.contains("cylinder_distance")) out.cylinder_distance = m["cylinder_distance"].get<bool>();
        if (m.contains("cylinder_a")) out.cylinder_a = m["cylinder_a"].get<double>();
        if (m.contains("cylinder_r")) out.cylinder_r = m["cylinder_r"].get<double>();
    }
    if (j.contains("stability")) {
        const json& s = j["stability"];
        check_keys(s, "stability", {"deltas", "t_final", "a", "r", "perturbation"});
        if (s.contains("deltas")) cfg.stability_deltas = s["deltas"].get<std::vector<double>>();
        if (s.contains("t_final")) cfg.stability_t_final = s["t_final"].get<double>();
        double a = cfg.stability_cylinder.a, r = cfg.stability_cylinder.r;
        if (s.contains("a")) a = s["a"].get<double>();
        if (s.contains("r")) r = s["r"].get<double>();
        cfg.stability_cylinder = CylinderSpec(a, r);
        if (s.contains("perturbation"))
            cfg.stability_perturbation = parse_terms(s["perturbation"], "stability.perturbation");
    }
    if (j.contains("minimize")) {
        const json& m = j["minimize"];
        check_keys(m, "minimize", {"q_target", "e_target", "runs", "max_iterations"});
        if (m.contains("q_target")) cfg.minimize_q = m["q_target"].get<double>();
        if (m.contains("e_target")) cfg.minimize_e = m["e_target"].get<double>();
        if (m.contains("runs")) cfg.minimize_runs = m["runs"].get<int>();
        if (m.contains("max_iterations")) cfg.minimize_max_iterations = m["max_iterations"].get<int>();
    }
    if (j.contains("spectrum")) {
        const json& s = j["spectrum"];
        check_keys(s, "spectrum", {"amplitude", "pole", "cutoff", "kernel_points"});
        if (s.contains("amplitude")) cfg.spectrum_amplitude = parse_complex(s["amplitude"], "spectrum.amplitude");
        if (s.contains("pole")) cfg.spectrum_pole = parse_complex(s["pole"], "spectrum.pole");
        if (s.contains("cutoff")) cfg.spectrum_cutoff = s["cutoff"].get<double>();
        if (s.contains("kernel_points")) cfg.spectrum_kernel_points = s["kernel_points"].get<int>();
    }
    return cfg;
}

namespace {
json apply_override(json j, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override must be key=value: " + spec);
    const std::string path = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    json* cur = &j;
    size_t pos = 0;
    while (true) {
        const size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (dot == std::string::npos) {
            (*cur)[key] = json::parse(value, nullptr, false).is_discarded() ? json(value)
                                                                            : json::parse(value);
            break;
        }
        cur = &((*cur)[key]);
        pos = dot + 1;
    }
    return j;
}
}  // namespace

CliConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    json j = json::parse(read_text_file(path));
    for (const std::string& o : overrides) j = apply_override(j, o);
    return parse_config_text(j.dump());
}

}  // namespace szlab::io
