#include "latspec/cli.hpp"

#include "latspec/channel.hpp"
#include "latspec/error.hpp"
#include "latspec/faddeev.hpp"
#include "latspec/friedrichs.hpp"
#include "latspec/model_io.hpp"
#include "latspec/oracle.hpp"
#include "latspec/report_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace latspec {

using nlohmann::json;

namespace {

std::vector<double> parse_reals(const std::string& text, char sep, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument(what + ": cannot parse '" + item + "' as a real number");
        }
    }
    if (out.empty()) throw InvalidArgument(what + ": empty value");
    return out;
}

TorusPoint parse_point(const std::string& text, int d, const std::string& what) {
    if (text.empty()) return zero_point(d);
    const auto v = parse_reals(text, ',', what);
    if (static_cast<int>(v.size()) != d) {
        throw InvalidArgument(what + ": expected " + std::to_string(d) + " coordinates, got " + std::to_string(v.size()));
    }
    return canonicalize(Eigen::Map<const Eigen::VectorXd>(v.data(), d));
}

std::optional<Interval> parse_window(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto v = parse_reals(text, ':', "--window");
    if (v.size() != 2 || !(v[0] <= v[1])) throw InvalidArgument("--window: expected lo:hi with lo <= hi");
    return Interval{v[0], v[1]};
}

struct Common {
    std::string model_path;
    std::string K;
    int n_quad = 128;
    int n_k = 64;
    std::string out_path;
    std::string format = "json";
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidArgument("--out: cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void emit_json(const json& doc, const Common& c, std::ostream& out) {
    Output sink(c.out_path, out);
    *sink << doc.dump(2) << '\n';
}

json grid_metadata(const ModelSpec& spec, const Common& c) {
    return {{"dimension", spec.dimension},
            {"n_quad", c.n_quad},
            {"n_k", c.n_k},
            {"measure", "unnormalized Lebesgue, total mass (2pi)^d"}};
}

std::vector<std::pair<std::vector<double>, TorusPoint>> sweep_path(const std::string& path, int n_path, int d) {
    std::vector<std::pair<std::vector<double>, TorusPoint>> out;
    if (path == "axis" || path == "diagonal") {
        if (n_path < 1) throw InvalidArgument("--n-path must be >= 1");
        for (int j = 0; j <= n_path; ++j) {
            const double t = -kPi + kTwoPi * j / n_path;
            std::vector<double> raw(static_cast<std::size_t>(d), 0.0);
            raw[0] = t;
            if (path == "diagonal") std::fill(raw.begin(), raw.end(), t);
            out.emplace_back(raw, canonicalize(Eigen::Map<const Eigen::VectorXd>(raw.data(), d)));
        }
        return out;
    }
    std::stringstream ss(path);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto raw = parse_reals(item, ',', "--path");
        if (static_cast<int>(raw.size()) != d) throw InvalidArgument("--path: point '" + item + "' has wrong dimension");
        out.emplace_back(raw, canonicalize(Eigen::Map<const Eigen::VectorXd>(raw.data(), d)));
    }
    if (out.empty()) throw InvalidArgument("--path: no points");
    return out;
}

void check_grid_sizes(const Common& c) {
    if (c.n_quad < 2 || c.n_k < 2) throw InvalidArgument("grid sizes must be >= 2");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Essential and discrete spectrum of lattice three-particle operator matrices"};
    app.require_subcommand(1);

    Common c;
    auto add_common = [&](CLI::App* sub, bool with_grids) {
        sub->add_option("--model", c.model_path, "Model JSON file")->required();
        if (with_grids) {
            sub->add_option("--K", c.K, "Total quasimomentum, comma-separated (default 0)");
            sub->add_option("--n-quad", c.n_quad, "Quadrature points per axis");
            sub->add_option("--n-k", c.n_k, "Fiber sweep points per axis");
            sub->add_option("--out", c.out_path, "Output file (default stdout)");
        }
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check a model file");
    add_common(validate_cmd, false);

    std::string k_text;
    auto* fiber_cmd = app.add_subcommand("fiber", "Band and eigenvalues of one fiber h(K,k)");
    add_common(fiber_cmd, true);
    fiber_cmd->add_option("--k", k_text, "Fiber momentum, comma-separated (default 0)");

    std::string window_text;
    int mesh = 2001;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Essential and discrete spectrum at one K");
    add_common(spectrum_cmd, true);
    spectrum_cmd->add_option("--window", window_text, "Discrete search window lo:hi");
    spectrum_cmd->add_option("--mesh", mesh, "Mesh points for the determinant scan");

    std::string path = "axis";
    int n_path = 32;
    bool no_discrete = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Spectrum along a path of K values (CSV)");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--path", path, "axis | diagonal | explicit 'x,y;x,y;...'");
    sweep_cmd->add_option("--n-path", n_path, "Segments along a named path");
    std::string sweep_format = "csv";
    sweep_cmd->add_option("--format", sweep_format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--mesh", mesh, "Mesh points for the determinant scan");
    sweep_cmd->add_flag("--no-discrete", no_discrete, "Skip the discrete eigenvalue search");

    int n_oracle = 48;
    double ess_tol = 0.05, disc_tol = 1e-3, sigma_shift = 0.0;
    std::string eigs_csv;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare against a dense discretization of H(K)");
    add_common(oracle_cmd, true);
    oracle_cmd->add_option("--n-oracle", n_oracle, "Oracle grid points per axis");
    oracle_cmd->add_option("--ess-tol", ess_tol, "Essential spectrum tolerance");
    oracle_cmd->add_option("--disc-tol", disc_tol, "Discrete eigenvalue tolerance");
    oracle_cmd->add_option("--window", window_text, "Discrete search window lo:hi");
    oracle_cmd->add_option("--eigs-csv", eigs_csv, "Write oracle eigenvalues, one per line");
    oracle_cmd->add_option("--sigma-shift", sigma_shift, "Shift the analytic spectrum (negative control)")
        ->group("");

    for (auto* sub : {fiber_cmd, spectrum_cmd, oracle_cmd}) {
        sub->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));
    }

    std::vector<const char*> argv{"latspec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    try {
        const ModelSpec spec = load_model(c.model_path);

        if (validate_cmd->parsed()) {
            const ValidationReport report = validate(spec);
            out << to_json(report).dump(2) << '\n';
            return report.ok() ? kExitOk : kExitInputError;
        }

        const ValidationReport report = validate(spec);
        if (!report.ok()) {
            err << "error: model failed validation\n" << to_json(report).dump(2) << '\n';
            return kExitInputError;
        }
        check_grid_sizes(c);
        const int d = spec.dimension;
        const TorusPoint K = parse_point(c.K, d, "--K");
        const TorusGrid quad = make_grid(d, c.n_quad);

        if (fiber_cmd->parsed()) {
            const TorusPoint k = parse_point(k_text, d, "--k");
            json doc = to_json(fiber_discrete_spectrum(spec, K, k, quad));
            doc["K"] = to_json(K);
            doc["k"] = to_json(k);
            doc["grid"] = grid_metadata(spec, c);
            emit_json(doc, c, out);
            return kExitOk;
        }

        const TorusGrid k_grid = make_grid(d, c.n_k);

        if (spectrum_cmd->parsed()) {
            const ChannelSpectrum sigma = channel_spectrum(spec, K, k_grid, quad);
            const FaddeevSystem system(spec, K, quad);
            const Interval window = parse_window(window_text).value_or(default_window(sigma));
            const auto discrete = discrete_spectrum(system, sigma, window, {mesh});
            json doc{{"grid", grid_metadata(spec, c)}, {"channel", to_json(sigma)}, {"discrete", to_json(discrete)}};
            doc["discrete"].erase("sigma_K");
            emit_json(doc, c, out);
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            const auto points = sweep_path(path, n_path, d);
            std::ostringstream csv;
            for (int a = 0; a < d; ++a) csv << "K" << a << ',';
            csv << "m_K,M_K,below_lo,below_hi,below_uniform,above_lo,above_hi,above_uniform,discrete\n";
            json rows = json::array();
            for (const auto& [raw, Kp] : points) {
                const ChannelSpectrum sigma = channel_spectrum(spec, Kp, k_grid, quad);
                std::vector<double> roots;
                if (!no_discrete) {
                    const FaddeevSystem system(spec, Kp, quad);
                    for (const auto& e : discrete_spectrum(system, sigma, default_window(sigma), {mesh}).eigenvalues) {
                        for (int m = 0; m < e.multiplicity; ++m) roots.push_back(e.z);
                    }
                }
                for (double x : raw) csv << format_real(x) << ',';
                csv << format_real(sigma.three_particle.lo) << ',' << format_real(sigma.three_particle.hi) << ',';
                auto branch = [&](const std::optional<Interval>& iv, bool uniform) {
                    if (iv) csv << format_real(iv->lo) << ',' << format_real(iv->hi) << ',' << (uniform ? 1 : 0) << ',';
                    else csv << ",,,";
                };
                branch(sigma.two_particle_below, sigma.existence_uniform_below);
                branch(sigma.two_particle_above, sigma.existence_uniform_above);
                for (std::size_t i = 0; i < roots.size(); ++i) csv << (i ? ";" : "") << format_real(roots[i]);
                csv << '\n';
                rows.push_back({{"K", raw}, {"channel", to_json(sigma)}, {"discrete", roots}});
            }
            if (sweep_format == "json") {
                emit_json({{"grid", grid_metadata(spec, c)}, {"rows", rows}}, c, out);
            } else {
                Output sink(c.out_path, out);
                *sink << csv.str();
            }
            return kExitOk;
        }

        if (oracle_cmd->parsed()) {
            if (n_oracle < 2) throw InvalidArgument("--n-oracle must be >= 2");
            ChannelSpectrum sigma = channel_spectrum(spec, K, k_grid, quad);
            const FaddeevSystem system(spec, K, quad);
            const Interval window = parse_window(window_text).value_or(default_window(sigma));
            const auto discrete = discrete_spectrum(system, sigma, window, {mesh});
            std::vector<double> roots;
            for (const auto& e : discrete.eigenvalues) roots.push_back(e.z + sigma_shift);

            if (sigma_shift != 0.0) {
                auto shift = [&](Interval& iv) { iv.lo += sigma_shift, iv.hi += sigma_shift; };
                shift(sigma.three_particle);
                if (sigma.two_particle_below) shift(*sigma.two_particle_below);
                if (sigma.two_particle_above) shift(*sigma.two_particle_above);
            }

            const Eigen::VectorXd eigs = eigenvalues(discretize_H(spec, K, make_grid(d, n_oracle)));
            if (!eigs_csv.empty()) {
                std::ofstream f(eigs_csv);
                if (!f) throw InvalidArgument("--eigs-csv: cannot open '" + eigs_csv + "'");
                for (double x : eigs) f << format_real(x) << '\n';
            }
            const SpectrumComparison cmp = compare_spectra(sigma, roots, eigs, ess_tol, disc_tol);
            json doc = to_json(cmp);
            doc["K"] = to_json(K);
            doc["n_oracle"] = n_oracle;
            doc["grid"] = grid_metadata(spec, c);
            emit_json(doc, c, out);
            return cmp.passed() ? kExitOk : kExitComparisonFailed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const DomainError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const NumericalFailure& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    return kExitInputError;
}

}  // namespace latspec
