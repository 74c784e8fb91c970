// parampli: spectra, stability maps, intensities and entanglement for the
// collisional parametric amplifier model.
//
// Exit codes: 0 success, 1 internal inconsistency (cross-check failure),
// 2 invalid input. Output files are byte-deterministic for a given config
// and seed; wall time goes to stderr so it never perturbs the artifact.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parampli/dynamics.hpp"
#include "parampli/entanglement.hpp"
#include "parampli/errors.hpp"
#include "parampli/io.hpp"
#include "parampli/model.hpp"
#include "parampli/spectral.hpp"
#include "parampli/stability.hpp"
#include "parampli/sweep.hpp"
#include "parampli/validate.hpp"
#include "parampli/version.hpp"

namespace {

using nlohmann::ordered_json;
using parampli::io::fmt17;

// --- config file precedence: CLI flags beat config values beat defaults ----

class ConfigBinder {
public:
    void add(CLI::Option* option, std::string key,
             std::function<void(const nlohmann::json&)> apply)
    {
        entries_.push_back({option, std::move(key), std::move(apply)});
    }

    void apply_file(const std::string& path) const
    {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open config file: " + path);
        nlohmann::json cfg;
        try {
            cfg = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("config file is not valid JSON: ") +
                                        e.what());
        }
        if (!cfg.is_object())
            throw std::invalid_argument("config file must hold a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            const Entry* hit = nullptr;
            for (const auto& e : entries_)
                if (e.key == key) {
                    hit = &e;
                    break;
                }
            if (!hit)
                throw std::invalid_argument("unknown config key '" + key + "'");
            if (hit->option->count() > 0) continue; // flag given: CLI wins
            try {
                hit->apply(value);
            } catch (const nlohmann::json::exception&) {
                throw std::invalid_argument("config key '" + key + "' has the wrong type");
            }
        }
    }

private:
    struct Entry {
        CLI::Option* option;
        std::string key;
        std::function<void(const nlohmann::json&)> apply;
    };
    std::vector<Entry> entries_;
};

template <class T>
void bind(ConfigBinder& binder, CLI::Option* option, const char* key, T& ref)
{
    binder.add(option, key, [&ref](const nlohmann::json& v) { ref = v.get<T>(); });
}

// --- shared output plumbing --------------------------------------------------

struct OutputArgs {
    std::string format;
    std::string out;
    std::string svg;
    std::string config;
    ConfigBinder binder;
};

void add_output_options(CLI::App* cmd, OutputArgs& o, const char* default_format,
                        bool with_svg)
{
    o.format = default_format;
    bind(o.binder, cmd->add_option("--format", o.format, "Output format: csv or json"),
         "format", o.format);
    bind(o.binder, cmd->add_option("--out", o.out, "Write to PATH instead of stdout"), "out",
         o.out);
    if (with_svg)
        bind(o.binder, cmd->add_option("--svg", o.svg, "Also write an SVG plot to PATH"),
             "svg", o.svg);
    cmd->add_option("--config", o.config, "JSON config file mirroring the long flag names");
}

void finish_meta(ordered_json& config_echo, const OutputArgs& o)
{
    config_echo["format"] = o.format;
    if (!o.out.empty()) config_echo["out"] = o.out;
    if (!o.svg.empty()) config_echo["svg"] = o.svg;
}

ordered_json make_meta(const char* command, ordered_json config_echo)
{
    ordered_json meta;
    meta["tool"] = "parampli";
    meta["version"] = parampli::kVersion;
    meta["command"] = command;
    meta["config"] = std::move(config_echo);
    return meta;
}

void emit_table(const parampli::io::Table& table, const ordered_json& meta,
                const OutputArgs& o)
{
    const auto fmt = parampli::io::parse_format(o.format);
    std::ostringstream buf;
    if (fmt == parampli::io::Format::csv)
        parampli::io::write_csv(buf, table, meta);
    else
        parampli::io::write_json(buf, table, meta);
    if (o.out.empty()) {
        std::cout << buf.str() << std::flush;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file: " + o.out);
        f << buf.str();
    }
}

void emit_svg(const OutputArgs& o, const std::vector<parampli::io::Series>& series,
              const char* x_label, const char* y_label)
{
    if (o.svg.empty()) return;
    std::ofstream f(o.svg, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open svg file: " + o.svg);
    parampli::io::write_svg(f, series, x_label, y_label);
}

// --- shared parameter plumbing -----------------------------------------------

struct PointArgs {
    std::optional<double> delta;
    std::optional<double> chi;
    double kappa = 0.0;
};

void add_point_options(CLI::App* cmd, PointArgs& p, ConfigBinder& binder)
{
    binder.add(cmd->add_option("--delta", p.delta, "Detuning (units of omega_m)"), "delta",
               [&p](const nlohmann::json& v) { p.delta = v.get<double>(); });
    binder.add(cmd->add_option("--chi", p.chi, "Coupling strength (units of omega_m)"), "chi",
               [&p](const nlohmann::json& v) { p.chi = v.get<double>(); });
    bind(binder,
         cmd->add_option("--kappa", p.kappa, "Collision rate (units of omega_m)")
             ->capture_default_str(),
         "kappa", p.kappa);
}

parampli::ModelParams resolve_point(const PointArgs& p)
{
    if (!p.delta || !p.chi)
        throw std::invalid_argument("--delta and --chi are required (flag or config)");
    return parampli::make_params(*p.delta, p.kappa, *p.chi);
}

struct GridArgs {
    double t_max = 15.0;
    int t_points = 1501;
};

void add_grid_options(CLI::App* cmd, GridArgs& g, ConfigBinder& binder)
{
    bind(binder, cmd->add_option("--t-max", g.t_max, "End of the time grid")
                     ->capture_default_str(),
         "t-max", g.t_max);
    bind(binder, cmd->add_option("--t-points", g.t_points, "Number of grid points")
                     ->capture_default_str(),
         "t-points", g.t_points);
}

std::vector<double> make_time_grid(const GridArgs& g)
{
    if (!std::isfinite(g.t_max) || g.t_max <= 0.0)
        throw std::invalid_argument("--t-max must be finite and positive");
    if (g.t_points < 2) throw std::invalid_argument("--t-points must be at least 2");
    std::vector<double> grid(std::size_t(g.t_points));
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = i + 1 == grid.size() ? g.t_max
                                       : g.t_max * double(i) / double(grid.size() - 1);
    return grid;
}

struct ThreadArgs {
    std::optional<unsigned> threads;
};

void add_thread_option(CLI::App* cmd, ThreadArgs& t, ConfigBinder& binder)
{
    binder.add(cmd->add_option("--threads", t.threads,
                               "Worker threads (default: PARAMPLI_THREADS or all cores)"),
               "threads", [&t](const nlohmann::json& v) { t.threads = v.get<unsigned>(); });
}

// --- subcommands ---------------------------------------------------------------

struct SpectrumCmd {
    PointArgs point;
    OutputArgs output;
};

int run_spectrum(SpectrumCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    const auto params = resolve_point(c.point);
    const auto spectrum = parampli::eigenfrequencies(params);
    const auto regime = parampli::classify_analytic(params);

    parampli::io::Table table;
    table.columns = {"omega1_re", "omega1_im", "omega2_re", "omega2_im",
                     "omega3_re", "omega3_im", "omega4_re", "omega4_im",
                     "gap",       "regime",    "omega_rot", "gamma"};
    std::vector<std::string> row;
    for (const auto& w : spectrum.omegas) {
        row.push_back(fmt17(w.real()));
        row.push_back(fmt17(w.imag()));
    }
    row.push_back(fmt17(spectrum.gap));
    row.push_back(parampli::to_string(regime.tag));
    row.push_back(fmt17(regime.omega_rot));
    row.push_back(fmt17(regime.gamma));
    table.rows.push_back(std::move(row));

    ordered_json cfg;
    cfg["delta"] = *c.point.delta;
    cfg["kappa"] = c.point.kappa;
    cfg["chi"] = *c.point.chi;
    finish_meta(cfg, c.output);
    emit_table(table, make_meta("spectrum", std::move(cfg)), c.output);
    return 0;
}

struct ClassifyCmd {
    PointArgs point;
    OutputArgs output;
};

int run_classify(ClassifyCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    const auto params = resolve_point(c.point);
    const auto spectrum = parampli::eigenfrequencies(params);
    const auto regime = parampli::classify_analytic(params);
    const auto threshold = parampli::threshold_chi_squared(params.delta, params.kappa);

    std::string spectral_tag = "skipped_near_defective";
    if (!spectrum.near_defective) {
        const auto spectral = parampli::classify_spectral(spectrum);
        spectral_tag = parampli::to_string(spectral.tag);
        if (regime.tag != parampli::RegimeTag::NearThreshold && spectral.tag != regime.tag)
            throw parampli::InconsistencyError("analytic and spectral classification disagree");
    }

    parampli::io::Table table;
    table.columns = {"delta",          "kappa",  "chi",             "chi2",
                     "threshold_chi2", "regime", "regime_spectral", "omega_rot",
                     "gamma"};
    table.rows.push_back({fmt17(params.delta), fmt17(params.kappa), fmt17(params.chi),
                          fmt17(params.chi * params.chi),
                          threshold ? fmt17(*threshold) : std::string("none"),
                          parampli::to_string(regime.tag), spectral_tag,
                          fmt17(regime.omega_rot), fmt17(regime.gamma)});

    ordered_json cfg;
    cfg["delta"] = *c.point.delta;
    cfg["kappa"] = c.point.kappa;
    cfg["chi"] = *c.point.chi;
    finish_meta(cfg, c.output);
    emit_table(table, make_meta("classify", std::move(cfg)), c.output);
    return 0;
}

struct StabilityMapCmd {
    std::vector<double> kappas{0.0, 0.4, 0.8};
    double delta_min = -3.0;
    double delta_max = 1.0;
    int delta_points = 201;
    ThreadArgs threads;
    OutputArgs output;
};

int run_stability_map(StabilityMapCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    if (c.kappas.empty()) throw std::invalid_argument("--kappa list must not be empty");
    if (c.delta_points < 2) throw std::invalid_argument("--delta-points must be at least 2");

    const unsigned threads = parampli::resolve_threads(c.threads.threads);
    std::vector<parampli::BoundaryCurve> curves(c.kappas.size());
    parampli::parallel_for(c.kappas.size(), threads, [&](std::size_t i) {
        curves[i] = parampli::trace_boundary(c.kappas[i], c.delta_min, c.delta_max,
                                             c.delta_points);
    });

    parampli::io::Table table;
    table.columns = {"kappa", "delta", "chi2_analytic", "chi2_bisect", "regime_at_probe"};
    std::vector<parampli::io::Series> series;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto& s = series.emplace_back();
        s.name = "kappa=" + parampli::io::fmt17(c.kappas[i]);
        for (const auto& pt : curves[i].points) {
            // Probe just above threshold: the regime the curve bounds.
            const double probe = pt.chi2_analytic + 1e-3 * (1.0 + pt.chi2_analytic);
            const auto regime = parampli::classify_analytic(
                {pt.delta, c.kappas[i], std::sqrt(probe)});
            table.rows.push_back({fmt17(c.kappas[i]), fmt17(pt.delta),
                                  fmt17(pt.chi2_analytic), fmt17(pt.chi2_bisect),
                                  parampli::to_string(regime.tag)});
            s.points.emplace_back(pt.delta, pt.chi2_analytic);
        }
    }

    ordered_json cfg;
    cfg["kappa"] = c.kappas;
    cfg["delta-min"] = c.delta_min;
    cfg["delta-max"] = c.delta_max;
    cfg["delta-points"] = c.delta_points;
    finish_meta(cfg, c.output);
    emit_table(table, make_meta("stability-map", std::move(cfg)), c.output);
    emit_svg(c.output, series, "delta", "chi^2 threshold");
    return 0;
}

struct IntensityCmd {
    PointArgs point;
    double alpha_re = 2.0;
    double alpha_im = 0.0;
    GridArgs grid;
    ThreadArgs threads;
    OutputArgs output;
};

int run_intensity(IntensityCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    const auto params = resolve_point(c.point);
    const std::complex<double> alpha(c.alpha_re, c.alpha_im);
    const auto grid = make_time_grid(c.grid);
    const unsigned threads = parampli::resolve_threads(c.threads.threads);

    const parampli::Evolution evolution(params);
    std::vector<parampli::IntensityRecord> records(grid.size());
    parampli::parallel_for(grid.size(), threads, [&](std::size_t i) {
        records[i] = parampli::intensity(evolution.at(grid[i]), alpha);
    });

    parampli::io::Table table;
    table.columns = {"t", "i_atom", "i_light", "log10_i_light"};
    std::vector<parampli::io::Series> series(2);
    series[0].name = "log10 I_atom";
    series[1].name = "log10 I_light";
    for (const auto& r : records) {
        table.rows.push_back(
            {fmt17(r.t), fmt17(r.i_atom), fmt17(r.i_light), fmt17(std::log10(r.i_light))});
        series[0].points.emplace_back(r.t, std::log10(r.i_atom));
        series[1].points.emplace_back(r.t, std::log10(r.i_light));
    }

    ordered_json cfg;
    cfg["delta"] = *c.point.delta;
    cfg["kappa"] = c.point.kappa;
    cfg["chi"] = *c.point.chi;
    cfg["alpha-re"] = c.alpha_re;
    cfg["alpha-im"] = c.alpha_im;
    cfg["t-max"] = c.grid.t_max;
    cfg["t-points"] = c.grid.t_points;
    finish_meta(cfg, c.output);
    emit_table(table, make_meta("intensity", std::move(cfg)), c.output);
    emit_svg(c.output, series, "t", "log10 intensity");
    return 0;
}

struct EntanglementCmd {
    PointArgs point;
    GridArgs grid;
    ThreadArgs threads;
    OutputArgs output;
};

int run_entanglement(EntanglementCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    const auto params = resolve_point(c.point);
    const auto grid = make_time_grid(c.grid);
    const unsigned threads = parampli::resolve_threads(c.threads.threads);

    const parampli::Evolution evolution(params);
    std::vector<parampli::YRecord> records(grid.size());
    parampli::parallel_for(grid.size(), threads, [&](std::size_t i) {
        records[i] = parampli::entanglement_point(evolution, grid[i]);
    });

    parampli::io::Table table;
    table.columns = {"t", "y", "y_closed", "y_covariance"};
    std::vector<parampli::io::Series> series(1);
    series[0].name = "Y";
    for (const auto& r : records) {
        table.rows.push_back(
            {fmt17(r.t), fmt17(r.y), fmt17(r.y_closed), fmt17(r.y_covariance)});
        series[0].points.emplace_back(r.t, r.y);
    }

    ordered_json cfg;
    cfg["delta"] = *c.point.delta;
    cfg["kappa"] = c.point.kappa;
    cfg["chi"] = *c.point.chi;
    cfg["t-max"] = c.grid.t_max;
    cfg["t-points"] = c.grid.t_points;
    finish_meta(cfg, c.output);
    emit_table(table, make_meta("entanglement", std::move(cfg)), c.output);
    emit_svg(c.output, series, "t", "Y");
    return 0;
}

struct ValidateCmd {
    std::uint64_t seed = 42;
    std::optional<double> tol;
    OutputArgs output;
};

int run_validate(ValidateCmd& c)
{
    c.output.binder.apply_file(c.output.config);
    parampli::ValidationOptions options;
    options.seed = c.seed;
    options.tolerance_override = c.tol;
    const auto report = parampli::run_validation(options);

    parampli::io::Table table;
    table.columns = {"property", "status", "worst", "tolerance", "detail"};
    for (const auto& r : report.results) {
        std::string detail = r.detail;
        for (auto& ch : detail)
            if (ch == ',') ch = ';'; // keep the CSV cell unambiguous
        table.rows.push_back({r.name, r.passed ? "pass" : "FAIL", fmt17(r.worst),
                              fmt17(r.tolerance), detail});
    }

    ordered_json cfg;
    cfg["seed"] = c.seed;
    if (c.tol) cfg["tol"] = *c.tol;
    finish_meta(cfg, c.output);
    auto meta = make_meta("validate", std::move(cfg));
    meta["y_range"] = ordered_json{{"min", report.y_min},
                                   {"max", report.y_max},
                                   {"count", report.y_count}};
    emit_table(table, meta, c.output);
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    const auto start = std::chrono::steady_clock::now();

    CLI::App app{"Parametric amplification of trapped atoms: spectra, stability maps, "
                 "intensities, entanglement"};
    app.require_subcommand(1);
    app.set_version_flag("--version", parampli::kVersion);

    SpectrumCmd spectrum;
    ClassifyCmd classify;
    StabilityMapCmd stability;
    IntensityCmd intensity;
    EntanglementCmd entanglement;
    ValidateCmd validate;
    int exit_code = 0;

    {
        auto* cmd = app.add_subcommand("spectrum", "Eigenfrequencies and regime at one point");
        add_point_options(cmd, spectrum.point, spectrum.output.binder);
        add_output_options(cmd, spectrum.output, "json", false);
        cmd->callback([&] { exit_code = run_spectrum(spectrum); });
    }
    {
        auto* cmd = app.add_subcommand("classify", "Regime through both routes at one point");
        add_point_options(cmd, classify.point, classify.output.binder);
        add_output_options(cmd, classify.output, "json", false);
        cmd->callback([&] { exit_code = run_classify(classify); });
    }
    {
        auto* cmd = app.add_subcommand("stability-map",
                                       "Instability boundary over a detuning grid");
        bind(stability.output.binder,
             cmd->add_option("--kappa", stability.kappas, "Collision rates (repeatable)")
                 ->capture_default_str(),
             "kappa", stability.kappas);
        bind(stability.output.binder,
             cmd->add_option("--delta-min", stability.delta_min, "Grid start")
                 ->capture_default_str(),
             "delta-min", stability.delta_min);
        bind(stability.output.binder,
             cmd->add_option("--delta-max", stability.delta_max, "Grid end")
                 ->capture_default_str(),
             "delta-max", stability.delta_max);
        bind(stability.output.binder,
             cmd->add_option("--delta-points", stability.delta_points, "Grid size")
                 ->capture_default_str(),
             "delta-points", stability.delta_points);
        add_thread_option(cmd, stability.threads, stability.output.binder);
        add_output_options(cmd, stability.output, "csv", true);
        cmd->callback([&] { exit_code = run_stability_map(stability); });
    }
    {
        auto* cmd = app.add_subcommand("intensity", "Field intensities over a time grid");
        add_point_options(cmd, intensity.point, intensity.output.binder);
        bind(intensity.output.binder,
             cmd->add_option("--alpha-re", intensity.alpha_re, "Initial coherent amplitude, real part")
                 ->capture_default_str(),
             "alpha-re", intensity.alpha_re);
        bind(intensity.output.binder,
             cmd->add_option("--alpha-im", intensity.alpha_im, "Initial coherent amplitude, imaginary part")
                 ->capture_default_str(),
             "alpha-im", intensity.alpha_im);
        add_grid_options(cmd, intensity.grid, intensity.output.binder);
        add_thread_option(cmd, intensity.threads, intensity.output.binder);
        add_output_options(cmd, intensity.output, "csv", true);
        cmd->callback([&] { exit_code = run_intensity(intensity); });
    }
    {
        auto* cmd = app.add_subcommand("entanglement",
                                       "Entanglement coefficient Y over a time grid");
        add_point_options(cmd, entanglement.point, entanglement.output.binder);
        add_grid_options(cmd, entanglement.grid, entanglement.output.binder);
        add_thread_option(cmd, entanglement.threads, entanglement.output.binder);
        add_output_options(cmd, entanglement.output, "csv", true);
        cmd->callback([&] { exit_code = run_entanglement(entanglement); });
    }
    {
        auto* cmd = app.add_subcommand("validate", "Run the full property suite");
        bind(validate.output.binder,
             cmd->add_option("--seed", validate.seed, "Seed for randomized sweeps")
                 ->capture_default_str(),
             "seed", validate.seed);
        validate.output.binder.add(
            cmd->add_option("--tol", validate.tol,
                            "Override every property tolerance (failure-path testing)"),
            "tol",
            [&validate](const nlohmann::json& v) { validate.tol = v.get<double>(); });
        add_output_options(cmd, validate.output, "csv", false);
        cmd->callback([&] { exit_code = run_validate(validate); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);                                    // prints the message
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parampli::InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::fprintf(stderr, "# wall_time_s %.3f\n", elapsed.count());
    return exit_code;
}
