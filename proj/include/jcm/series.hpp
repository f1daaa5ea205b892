// series.hpp — run configuration, time-series evaluation and file emission
// for the command-line front end.

#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcm/coherent_states.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/observables.hpp"

namespace jcm {

enum class Picture { schrodinger, interaction };
enum class AtomInit { excited, ground };
enum class OutputFormat { csv, doc };

struct ObservableSet {
    bool inversion{false};
    bool mandel_q{false};
    bool quadratures{false};
};

struct RunConfig {
    int two_j{1000};
    std::optional<double> mean_n;
    std::optional<double> chi;
    double omega{1.0};
    double omega0{1.0};
    double lambda{1.0};
    double t_max{60.0};  // scaled time, units of 1/lambda
    int steps{3000};
    ObservableSet observables{true, false, false};
    Picture picture{Picture::schrodinger};
    AtomInit atom_init{AtomInit::excited};
    double phase_phi{0.0};
    bool oracle_check{false};
    bool standard_jcm{false};  // Poisson-weight reference instead of the spin model
    std::string label;         // distinguishes multi-series presets
};

struct ObservableRecord {
    double t{0.0};  // scaled time lambda*t
    double sigma3{0.0};
    double q_mandel{0.0};
    double var_x{0.0};
    double var_y{0.0};
    double robertson_bound{0.0};
};

struct ObservableSeries {
    RunConfig config;
    std::vector<ObservableRecord> rows;
    std::optional<double> oracle_max_deviation;
};

inline void validate(const RunConfig& cfg) {
    if (cfg.mean_n.has_value() == cfg.chi.has_value())
        throw std::invalid_argument("config: exactly one of mean_n / chi must be given");
    if (!cfg.standard_jcm && cfg.two_j < 1)
        throw std::invalid_argument("config: two_j must be >= 1");
    if (cfg.mean_n && !cfg.standard_jcm && *cfg.mean_n > cfg.two_j)
        throw std::invalid_argument("config: mean_n exceeds two_j");
    if (cfg.omega <= 0.0 || cfg.omega0 <= 0.0 || cfg.lambda <= 0.0)
        throw std::invalid_argument("config: frequencies must be positive");
    if (cfg.t_max <= 0.0)
        throw std::invalid_argument("config: t_max must be positive");
    if (cfg.steps < 2)
        throw std::invalid_argument("config: steps must be >= 2");
    if (!cfg.observables.inversion && !cfg.observables.mandel_q && !cfg.observables.quadratures)
        throw std::invalid_argument("config: no observables requested");
    if (cfg.standard_jcm && (cfg.observables.mandel_q || cfg.observables.quadratures))
        throw std::invalid_argument("config: standard-JCM mode provides inversion only");
}

inline double max_amplitude_difference(const JointState& u, const JointState& v) {
    double m = 0.0;
    for (int n = 0; n < u.a.size(); ++n) {
        m = std::max(m, std::abs(u.a[n] - v.a[n]));
        m = std::max(m, std::abs(u.b[n] - v.b[n]));
    }
    return m;
}

inline ObservableSeries run(const RunConfig& cfg) {
    validate(cfg);
    ObservableSeries series;
    series.config = cfg;
    series.rows.resize(cfg.steps);

    const double scaled_max = cfg.t_max;

    if (cfg.standard_jcm) {
        const double mean = *cfg.mean_n;
        const int n_max = static_cast<int>(mean + 20.0 * std::sqrt(mean) + 50.0);
        const double delta = cfg.omega0 - cfg.omega;
        for (int i = 0; i < cfg.steps; ++i) {
            const double st = scaled_max * i / (cfg.steps - 1);
            series.rows[i].t = st;
            series.rows[i].sigma3 =
                standard_jcm_inversion(mean, delta, cfg.lambda, st / cfg.lambda, n_max);
        }
        return series;
    }

    const SpinRepresentation rep = make_representation(cfg.two_j);
    const double chi = cfg.chi ? *cfg.chi : chi_from_mean(rep, *cfg.mean_n);
    const ModelParams params{cfg.omega, cfg.omega0, cfg.lambda, rep};
    const Eigen::VectorXcd field = coherent_amplitudes(rep, {chi, cfg.phase_phi});
    const AtomSpec atom = (cfg.atom_init == AtomInit::excited) ? AtomSpec::make_excited()
                                                               : AtomSpec::make_ground();
    const JointState state0 = initial_state(rep, field, atom);

    for (int i = 0; i < cfg.steps; ++i) {
        const double st = scaled_max * i / (cfg.steps - 1);
        const double t = st / cfg.lambda;
        JointState state = evolve_closed_form(params, state0, t);
        if (cfg.picture == Picture::schrodinger)
            state = to_schrodinger_picture(params, state);
        ObservableRecord& row = series.rows[i];
        row.t = st;
        if (cfg.observables.inversion) row.sigma3 = atomic_inversion(state);
        if (cfg.observables.mandel_q || cfg.observables.quadratures) {
            const FieldMoments mom = field_moments(state, rep);
            if (cfg.observables.mandel_q) row.q_mandel = mandel_q(mom);
            if (cfg.observables.quadratures) {
                const QuadratureVariances q = quadrature_variances(mom, rep);
                row.var_x = q.var_x;
                row.var_y = q.var_y;
                row.robertson_bound = q.robertson_bound;
            }
        }
    }

    if (cfg.oracle_check) {
        double worst = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const double t = scaled_max * k / 10.0 / cfg.lambda;
            const JointState exact = evolve_closed_form(params, state0, t);
            const JointState numeric = evolve_ode_oracle(params, state0, t);
            worst = std::max(worst, max_amplitude_difference(exact, numeric));
        }
        series.oracle_max_deviation = worst;
    }
    return series;
}

// --- figure presets ------------------------------------------------------

/// Configurations of the reference figures: all use <n> = 20 on average and
/// exact resonance omega = omega0 = lambda. figure4 yields two series.
inline std::vector<RunConfig> figure_preset(const std::string& name) {
    RunConfig base;
    base.mean_n = 20.0;
    base.label = name;

    auto inversion_cfg = [&](int two_j) {
        RunConfig c = base;
        c.two_j = two_j;
        c.observables = {true, false, false};
        return c;
    };
    auto mandel_cfg = [&](int two_j) {
        RunConfig c = base;
        c.two_j = two_j;
        c.observables = {false, true, false};
        return c;
    };
    auto quad_cfg = [&](int two_j) {
        RunConfig c = base;
        c.two_j = two_j;
        c.observables = {false, false, true};
        c.picture = Picture::interaction;
        c.label = name + "_2j" + std::to_string(two_j);
        return c;
    };

    if (name == "figure1") {
        RunConfig c = base;
        c.standard_jcm = true;
        c.observables = {true, false, false};
        return {c};
    }
    if (name == "figure2a") return {inversion_cfg(1000)};
    if (name == "figure2b") return {inversion_cfg(100)};
    if (name == "figure2c") return {inversion_cfg(50)};
    if (name == "figure3a") return {mandel_cfg(1000)};
    if (name == "figure3b") return {mandel_cfg(100)};
    if (name == "figure3c") return {mandel_cfg(50)};
    if (name == "figure4") return {quad_cfg(1000), quad_cfg(50)};
    throw std::invalid_argument("figure_preset: unknown figure '" + name + "'");
}

// --- emission ------------------------------------------------------------

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string observables_string(const ObservableSet& obs) {
    std::string s;
    auto add = [&](const char* name) {
        if (!s.empty()) s += ',';
        s += name;
    };
    if (obs.inversion) add("inversion");
    if (obs.mandel_q) add("mandel_q");
    if (obs.quadratures) add("quadratures");
    return s;
}

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["two_j"] = cfg.two_j;
    if (cfg.mean_n) j["mean_n"] = *cfg.mean_n;
    if (cfg.chi) j["chi"] = *cfg.chi;
    j["omega"] = cfg.omega;
    j["omega0"] = cfg.omega0;
    j["lambda"] = cfg.lambda;
    j["t_max"] = cfg.t_max;
    j["steps"] = cfg.steps;
    j["observables"] = observables_string(cfg.observables);
    j["picture"] = cfg.picture == Picture::schrodinger ? "schrodinger" : "interaction";
    j["atom_init"] = cfg.atom_init == AtomInit::excited ? "excited" : "ground";
    j["phase_phi"] = cfg.phase_phi;
    j["oracle_check"] = cfg.oracle_check;
    j["standard_jcm"] = cfg.standard_jcm;
    if (!cfg.label.empty()) j["label"] = cfg.label;
    return j;
}

inline void emit_csv(const ObservableSeries& series, std::ostream& os) {
    const ObservableSet& obs = series.config.observables;
    os << "# config " << config_json(series.config).dump() << "\n";
    os << "# time axis: scaled time lambda*t\n";
    if (series.oracle_max_deviation)
        os << "# oracle_max_deviation " << format_number(*series.oracle_max_deviation) << "\n";
    os << "t";
    if (obs.inversion) os << ",sigma3";
    if (obs.mandel_q) os << ",q_mandel";
    if (obs.quadratures) os << ",var_x,var_y,robertson_bound";
    os << "\n";
    for (const ObservableRecord& r : series.rows) {
        os << format_number(r.t);
        if (obs.inversion) os << ',' << format_number(r.sigma3);
        if (obs.mandel_q) os << ',' << format_number(r.q_mandel);
        if (obs.quadratures)
            os << ',' << format_number(r.var_x) << ',' << format_number(r.var_y) << ','
               << format_number(r.robertson_bound);
        os << "\n";
    }
}

inline void emit_doc(const ObservableSeries& series, std::ostream& os) {
    const ObservableSet& obs = series.config.observables;
    nlohmann::json doc;
    doc["config"] = config_json(series.config);
    doc["metadata"]["time_axis"] = "scaled time lambda*t";
    if (series.oracle_max_deviation)
        doc["metadata"]["oracle_max_deviation"] = *series.oracle_max_deviation;
    nlohmann::json rows = nlohmann::json::array();
    for (const ObservableRecord& r : series.rows) {
        nlohmann::json row;
        row["t"] = r.t;
        if (obs.inversion) row["sigma3"] = r.sigma3;
        if (obs.mandel_q) row["q_mandel"] = r.q_mandel;
        if (obs.quadratures) {
            row["var_x"] = r.var_x;
            row["var_y"] = r.var_y;
            row["robertson_bound"] = r.robertson_bound;
        }
        rows.push_back(row);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
}

inline void emit(const ObservableSeries& series, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::csv)
        emit_csv(series, os);
    else
        emit_doc(series, os);
}

inline void emit_file(const ObservableSeries& series, OutputFormat format,
                      const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    emit(series, format, os);
    if (!os.good())
        throw std::runtime_error("emit: write failure on '" + path + "'");
}

}  // namespace jcm
