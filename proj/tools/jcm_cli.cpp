// jcm — command-line front end: time-series runs, figure presets and a
// self-contained numerical check suite.

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcm/series.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

jcm::ObservableSet parse_observables(const std::string& list) {
    jcm::ObservableSet obs;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inversion")
            obs.inversion = true;
        else if (item == "mandel_q")
            obs.mandel_q = true;
        else if (item == "quadratures")
            obs.quadratures = true;
        else
            throw CLI::ValidationError("--observables", "unknown observable '" + item + "'");
    }
    return obs;
}

std::string with_label(const std::string& path, const std::string& label) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + "_" + label;
    return path.substr(0, dot) + "_" + label + path.substr(dot);
}

int emit_series(const std::vector<jcm::ObservableSeries>& all, jcm::OutputFormat format,
                const std::string& output) {
    try {
        if (output.empty()) {
            for (const auto& s : all) jcm::emit(s, format, std::cout);
        } else if (all.size() == 1) {
            jcm::emit_file(all[0], format, output);
        } else {
            for (const auto& s : all)
                jcm::emit_file(s, format, with_label(output, s.config.label));
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}

// --- check subcommand ------------------------------------------------------

struct CheckReport {
    int failures = 0;

    void record(const std::string& name, bool ok, const std::string& detail = "") {
        std::printf("%-52s %s%s%s\n", name.c_str(), ok ? "PASS" : "FAIL",
                    detail.empty() ? "" : "  ", detail.c_str());
        if (!ok) ++failures;
    }
};

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    const size_t n = std::max(p.size(), q.size());
    double tv = 0.0;
    for (size_t i = 0; i < n; ++i)
        tv += std::abs((i < p.size() ? p[i] : 0.0) - (i < q.size() ? q[i] : 0.0));
    return 0.5 * tv;
}

jcm::JointState random_state(const jcm::SpinRepresentation& rep, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    jcm::JointState st;
    st.a.resize(rep.dim);
    st.b.resize(rep.dim);
    for (int n = 0; n < rep.dim; ++n) {
        st.a[n] = jcm::Complex(gauss(rng), gauss(rng));
        st.b[n] = (n == rep.two_j) ? 0.0 : jcm::Complex(gauss(rng), gauss(rng));
    }
    const double norm = std::sqrt(st.norm2());
    st.a /= norm;
    st.b /= norm;
    return st;
}

int run_checks() {
    using namespace jcm;
    CheckReport report;
    std::mt19937 rng(12345);

    for (int two_j : {50, 500, 2000}) {
        const auto rep = make_representation(two_j);
        const double defect = commutator_defect(rep).cwiseAbs().maxCoeff();
        report.record("commutator identity (2j=" + std::to_string(two_j) + ")",
                      defect <= 1e-10 * two_j);
    }

    {
        const auto rep = make_representation(50);
        const auto spec = kerr_spectrum(rep, 1.0);
        bool ok = true;
        for (int n = 0; n <= 50; ++n)
            ok = ok && std::abs(spec.energies[n] - spec.energies[50 - n]) <= 1e-12;
        report.record("Kerr spectrum degeneracy E(n) = E(2j-n)", ok);
    }

    {
        bool ok = true;
        const auto rep = make_representation(200);
        for (int n = 0; n <= 200; ++n) {
            const double bb = n * (1.0 - (n - 1.0) / rep.two_j);
            // eigenvalue shared by n and 2j+1-n; the lower label comes back
            ok = ok && std::abs(number_from_bdag_b(rep, bb) - std::min(n, rep.two_j + 1 - n)) <= 1e-8;
        }
        report.record("number-operator relation recovers n", ok);
    }

    {
        const auto rep = make_representation(100);
        const auto dist = photon_distribution(rep, 0.3);
        double sum = 0.0, m1 = 0.0, m2 = 0.0;
        for (int n = 0; n <= 100; ++n) {
            sum += dist.probs[n];
            m1 += n * dist.probs[n];
            m2 += double(n) * n * dist.probs[n];
        }
        report.record("binomial normalization", std::abs(sum - 1.0) <= 1e-12);
        report.record("binomial moments",
                      std::abs(m1 - dist.mean) <= 1e-10 * dist.mean &&
                          std::abs(m2 - m1 * m1 - dist.variance) <= 1e-10 * dist.variance);
        const auto mirrored = photon_distribution(rep, 0.7);
        bool sym = true;
        for (int n = 0; n <= 100; ++n)
            sym = sym && std::abs(dist.probs[n] - mirrored.probs[100 - n]) <=
                             1e-15 * std::max(1.0, dist.probs[n]);
        report.record("binomial symmetry P(chi, n) = P(1-chi, 2j-n)", sym);
    }

    {
        const auto rep = make_representation(10000);
        const auto binom = photon_distribution(rep, 0.002);
        const auto poisson = poisson_reference(20.0, 200);
        report.record("binomial -> Poisson total variation < 0.01",
                      total_variation(binom.probs, poisson.probs) < 0.01);
    }

    {
        const auto rep = make_representation(20);
        const ModelParams params{1.0, 1.0, 1.0, rep};
        const JointState st0 = random_state(rep, rng);
        double worst = 0.0;
        for (double t : {5.0, 20.0, 50.0}) {
            const auto exact = evolve_closed_form(params, st0, t);
            const auto numeric = evolve_ode_oracle(params, st0, t);
            worst = std::max(worst, max_amplitude_difference(exact, numeric));
        }
        report.record("closed form vs ODE oracle (2j=20)", worst < 1e-8,
                      "max dev " + format_number(worst));

        const auto evolved = evolve_closed_form(params, st0, 37.5);
        bool unitary = true;
        for (int n = 0; n <= 20; ++n) {
            const double before = std::norm(st0.a[n]) + std::norm(st0.b[n]);
            const double after = std::norm(evolved.a[n]) + std::norm(evolved.b[n]);
            unitary = unitary && std::abs(before - after) <= 1e-12;
        }
        report.record("per-level unitarity", unitary);
    }

    {
        bool ok = true;
        for (double chi : {0.02, 0.2, 0.4}) {
            const auto rep = make_representation(50);
            const auto st = initial_state(rep, coherent_amplitudes(rep, {chi, 0.0}),
                                          AtomSpec::make_excited());
            const double q = mandel_q(field_moments(st, rep));
            ok = ok && std::abs(q + chi) <= 1e-12;
        }
        report.record("Mandel Q(0) = -chi for coherent field", ok);
    }

    {
        const auto rep = make_representation(40);
        const auto st = initial_state(rep, coherent_amplitudes(rep, {0.0, 0.0}),
                                      AtomSpec::make_excited());
        const auto q = quadrature_variances(field_moments(st, rep), rep);
        report.record("vacuum quadratures saturate the bound",
                      std::abs(q.var_x - 0.25) <= 1e-12 && std::abs(q.var_y - 0.25) <= 1e-12 &&
                          std::abs(q.var_x * q.var_y - q.robertson_bound) <= 1e-12);
    }

    std::printf("%d check(s) failed\n", report.failures);
    return report.failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jaynes-Cummings model in a finite Kerr medium"};
    app.require_subcommand(1);

    // --- run ---
    auto* run_cmd = app.add_subcommand("run", "Compute an observable time series");
    jcm::RunConfig cfg;
    double mean_n = 0.0, chi = 0.0;
    std::string observables = "inversion";
    std::string picture = "schrodinger";
    std::string atom = "excited";
    std::string format = "csv";
    std::string output;
    bool standard_jcm = false;
    run_cmd->add_option("--two-j", cfg.two_j, "Maximum excitation number 2j");
    auto* mean_opt = run_cmd->add_option("--mean-n", mean_n, "Mean photon number <n>");
    auto* chi_opt = run_cmd->add_option("--chi", chi, "Binomial parameter chi = <n>/2j");
    mean_opt->excludes(chi_opt);
    run_cmd->add_option("--omega", cfg.omega, "Field mode frequency");
    run_cmd->add_option("--omega0", cfg.omega0, "Atomic transition frequency");
    run_cmd->add_option("--lambda", cfg.lambda, "Coupling constant");
    run_cmd->add_option("--t-max", cfg.t_max, "Scaled time span lambda*t");
    run_cmd->add_option("--steps", cfg.steps, "Number of grid points");
    run_cmd->add_option("--observables", observables,
                        "Comma list of inversion,mandel_q,quadratures");
    run_cmd->add_option("--picture", picture, "schrodinger | interaction")
        ->check(CLI::IsMember({"schrodinger", "interaction"}));
    run_cmd->add_option("--atom", atom, "excited | ground")
        ->check(CLI::IsMember({"excited", "ground"}));
    run_cmd->add_option("--phase", cfg.phase_phi, "Coherent-state phase phi");
    run_cmd->add_flag("--oracle-check", cfg.oracle_check,
                      "Cross-check against the ODE integrator");
    run_cmd->add_flag("--standard-jcm", standard_jcm, "Standard (2j -> infinity) JCM reference");
    run_cmd->add_option("--format", format, "csv | doc")
        ->check(CLI::IsMember({"csv", "doc"}));
    run_cmd->add_option("--output", output, "Output file (stdout if omitted)");

    // --- figure ---
    auto* fig_cmd = app.add_subcommand("figure", "Run a reference-figure preset");
    std::string figure_name;
    std::string fig_format = "csv";
    std::string fig_output;
    fig_cmd->add_option("name", figure_name, "figure1 | figure2a..c | figure3a..c | figure4")
        ->required();
    fig_cmd->add_option("--format", fig_format, "csv | doc")
        ->check(CLI::IsMember({"csv", "doc"}));
    fig_cmd->add_option("--output", fig_output, "Output file (stdout if omitted)");

    // --- check ---
    auto* check_cmd = app.add_subcommand("check", "Run the numerical invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            if (mean_opt->count())
                cfg.mean_n = mean_n;
            else if (chi_opt->count())
                cfg.chi = chi;
            cfg.observables = parse_observables(observables);
            cfg.picture = picture == "interaction" ? jcm::Picture::interaction
                                                   : jcm::Picture::schrodinger;
            cfg.atom_init = atom == "ground" ? jcm::AtomInit::ground : jcm::AtomInit::excited;
            cfg.standard_jcm = standard_jcm;
            const auto series = jcm::run(cfg);
            return emit_series({series}, format == "doc" ? jcm::OutputFormat::doc
                                                         : jcm::OutputFormat::csv,
                               output);
        }
        if (fig_cmd->parsed()) {
            std::vector<jcm::ObservableSeries> all;
            for (const auto& preset : jcm::figure_preset(figure_name))
                all.push_back(jcm::run(preset));
            return emit_series(all, fig_format == "doc" ? jcm::OutputFormat::doc
                                                        : jcm::OutputFormat::csv,
                               fig_output);
        }
        if (check_cmd->parsed()) return run_checks();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
