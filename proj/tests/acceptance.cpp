// Acceptance suite: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <cstdio>
#include <random>
#include <vector>

#include "jcm/observables.hpp"
#include "jcm/series.hpp"
#include "test_helpers.hpp"

using namespace jcm;

namespace {

int failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail) {
    std::printf("criterion %d: %-38s %s  (%s)\n", number, title, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) { return format_number(v); }

// 1. Closed form vs adaptive ODE integration, random states, lambda t <= 50.
void criterion_oracle_equivalence() {
    std::mt19937 rng(2024);
    double worst = 0.0;
    for (int two_j : {4, 20, 50}) {
        const ModelParams p{1.0, 1.2, 1.0, make_representation(two_j)};
        for (int trial = 0; trial < 3; ++trial) {
            const auto st0 = jcm_test::random_state(p.rep, rng);
            for (double t : {5.0, 25.0, 50.0}) {
                const auto exact = evolve_closed_form(p, st0, t);
                const auto numeric = evolve_ode_oracle(p, st0, t);
                worst = std::max(worst, max_amplitude_difference(exact, numeric));
            }
        }
    }
    report(1, "closed form vs ODE oracle", worst < 1e-8, "max deviation " + fmt(worst));
}

// 2. Standard JCM: collapse then first revival at 2 pi sqrt(20) within 5%.
void criterion_standard_revival() {
    auto inversion = [](double lt) { return standard_jcm_inversion(20.0, 0.0, 1.0, lt, 200); };
    double collapse_level = 0.0;
    for (double lt = 5.0; lt <= 15.0; lt += 0.01)
        collapse_level = std::max(collapse_level, std::abs(inversion(lt)));
    const double argmax = refine_argmax(inversion, 20.0, 40.0, 0.01);
    const double target = 2.0 * M_PI * std::sqrt(20.0);
    const bool ok = collapse_level < 0.1 && std::abs(argmax - target) <= 0.05 * target;
    report(2, "standard JCM collapse and revival", ok,
           "revival argmax " + fmt(argmax) + ", target " + fmt(target) + ", collapse level " +
               fmt(collapse_level));
}

// 3. Finite medium (2j = 1000, <n> = 20): revival argmax within 5% of the
//    printed estimate.
void criterion_finite_revival() {
    const ModelParams p{1.0, 1.0, 1.0, make_representation(1000)};
    const double chi = 0.02;
    const double estimate = revival_time_estimate(p, chi);
    auto inversion = [&](double lt) { return inversion_closed_form(p, chi, lt); };
    const double argmax = refine_argmax(inversion, 0.75 * estimate, 1.25 * estimate, 0.01);
    const bool ok = std::abs(argmax - estimate) <= 0.05 * estimate;
    report(3, "finite-medium revival vs estimate", ok,
           "argmax " + fmt(argmax) + ", estimate " + fmt(estimate));
}

// 4. chi = 1 trapping: inversion stays exactly 1.
void criterion_trapping() {
    const ModelParams p{1.0, 1.0, 1.0, make_representation(50)};
    const auto st0 = initial_state(p.rep, coherent_amplitudes(p.rep, {1.0, 0.0}),
                                   AtomSpec::make_excited());
    double worst = 0.0;
    for (double lt = 0.0; lt <= 60.0; lt += 0.1) {
        const auto st = evolve_closed_form(p, st0, lt);
        worst = std::max(worst, std::abs(atomic_inversion(st) - 1.0));
    }
    report(4, "trapping at chi = 1", worst <= 1e-12, "max |sigma3 - 1| = " + fmt(worst));
}

// 5. Q(0) = -chi exactly; Q < 0 after transients in the 2j = 50, <n> = 20 run.
void criterion_photon_statistics() {
    double worst_q0 = 0.0;
    for (double chi : {0.02, 0.2, 0.4}) {
        const auto rep = make_representation(100);
        const auto st = initial_state(rep, coherent_amplitudes(rep, {chi, 0.0}),
                                      AtomSpec::make_excited());
        worst_q0 = std::max(worst_q0, std::abs(mandel_q(field_moments(st, rep)) + chi));
    }

    RunConfig cfg;
    cfg.two_j = 50;
    cfg.mean_n = 20.0;
    cfg.observables = {false, true, false};
    const auto series = run(cfg);
    int window = 0, negative = 0;
    for (const auto& row : series.rows) {
        if (row.t < 2.0) continue;
        ++window;
        if (row.q_mandel < 0.0) ++negative;
    }
    const double fraction = static_cast<double>(negative) / window;
    const bool ok = worst_q0 <= 1e-12 && fraction > 0.9;
    report(5, "photon statistics (Q)", ok,
           "max |Q(0)+chi| = " + fmt(worst_q0) + ", antibunched fraction " + fmt(fraction));
}

// 6. Squeezing structure in the interaction picture for 2j in {1000, 50}:
//    var_x dips below 1/4 early, var_y never does, no squeezing at long
//    times, Robertson bound everywhere.
void criterion_squeezing() {
    bool ok = true;
    std::string detail;
    for (int two_j : {1000, 50}) {
        RunConfig cfg;
        cfg.two_j = two_j;
        cfg.mean_n = 20.0;
        cfg.observables = {false, false, true};
        cfg.picture = Picture::interaction;
        cfg.steps = 6001;
        const auto series = run(cfg);

        double min_x_short = 1e9, min_y_short = 1e9, min_late = 1e9, slack = 1e9;
        for (const auto& row : series.rows) {
            if (row.t <= 5.0) {
                min_x_short = std::min(min_x_short, row.var_x);
                min_y_short = std::min(min_y_short, row.var_y);
            }
            if (row.t >= 30.0) min_late = std::min(min_late, std::min(row.var_x, row.var_y));
            slack = std::min(slack, row.var_x * row.var_y - row.robertson_bound);
        }
        const bool this_ok = min_x_short < 0.25 && min_y_short >= 0.25 && min_late >= 0.25 &&
                             slack >= -1e-10;
        ok = ok && this_ok;
        detail += "2j=" + std::to_string(two_j) + ": min var_x " + fmt(min_x_short) +
                  ", min var_y " + fmt(min_y_short) + ", late min " + fmt(min_late) +
                  ", bound slack " + fmt(slack) + "; ";
    }
    report(6, "squeezing structure", ok, detail);
}

// 7. Algebraic suite: commutator identity, Kerr degeneracy, number-operator
//    relation, binomial properties, binomial -> Poisson convergence.
void criterion_algebra() {
    bool ok = true;
    std::string detail;

    for (int two_j : {50, 500, 2000}) {
        const auto rep = make_representation(two_j);
        const double defect = commutator_defect(rep).cwiseAbs().maxCoeff();
        ok = ok && defect <= 1e-10 * two_j;
        if (two_j == 2000) detail += "commutator defect(2j=2000) " + fmt(defect) + "; ";
    }

    {
        const auto rep = make_representation(50);
        const auto spec = kerr_spectrum(rep, 1.0);
        for (int n = 0; n <= 50; ++n)
            ok = ok && std::abs(spec.energies[n] - spec.energies[50 - n]) <=
                           1e-12 * std::max(1.0, std::abs(spec.energies[n]));
    }

    {
        // each b†b eigenvalue is shared by levels n and 2j+1-n; the formula
        // returns the lower of the two degenerate labels
        const auto rep = make_representation(200);
        for (int n = 0; n <= 200; ++n) {
            const double bb = n * (1.0 - (n - 1.0) / rep.two_j);
            const int expected = std::min(n, rep.two_j + 1 - n);
            ok = ok && std::abs(number_from_bdag_b(rep, bb) - expected) <= 1e-8;
        }
    }

    {
        const auto rep = make_representation(300);
        for (double chi : {0.25, 0.5, 0.8125}) {
            const auto dist = photon_distribution(rep, chi);
            const auto mirror = photon_distribution(rep, 1.0 - chi);
            double sum = 0.0, m1 = 0.0, m2c = 0.0;
            for (int n = 0; n < rep.dim; ++n) {
                sum += dist.probs[n];
                m1 += n * dist.probs[n];
                m2c += (n - dist.mean) * (n - dist.mean) * dist.probs[n];
                ok = ok && std::abs(dist.probs[n] - mirror.probs[rep.two_j - n]) <=
                               1e-15 * std::max(1e-30, dist.probs[n]);
            }
            ok = ok && std::abs(sum - 1.0) <= 1e-12;
            ok = ok && std::abs(m1 - dist.mean) <= 1e-10 * dist.mean;
            ok = ok && std::abs(m2c - dist.variance) <= 1e-10 * dist.variance;
        }
    }

    {
        const auto binom = photon_distribution(make_representation(10000), 0.002);
        const auto poisson = poisson_reference(20.0, 400);
        double tv = 0.0;
        for (size_t n = 0; n < binom.probs.size(); ++n)
            tv += std::abs(binom.probs[n] - (n < poisson.probs.size() ? poisson.probs[n] : 0.0));
        tv *= 0.5;
        ok = ok && tv < 0.01;
        detail += "TV(binomial, Poisson) " + fmt(tv);
    }

    report(7, "algebraic suite", ok, detail);
}

// 8. Contraction limit: the largest feasible 2j (10^6 here) matches the
//    standard JCM pointwise < 1e-2.
void criterion_contraction() {
    const ModelParams p{1.0, 1.0, 1.0, make_representation(1000000)};
    const double chi = 20.0 / 1000000.0;
    double worst = 0.0;
    for (double lt = 0.0; lt <= 30.0; lt += 0.05) {
        const double finite = inversion_closed_form(p, chi, lt);
        const double limit = standard_jcm_inversion(20.0, 0.0, 1.0, lt, 300);
        worst = std::max(worst, std::abs(finite - limit));
    }
    report(8, "contraction to the standard JCM", worst < 1e-2, "max deviation " + fmt(worst));
}

}  // namespace

int main() {
    criterion_oracle_equivalence();
    criterion_standard_revival();
    criterion_finite_revival();
    criterion_trapping();
    criterion_photon_statistics();
    criterion_squeezing();
    criterion_algebra();
    criterion_contraction();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
