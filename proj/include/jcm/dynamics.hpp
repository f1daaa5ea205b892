// dynamics.hpp — exact interaction-picture dynamics of the spin-model JCM:
// generalized detuning/Rabi frequencies, closed-form evolution, an
// independent ODE oracle, picture conversion and reduced-state data.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "jcm/spin_algebra.hpp"

namespace jcm {

struct ModelParams {
    double omega{1.0};    // field mode frequency
    double omega0{1.0};   // atomic transition frequency
    double lambda{1.0};   // coupling constant
    SpinRepresentation rep;
};

inline void validate(const ModelParams& p) {
    if (p.omega <= 0.0 || p.omega0 <= 0.0 || p.lambda <= 0.0)
        throw std::invalid_argument("ModelParams: frequencies must be positive");
}

/// Joint atom+field state in the interaction picture. a[n] multiplies
/// |n>|+>, b[n] multiplies |n+1>|->; b[2j] is identically zero since the
/// field has no level 2j+1.
struct JointState {
    Eigen::VectorXcd a;
    Eigen::VectorXcd b;
    double t{0.0};

    double norm2() const { return a.squaredNorm() + b.squaredNorm(); }
};

/// Generalized detuning Omega_n = omega0 - omega (1 - n/j - 1/2j).
inline double detuning(const ModelParams& p, int n) {
    check_level(p.rep, n, "detuning");
    return p.omega0 - p.omega + p.omega * (2.0 * n + 1.0) / p.rep.two_j;
}

/// Generalized Rabi frequency Gamma_n = sqrt(Omega_n^2 + 4 lambda^2 (n+1)(1-n/2j)).
inline double rabi_frequency(const ModelParams& p, int n) {
    const double om = detuning(p, n);
    const double f = raising_coeff(p.rep, n);
    return std::hypot(om, 2.0 * p.lambda * f);
}

struct AtomSpec {
    Complex excited{1.0, 0.0};
    Complex ground{0.0, 0.0};

    static AtomSpec make_excited() { return {1.0, 0.0}; }
    static AtomSpec make_ground() { return {0.0, 1.0}; }
};

/// Product state (field amplitudes) x (atom spec) mapped into the (a, b)
/// ladder layout. The sector |0>|-> lies outside the ladder basis; any
/// population there is rejected.
inline JointState initial_state(const SpinRepresentation& rep,
                                const Eigen::VectorXcd& field, const AtomSpec& atom) {
    if (field.size() != rep.dim)
        throw std::invalid_argument("initial_state: field vector length != dim");
    if (std::abs(field.squaredNorm() - 1.0) > 1e-8)
        throw std::invalid_argument("initial_state: field amplitudes not normalized");
    const double atom_norm = std::norm(atom.excited) + std::norm(atom.ground);
    if (std::abs(atom_norm - 1.0) > 1e-8)
        throw std::invalid_argument("initial_state: atom spec not normalized");
    if (std::abs(atom.ground) > 0.0 && std::abs(field[0]) > 1e-14)
        throw std::invalid_argument(
            "initial_state: unsupported sector |0>|->, outside the ladder basis");

    JointState st;
    st.a = atom.excited * field;
    st.b = Eigen::VectorXcd::Zero(rep.dim);
    for (int n = 0; n + 1 < rep.dim; ++n)
        st.b[n] = atom.ground * field[n + 1];
    st.t = 0.0;
    return st;
}

/// Closed-form evolution: per n, the 2x2 unitary
///   a_n(t) = { a_n(0)[cos(G t/2) - i (W/G) sin(G t/2)]
///              - i b_n(0) (2 lambda f_n / G) sin(G t/2) } e^{+i W t/2},
/// and the mirrored expression for b_n(t) with e^{-i W t/2}. The off-diagonal
/// weight sqrt(1 - W^2/G^2) is evaluated as 2 lambda f_n / G, which stays
/// stable when W is close to G. The phase exponent is W t/2: that is the form
/// that satisfies the interaction-picture equations of motion, checked
/// against the independent ODE oracle.
inline JointState evolve_closed_form(const ModelParams& p, const JointState& state0, double t) {
    validate(p);
    if (state0.t != 0.0)
        throw std::invalid_argument("evolve_closed_form: state0 must be at t = 0");
    const int dim = p.rep.dim;
    if (state0.a.size() != dim || state0.b.size() != dim)
        throw std::invalid_argument("evolve_closed_form: state size != dim");

    JointState out;
    out.a.resize(dim);
    out.b.resize(dim);
    out.t = t;
    for (int n = 0; n < dim; ++n) {
        const double om = detuning(p, n);
        const double coupling = 2.0 * p.lambda * raising_coeff(p.rep, n);
        const double gamma = std::hypot(om, coupling);
        const double half = 0.5 * gamma * t;
        const double c = std::cos(half);
        // sin(G t/2)/G with the G -> 0 limit t/2
        const double s = (gamma > 0.0) ? std::sin(half) / gamma : 0.5 * t;
        const Complex u11(c, -om * s);
        const Complex u12(0.0, -coupling * s);
        const Complex phase = std::polar(1.0, 0.5 * om * t);
        out.a[n] = (u11 * state0.a[n] + u12 * state0.b[n]) * phase;
        out.b[n] = (std::conj(u11) * state0.b[n] + u12 * state0.a[n]) * std::conj(phase);
    }
    return out;
}

/// Independent oracle: adaptive RKF78 integration of
///   i da_n/dt = lambda f_n e^{+i W_n t} b_n,
///   i db_n/dt = lambda f_n e^{-i W_n t} a_n,
/// local tolerance 1e-11. Shares nothing with the closed form beyond the
/// coefficient functions.
inline JointState evolve_ode_oracle(const ModelParams& p, const JointState& state0, double t) {
    validate(p);
    namespace ode = boost::numeric::odeint;
    using OdeState = std::vector<Complex>;

    const int dim = p.rep.dim;
    std::vector<double> om(dim), coup(dim);
    for (int n = 0; n < dim; ++n) {
        om[n] = detuning(p, n);
        coup[n] = p.lambda * raising_coeff(p.rep, n);
    }

    auto rhs = [&](const OdeState& y, OdeState& dydt, double time) {
        const Complex mi(0.0, -1.0);
        for (int n = 0; n < dim; ++n) {
            const Complex ph = std::polar(1.0, om[n] * time);
            dydt[n] = mi * coup[n] * ph * y[dim + n];
            dydt[dim + n] = mi * coup[n] * std::conj(ph) * y[n];
        }
    };

    OdeState y(2 * dim);
    for (int n = 0; n < dim; ++n) {
        y[n] = state0.a[n];
        y[dim + n] = state0.b[n];
    }

    const double span = t - state0.t;
    if (span != 0.0) {
        auto stepper = ode::make_controlled(1e-11, 1e-11,
                                            ode::runge_kutta_fehlberg78<OdeState>());
        try {
            ode::integrate_adaptive(stepper, rhs, y, state0.t, t,
                                    (span > 0 ? 1.0 : -1.0) * 1e-3);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("evolve_ode_oracle: integration failed (")
                                     + e.what() + ")");
        }
    }

    JointState out;
    out.a.resize(dim);
    out.b.resize(dim);
    out.t = t;
    for (int n = 0; n < dim; ++n) {
        out.a[n] = y[n];
        out.b[n] = y[dim + n];
    }
    return out;
}

/// Interaction -> Schroedinger picture: a_n picks up e^{-i(E_n + omega0/2) t},
/// b_n picks up e^{-i(E_{n+1} - omega0/2) t}. Diagonal observables are
/// unaffected; off-diagonal field moments acquire the free-Hamiltonian phases.
inline JointState to_schrodinger_picture(const ModelParams& p, const JointState& state) {
    JointState out = state;
    for (int n = 0; n < p.rep.dim; ++n) {
        const double ea = kerr_energy(p.rep, p.omega, n) + 0.5 * p.omega0;
        const double eb = kerr_energy(p.rep, p.omega, n + 1) - 0.5 * p.omega0;
        out.a[n] *= std::polar(1.0, -ea * state.t);
        out.b[n] *= std::polar(1.0, -eb * state.t);
    }
    return out;
}

/// Field expectations needed by all observables, computed directly from the
/// amplitude layout without materializing the (2j+1)^2 density matrix.
struct FieldMoments {
    double n_mean{0.0};
    double n2_mean{0.0};
    Complex splus_mean{0.0};
    Complex splus2_mean{0.0};
    double splus_sminus_mean{0.0};
};

inline FieldMoments field_moments(const JointState& state, const SpinRepresentation& rep) {
    const int dim = rep.dim;
    // <n+1| S+ |n> = sqrt((n+1)(2j - n))
    auto g = [&](int n) { return std::sqrt((n + 1.0) * (rep.two_j - n)); };
    // diagonal and off-diagonals of rho_F = sum a_n a_m* |n><m| + b_n b_m* |n+1><m+1|
    auto rho = [&](int n, int m) {
        Complex v = 0.0;
        if (n < dim && m < dim) v += state.a[n] * std::conj(state.a[m]);
        if (n >= 1 && m >= 1 && n - 1 < dim && m - 1 < dim)
            v += state.b[n - 1] * std::conj(state.b[m - 1]);
        return v;
    };

    FieldMoments mom;
    for (int n = 0; n <= rep.two_j + 1; ++n) {
        const double pop = std::real(rho(n, n));
        mom.n_mean += n * pop;
        mom.n2_mean += static_cast<double>(n) * n * pop;
        if (n >= 1) mom.splus_sminus_mean += g(n - 1) * g(n - 1) * pop;
        if (n + 1 <= rep.two_j + 1) mom.splus_mean += g(n) * rho(n, n + 1);
        if (n + 2 <= rep.two_j + 1) mom.splus2_mean += g(n) * g(n + 1) * rho(n, n + 2);
    }
    return mom;
}

/// Reduced atomic density matrix, basis (|+>, |->): trace over the field.
inline Eigen::Matrix2cd reduced_density_atom(const JointState& state) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    rho(0, 0) = state.a.squaredNorm();
    rho(1, 1) = state.b.squaredNorm();
    Complex coh = 0.0;  // <+|rho|-> = sum_n a_{n+1} b_n*
    for (int n = 0; n + 1 < state.a.size(); ++n)
        coh += state.a[n + 1] * std::conj(state.b[n]);
    rho(0, 1) = coh;
    rho(1, 0) = std::conj(coh);
    return rho;
}

}  // namespace jcm
