// coherent_states.hpp — SU(2) coherent states and their binomial photon
// statistics, plus the Poisson reference for the harmonic limit.

#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "jcm/spin_algebra.hpp"

namespace jcm {

/// SU(2) coherent state parameterized by chi = <n>/2j in [0,1] and the phase
/// of xi (|xi|^2 = chi/(1-chi)). chi = 1 is the top basis state |2j>.
struct CoherentStateSpec {
    double chi{0.0};
    double phi{0.0};
};

struct PhotonDistribution {
    std::vector<double> probs;
    double mean{0.0};
    double variance{0.0};
};

inline double log_binomial(int n, int k) {
    // grouped so that log_binomial(n, k) == log_binomial(n, n - k) bitwise
    return std::lgamma(n + 1.0) - (std::lgamma(k + 1.0) + std::lgamma(n - k + 1.0));
}

/// log of the binomial pmf. Term grouping keeps the chi <-> 1-chi mirror
/// symmetry P(chi)[n] = P(1-chi)[2j-n] exact whenever 1-(1-chi) == chi.
inline double log_binomial_pmf(int two_j, int n, double chi) {
    return log_binomial(two_j, n)
           + (n * std::log(chi) + (two_j - n) * std::log(1.0 - chi));
}

/// Neumaier-compensated sum; order independent to ~1 ulp.
inline double compensated_sum(const double* values, long count) {
    double sum = 0.0, comp = 0.0;
    for (long i = 0; i < count; ++i) {
        const double v = values[i];
        const double t = sum + v;
        comp += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

/// Amplitudes c_n = C(2j,n)^{1/2} xi^n / (1+|xi|^2)^j with xi = |xi| e^{-i phi}.
/// Evaluated in log space so two_j up to 10^4 stays finite.
inline Eigen::VectorXcd coherent_amplitudes(const SpinRepresentation& rep,
                                            const CoherentStateSpec& spec) {
    if (spec.chi < 0.0 || spec.chi > 1.0)
        throw std::invalid_argument("coherent_amplitudes: chi outside [0,1]");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(rep.dim);
    if (spec.chi == 0.0) {
        c[0] = 1.0;
        return c;
    }
    if (spec.chi == 1.0) {
        c[rep.two_j] = 1.0;
        return c;
    }
    // log|c_n| = (1/2) log P_n(chi); renormalized to absorb lgamma rounding
    std::vector<double> pops(rep.dim);
    for (int n = 0; n < rep.dim; ++n) {
        c[n] = std::polar(std::exp(0.5 * log_binomial_pmf(rep.two_j, n, spec.chi)),
                          -spec.phi * n);
        pops[n] = std::norm(c[n]);
    }
    c /= std::sqrt(compensated_sum(pops.data(), rep.dim));
    return c;
}

/// Binomial photon-number distribution P_n = C(2j,n) chi^n (1-chi)^{2j-n}.
inline PhotonDistribution photon_distribution(const SpinRepresentation& rep, double chi) {
    if (chi < 0.0 || chi > 1.0)
        throw std::invalid_argument("photon_distribution: chi outside [0,1]");
    PhotonDistribution dist;
    dist.probs.resize(rep.dim, 0.0);
    if (chi == 0.0) {
        dist.probs[0] = 1.0;
    } else if (chi == 1.0) {
        dist.probs[rep.two_j] = 1.0;
    } else {
        for (int n = 0; n < rep.dim; ++n)
            dist.probs[n] = std::exp(log_binomial_pmf(rep.two_j, n, chi));
        const double total = compensated_sum(dist.probs.data(), rep.dim);
        for (double& p : dist.probs) p /= total;
    }
    dist.mean = rep.two_j * chi;
    dist.variance = rep.two_j * chi * (1.0 - chi);
    return dist;
}

/// Mean photon number 2j |xi|^2 / (1 + |xi|^2); bounded above by 2j.
inline double mean_photon(const SpinRepresentation& rep, double xi_abs2) {
    if (xi_abs2 < 0.0)
        throw std::invalid_argument("mean_photon: |xi|^2 must be nonnegative");
    return rep.two_j * xi_abs2 / (1.0 + xi_abs2);
}

inline double chi_from_mean(const SpinRepresentation& rep, double mean_n) {
    if (mean_n < 0.0 || mean_n > rep.two_j)
        throw std::invalid_argument("chi_from_mean: mean_n outside [0, 2j]");
    return mean_n / rep.two_j;
}

/// Truncated Poisson distribution, the 2j -> infinity reference. Errors out
/// if the truncation window drops more than 1e-12 of the mass.
inline PhotonDistribution poisson_reference(double mean_n, int n_max) {
    if (mean_n <= 0.0)
        throw std::invalid_argument("poisson_reference: mean_n must be positive");
    if (n_max < 0)
        throw std::invalid_argument("poisson_reference: n_max must be nonnegative");
    PhotonDistribution dist;
    dist.probs.resize(n_max + 1);
    double total = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        dist.probs[n] = std::exp(-mean_n + n * std::log(mean_n) - std::lgamma(n + 1.0));
        total += dist.probs[n];
    }
    if (1.0 - total > 1e-12)
        throw std::domain_error("poisson_reference: truncated tail mass exceeds 1e-12");
    double m1 = 0.0, m2 = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        dist.probs[n] /= total;
        m1 += n * dist.probs[n];
        m2 += static_cast<double>(n) * n * dist.probs[n];
    }
    dist.mean = m1;
    dist.variance = m2 - m1 * m1;
    return dist;
}

}  // namespace jcm
