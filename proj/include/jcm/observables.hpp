// observables.hpp — atomic inversion (general and closed form), revival-time
// estimate, Mandel Q, quadrature variances with the Robertson bound, and the
// standard (j -> infinity) JCM reference.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "jcm/coherent_states.hpp"
#include "jcm/dynamics.hpp"

namespace jcm {

/// <sigma_3> = sum_n (|a_n|^2 - |b_n|^2), in [-1, 1].
inline double atomic_inversion(const JointState& state) {
    return state.a.squaredNorm() - state.b.squaredNorm();
}

/// Closed-form inversion for the coherent-field / excited-atom initial
/// condition:
///   sum_n P_n(chi) [ W_n^2/G_n^2 + (1 - W_n^2/G_n^2) cos(G_n t) ].
/// The sum is restricted to levels with non-negligible binomial weight, so
/// two_j up to 10^5 stays cheap.
inline double inversion_closed_form(const ModelParams& p, double chi, double t) {
    validate(p);
    if (chi < 0.0 || chi > 1.0)
        throw std::invalid_argument("inversion_closed_form: chi outside [0,1]");
    // window of non-negligible binomial weight: mean +/- 16 sigma keeps the
    // dropped tail mass below ~1e-30
    int lo = 0, hi = p.rep.two_j;
    if (chi > 0.0 && chi < 1.0) {
        const double mean = p.rep.two_j * chi;
        const double margin = 16.0 * std::sqrt(mean * (1.0 - chi)) + 60.0;
        lo = std::max(lo, static_cast<int>(mean - margin));
        hi = std::min(hi, static_cast<int>(mean + margin) + 1);
    }
    double result = 0.0;
    for (int n = lo; n <= hi; ++n) {
        double w;
        if (chi == 0.0)
            w = (n == 0) ? 1.0 : 0.0;
        else if (chi == 1.0)
            w = (n == p.rep.two_j) ? 1.0 : 0.0;
        else
            w = std::exp(log_binomial_pmf(p.rep.two_j, n, chi));
        if (w < 1e-18) continue;
        const double om = detuning(p, n);
        const double gamma = rabi_frequency(p, n);
        const double ratio2 = (gamma > 0.0) ? (om * om) / (gamma * gamma) : 1.0;
        result += w * (ratio2 + (1.0 - ratio2) * std::cos(gamma * t));
    }
    return result;
}

/// Revival-time estimate (scaled time lambda t_R), valid for 2j >> 1:
///   pi / [ sqrt(chi^2 + (2 + 2j chi)(1 - chi)) - sqrt(chi^2 + (1 + 2j chi)(1 - chi)) ].
inline double revival_time_estimate(const ModelParams& p, double chi) {
    if (chi < 0.0 || chi >= 1.0)
        throw std::domain_error("revival_time_estimate: requires 0 <= chi < 1");
    const double tj = p.rep.two_j;
    const double hi = std::sqrt(chi * chi + (2.0 + tj * chi) * (1.0 - chi));
    const double lo = std::sqrt(chi * chi + (1.0 + tj * chi) * (1.0 - chi));
    return M_PI / (hi - lo);
}

/// Mandel Q = (<(dn)^2> - <n>) / <n>; negative values are sub-Poissonian.
inline double mandel_q(const FieldMoments& mom) {
    if (mom.n_mean <= 0.0)
        throw std::domain_error("mandel_q: undefined for <n> = 0");
    const double var = mom.n2_mean - mom.n_mean * mom.n_mean;
    return (var - mom.n_mean) / mom.n_mean;
}

struct QuadratureVariances {
    double var_x{0.0};
    double var_y{0.0};
    double robertson_bound{0.0};
};

/// Variances of x = Jx/sqrt(2j), y = Jy/sqrt(2j) from first principles,
/// using J-J+ = J+J- - 2 S3 and <S3> = <n> - j:
///   var x = (1/2j)[ (1/2)<J+J-> + (1/2)Re<J+^2> - (1/2)<S3> - (Re<J+>)^2 ],
///   var y = (1/2j)[ (1/2)<J+J-> - (1/2)Re<J+^2> - (1/2)<S3> - (Im<J+>)^2 ].
/// Robertson bound (1/16)(1 - <n>/j)^2 from [x, y] = i S3 / 2j. Vacuum gives
/// var = 1/4 on each side with the product saturating the bound; anything
/// below 1/4 is squeezed.
inline QuadratureVariances quadrature_variances(const FieldMoments& mom,
                                                const SpinRepresentation& rep) {
    const double tj = rep.two_j;
    const double s3 = mom.n_mean - 0.5 * tj;
    const double jpjm = mom.splus_sminus_mean;
    const double re_jp2 = std::real(mom.splus2_mean);

    QuadratureVariances q;
    q.var_x = (0.5 * jpjm + 0.5 * re_jp2 - 0.5 * s3
               - std::pow(std::real(mom.splus_mean), 2)) / tj;
    q.var_y = (0.5 * jpjm - 0.5 * re_jp2 - 0.5 * s3
               - std::pow(std::imag(mom.splus_mean), 2)) / tj;
    const double r = 1.0 - mom.n_mean / (0.5 * tj);
    q.robertson_bound = r * r / 16.0;
    return q;
}

/// The variance expressions without the symmetrization term, kept as a
/// comparison path; they miss the vacuum value 1/4.
inline QuadratureVariances quadrature_variances_printed_form(const FieldMoments& mom,
                                                             const SpinRepresentation& rep) {
    const double tj = rep.two_j;
    QuadratureVariances q;
    q.var_x = (0.5 * mom.splus_sminus_mean + 0.5 * std::real(mom.splus2_mean)
               - std::pow(std::real(mom.splus_mean), 2)) / tj;
    q.var_y = (0.5 * mom.splus_sminus_mean - 0.5 * std::real(mom.splus2_mean)
               - std::pow(std::imag(mom.splus_mean), 2)) / tj;
    const double r = 1.0 - mom.n_mean / (0.5 * tj);
    q.robertson_bound = r * r / 16.0;
    return q;
}

/// Standard-JCM inversion (the 2j -> infinity limit): Poisson weights,
/// constant detuning delta, Rabi frequencies sqrt(delta^2 + 4 lambda^2 (n+1)).
inline double standard_jcm_inversion(double mean_n, double delta, double lambda,
                                     double t, int n_max) {
    if (mean_n <= 0.0 || lambda <= 0.0)
        throw std::invalid_argument("standard_jcm_inversion: mean_n, lambda must be positive");
    const PhotonDistribution poisson = poisson_reference(mean_n, n_max);
    double result = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double w = poisson.probs[n];
        if (w < 1e-18) continue;
        const double gamma2 = delta * delta + 4.0 * lambda * lambda * (n + 1.0);
        const double ratio2 = delta * delta / gamma2;
        result += w * (ratio2 + (1.0 - ratio2) * std::cos(std::sqrt(gamma2) * t));
    }
    return result;
}

/// Argmax of f over [lo, hi]: uniform grid of the given step, then one
/// parabolic refinement through the best point and its neighbors.
inline double refine_argmax(const std::function<double(double)>& f, double lo, double hi,
                            double step = 0.01) {
    if (hi <= lo) throw std::invalid_argument("refine_argmax: empty window");
    const int count = static_cast<int>(std::floor((hi - lo) / step)) + 1;
    int best = 0;
    double best_val = f(lo);
    for (int i = 1; i < count; ++i) {
        const double v = f(lo + i * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double t0 = lo + best * step;
    if (best == 0 || best == count - 1) return t0;
    const double ym = f(t0 - step), y0 = best_val, yp = f(t0 + step);
    const double denom = ym - 2.0 * y0 + yp;
    if (denom >= 0.0) return t0;
    return t0 + 0.5 * step * (ym - yp) / denom;
}

}  // namespace jcm
