// spin_algebra.hpp — finite spin-j realization of a Kerr medium:
// deformed ladder coefficients, Kerr spectrum, diagonal field evolution.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace jcm {

using Complex = std::complex<double>;

/// Finite spin-j field mode. Excitations are labeled n = 0..two_j, so the
/// Hilbert space has dimension two_j + 1. Only the ratios n/(2j) and 1/(2j)
/// enter the formulas; half-integer j never appears explicitly.
struct SpinRepresentation {
    int two_j{1};
    int dim{2};
};

inline SpinRepresentation make_representation(int two_j) {
    if (two_j < 1)
        throw std::invalid_argument("make_representation: two_j must be >= 1");
    return SpinRepresentation{two_j, two_j + 1};
}

inline void check_level(const SpinRepresentation& rep, int n, const char* where) {
    if (n < 0 || n > rep.two_j)
        throw std::out_of_range(std::string(where) + ": n outside [0, 2j]");
}

/// Matrix element of the deformed raising operator b† on |n>:
/// sqrt((n+1)(1 - n/2j)). Vanishes exactly at the top of the ladder.
inline double raising_coeff(const SpinRepresentation& rep, int n) {
    check_level(rep, n, "raising_coeff");
    if (n == rep.two_j) return 0.0;
    const double x = 1.0 - static_cast<double>(n) / rep.two_j;
    return std::sqrt((n + 1.0) * x);
}

struct KerrSpectrum {
    std::vector<double> energies;  // E_n = omega (n + 1/2 - n^2/2j), hbar = 1
};

/// E_n extended to any integer n; used by the picture conversion where the
/// b-ladder references level n+1.
inline double kerr_energy(const SpinRepresentation& rep, double omega, int n) {
    return omega * (n + 0.5 - static_cast<double>(n) * n / rep.two_j);
}

inline KerrSpectrum kerr_spectrum(const SpinRepresentation& rep, double omega) {
    if (omega <= 0.0)
        throw std::invalid_argument("kerr_spectrum: omega must be positive");
    KerrSpectrum spec;
    spec.energies.resize(rep.dim);
    for (int n = 0; n < rep.dim; ++n)
        spec.energies[n] = kerr_energy(rep, omega, n);
    return spec;
}

/// Inverts b†b = n(1 - (n-1)/2j) for n. Each b†b eigenvalue is shared by the
/// two levels n and 2j+1-n; the principal square root selects the lower
/// label, so the result is min(n, 2j+1-n). Exact recovery of n holds for
/// n <= j, the regime where the harmonic limit is taken.
inline double number_from_bdag_b(const SpinRepresentation& rep, double lambda_bb) {
    const double tj = rep.two_j;
    const double radicand = 1.0 - 8.0 * (tj / 2.0) * lambda_bb / ((tj + 1.0) * (tj + 1.0));
    if (radicand < 0.0)
        throw std::domain_error("number_from_bdag_b: radicand negative");
    return 0.5 * (tj + 1.0) * (1.0 - std::sqrt(radicand));
}

/// Deformed annihilation operator b = S-/sqrt(2j) as a dense matrix,
/// <n-1| b |n> = raising_coeff(n-1). Materialized only for identity tests
/// and small-dimension oracles.
inline Eigen::MatrixXd annihilation_matrix(const SpinRepresentation& rep) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rep.dim, rep.dim);
    for (int n = 1; n < rep.dim; ++n)
        b(n - 1, n) = raising_coeff(rep, n - 1);
    return b;
}

inline Eigen::MatrixXd number_matrix(const SpinRepresentation& rep) {
    Eigen::MatrixXd nhat = Eigen::MatrixXd::Zero(rep.dim, rep.dim);
    for (int n = 0; n < rep.dim; ++n)
        nhat(n, n) = n;
    return nhat;
}

/// [b, b†] - (1 - n̂/j), computed from explicit ladder matrices. Zero up to
/// floating-point rounding for every representation.
inline Eigen::MatrixXd commutator_defect(const SpinRepresentation& rep) {
    const Eigen::MatrixXd b = annihilation_matrix(rep);
    const Eigen::MatrixXd bdag = b.transpose();
    const double j = rep.two_j / 2.0;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Identity(rep.dim, rep.dim) - number_matrix(rep) / j;
    return b * bdag - bdag * b - rhs;
}

/// Diagonal Kerr evolution c_n -> exp(-i E_n t) c_n. Preserves the norm and
/// every |c_n|^2; <S3> is a constant of the motion.
inline Eigen::VectorXcd kerr_evolve_field(const SpinRepresentation& rep, double omega,
                                          const Eigen::VectorXcd& c, double t) {
    if (c.size() != rep.dim)
        throw std::invalid_argument("kerr_evolve_field: vector length != dim");
    Eigen::VectorXcd out(rep.dim);
    for (int n = 0; n < rep.dim; ++n)
        out[n] = std::polar(1.0, -kerr_energy(rep, omega, n) * t) * c[n];
    return out;
}

}  // namespace jcm
