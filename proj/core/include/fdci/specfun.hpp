#pragma once

namespace fdci {

/// Standard normal CDF.
double std_normal_cdf(double x);

/// Complete elliptic integral of the first kind K(k), modulus k in [0, 1).
double complete_elliptic_k(double k);

/// Jacobi elliptic sine sn(u, k) for modulus 0 <= k <= 1, by the
/// arithmetic-geometric mean with descending Landen back-substitution.
double jacobi_sn(double u, double k);

/// Time of bottom passage t0 and modulus k of a pendulum trajectory
/// theta(t) = 2 asin(k sn(t - t0, k)) (with g / L = 1).
struct PendulumConstants {
    double t0;
    double k;
};

/// Values that satisfy theta(0) = theta(2 pi) = 1.2.
inline constexpr PendulumConstants kReferencePendulum{4.882567374, 0.5870761413};

double pendulum_exact(double t, const PendulumConstants& c);

/// Conserved energy k^2 = 1/2 - cos(theta)/2 + theta_dot^2 / 4.
double pendulum_energy(double theta, double theta_dot);

/// Fits (t0, k) so that theta(0) = alpha and theta(T) = beta, by 2-D Newton
/// with a finite-difference Jacobian. Throws ConvergenceError after 100
/// iterations without reaching a residual sup-norm of 1e-10.
PendulumConstants solve_pendulum_constants(double alpha, double beta, double T,
                                           const PendulumConstants& guess,
                                           int* iterations = nullptr);

}  // namespace fdci
