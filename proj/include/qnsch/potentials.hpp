#pragma once

#include <span>
#include <vector>

#include "qnsch/errors.hpp"

namespace qnsch {

// Physical and regularization constants. rho2 is fixed to 1; the density
// contrast enters through rho1 alone:
//     alpha = (rho2 - rho1)/(rho2 + rho1),  ell = (alpha + 1)/alpha,
//     rho_lower = 1 - 2/ell = rho1.
struct Params {
    double rho1 = 1.0 / 3.0;
    double beta = 1.5;
    double omega = 3.0; // default 2*beta = inf F_c''
    double sigma = 1e-2;
    double delta = 1e-3;
    double sigma0 = 0.1;

    static constexpr double rho2 = 1.0;

    double alpha() const { return (rho2 - rho1) / (rho2 + rho1); }
    double ell() const { return (alpha() + 1.0) / alpha(); }
    // 1 - 2/ell collapses to rho1 exactly; use the exact form
    double rho_lower() const { return rho1; }
    double rho_mid() const { return 0.5 * (rho_lower() + 1.0); }

    void validate(int dim) const;
};

struct GrowthBoundsReport {
    double c_chi_pow_p = 0.0;        // |chi|^p      <= C (|F~| + 1)
    double c_chiprime_pow_beta = 0.0;  // |chi'|^beta  <= C (|F~| + 1)
    double c_chiprime_pow_beta1 = 0.0; // |chi'|^{b+1} <= C (|P~| + 1)
    double p = 2.0;
    bool finite = false;
};

// All scalar thermodynamic functions for the profile F_c(r) = (1-r^2)^{-beta}
// and its sigma-truncation (second-order Taylor continuation beyond
// +-(1-sigma)), plus the density-coordinate transforms, the Legendre-
// transform entropies, and the logarithmic test functions. Immutable after
// construction; every evaluator is pure.
class PotentialPack {
public:
    explicit PotentialPack(Params p);

    const Params& params() const { return p_; }

    // --- phase-field coordinate (singular branch on (-1,1)) ---
    double F_c(double r) const;
    double F_c_prime(double r) const;
    double F_c_second(double r) const;
    double F(double r) const;        // F_c - (omega/2) r^2
    double F_prime(double r) const;
    double F_second(double r) const;

    // --- sigma-truncated versions (total functions, C^2 on R) ---
    double F_c_sigma(double r) const;
    double F_c_sigma_prime(double r) const;
    double F_c_sigma_second(double r) const;
    double F_sigma(double r) const;
    double F_sigma_prime(double r) const;
    double F_sigma_second(double r) const;

    // --- affine density <-> phase-field map ---
    double phi_of_rho(double rho) const { return -ell_ * rho + ell_ - 1.0; }
    double rho_of_phi(double phi) const { return (ell_ - 1.0 - phi) / ell_; }

    // --- density coordinate, singular branch on (rho_lower, 1) ---
    double tilde_F(double rho) const;
    double tilde_F_prime(double rho) const;   // = -ell F'(phi(rho))
    double tilde_F_second(double rho) const;  // = ell^2 F''(phi(rho))
    double tilde_F_c(double rho) const;
    double tilde_F_c_prime(double rho) const;
    double tilde_F_c_second(double rho) const;

    // --- density coordinate, sigma-truncated (total) ---
    double tilde_F_sigma(double rho) const;
    double tilde_F_sigma_prime(double rho) const;
    double tilde_F_sigma_second(double rho) const;
    double tilde_F_c_sigma(double rho) const;
    double tilde_F_c_sigma_prime(double rho) const;
    double tilde_F_c_sigma_second(double rho) const;

    // --- Legendre-transform entropies P(r) = r F'(r) - F(r) ---
    double P_tilde(double rho) const;
    double P_tilde_c(double rho) const;
    double P_tilde_sigma(double rho) const;
    double P_tilde_c_sigma(double rho) const;

    // unique zero of P_tilde_c in (rho_lower, 1); bisected to round-off and
    // cached at construction
    double rho_star() const { return rho_star_; }

    // --- logarithmic test functions ---
    double chi(double rho) const;        // ln((r-rho_)/(1-r)) on (rho_,1)
    double chi_prime(double rho) const;
    double chi_sigma(double rho) const;  // chi clamped to [rho_+s, 1-s]
    double chi_sigma_prime(double rho) const; // a.e. derivative

    // empirical uniform lower bound: F_sigma >= -C_star on [-10,10]
    double C_star() const { return c_star_; }

    GrowthBoundsReport growth_bounds_check(std::span<const double> sample,
                                           double p = 2.0) const;

private:
    Params p_;
    double ell_;
    double rho_lower_;
    double seam_;        // 1 - sigma in phase-field coordinates
    double f_seam_[3];   // F_c, F_c', F_c'' at the seam
    double rho_star_;
    double c_star_;

    void check_phase_domain(double r) const;
    void check_rho_domain(double rho) const;
};

// Convex confinement extension W_delta of the base potential W == 0 on
// [rho_lower, 1]: a quartic ramp A*(dist to band)^4, with A solved so that
// W_delta reaches steep_level at distance theta/2 from the band.
struct ConfinementSpec {
    double rho_lower = 0.0;
    double theta = 0.0;        // in (0, rho_lower)
    double kappa = 0.0;        // covering-ball measure
    double big_r = 0.0;        // energy ceiling R
    double steep_level = 0.0;  // (R+1)/(delta kappa) + sup W
    double quartic_coef = 0.0; // A

    ConfinementSpec() = default;
    ConfinementSpec(const Params& p, double theta_, double kappa_,
                    double big_r_);

    // paper recipe: R from the initial energy and the horizon, theta =
    // rho_lower/2, kappa from the H^2 -> C^{1/2} covering argument
    static ConfinementSpec from_run(const Params& p, int dim, double E0,
                                    double T_final, double c0 = 1.0);

    double W(double r) const;        // base potential, domain [rho_lower, 1]
    double W_delta(double r) const;  // extension, total
    double W_delta_prime(double r) const;
    double W_delta_second(double r) const;
    double H(double r) const { return r * 0.0 - W(r); } // r W' - W with W==0
    double H_delta(double r) const;
};

// numerically estimated constant of |f(x)-f(y)| <= C1 ||f||_{H^2} |x-y|^{1/2}
// on the dim-torus; evaluated once and cached
double sobolev_embedding_c1(int dim);

} // namespace qnsch
