#include "qnsch/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qnsch {

namespace {
constexpr double pi = std::numbers::pi;
}

void Params::validate(int dim) const {
    if (!(rho1 > 0.0) || !(rho1 < 1.0))
        throw ConfigError("physics.rho1 must lie in (0,1)");
    if (dim == 3) {
        if (!(beta >= 1.5))
            throw ConfigError("physics.beta must be >= 3/2 in 3-d");
    } else {
        if (!(beta > 1.0))
            throw ConfigError("physics.beta must be > 1 in 2-d");
    }
    if (!(sigma > 0.0) || !(sigma < sigma0))
        throw ConfigError("physics.sigma must lie in (0, sigma0)");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw ConfigError("physics.delta must lie in (0,1)");
    if (!(sigma0 > 0.0) || !(sigma0 < 1.0))
        throw ConfigError("physics.sigma0 must lie in (0,1)");
    if (!std::isfinite(omega)) throw ConfigError("physics.omega must be finite");
}

void PotentialPack::check_phase_domain(double r) const {
    if (!(r > -1.0) || !(r < 1.0))
        throw SingularDomainError("potential evaluated at |r| >= 1");
}

void PotentialPack::check_rho_domain(double rho) const {
    if (!(rho > rho_lower_) || !(rho < 1.0))
        throw SingularDomainError(
            "density-coordinate potential evaluated outside (rho_lower, 1)");
}

PotentialPack::PotentialPack(Params p)
    : p_(p), ell_(p.ell()), rho_lower_(p.rho_lower()) {
    seam_ = 1.0 - p_.sigma;
    f_seam_[0] = F_c(seam_);
    f_seam_[1] = F_c_prime(seam_);
    f_seam_[2] = F_c_second(seam_);

    // rho_star: only zero of P_tilde_c in (rho_lower, 1); expand inward
    // until a sign change brackets it, then bisect to round-off
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (double t = 1e-2; t > 1e-13; t *= 0.5) {
        lo = rho_lower_ + t;
        hi = 1.0 - t;
        if (P_tilde_c(lo) < 0.0 && P_tilde_c(hi) > 0.0) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed)
        throw std::logic_error("PotentialPack: failed to bracket rho_star");
    for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (P_tilde_c(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    rho_star_ = 0.5 * (lo + hi);

    // empirical uniform lower bound of F_sigma on [-10,10]
    double mn = std::numeric_limits<double>::infinity();
    const int samples = 4001;
    for (int i = 0; i < samples; ++i) {
        const double r = -10.0 + 20.0 * i / (samples - 1);
        mn = std::min(mn, F_sigma(r));
    }
    c_star_ = std::max(0.0, -mn) + 1e-12;
}

// --- phase-field coordinate --------------------------------------------

double PotentialPack::F_c(double r) const {
    check_phase_domain(r);
    return std::pow(1.0 - r * r, -p_.beta);
}

double PotentialPack::F_c_prime(double r) const {
    check_phase_domain(r);
    return 2.0 * p_.beta * r * std::pow(1.0 - r * r, -p_.beta - 1.0);
}

double PotentialPack::F_c_second(double r) const {
    check_phase_domain(r);
    const double b = p_.beta;
    return 2.0 * b * std::pow(1.0 - r * r, -b - 2.0) *
           (1.0 + (2.0 * b + 1.0) * r * r);
}

double PotentialPack::F(double r) const {
    return F_c(r) - 0.5 * p_.omega * r * r;
}
double PotentialPack::F_prime(double r) const {
    return F_c_prime(r) - p_.omega * r;
}
double PotentialPack::F_second(double r) const {
    return F_c_second(r) - p_.omega;
}

double PotentialPack::F_c_sigma(double r) const {
    if (r >= seam_) {
        const double d = r - seam_;
        return f_seam_[0] + f_seam_[1] * d + 0.5 * f_seam_[2] * d * d;
    }
    if (r <= -seam_) {
        const double d = r + seam_; // F_c even, F_c' odd
        return f_seam_[0] - f_seam_[1] * d + 0.5 * f_seam_[2] * d * d;
    }
    return F_c(r);
}

double PotentialPack::F_c_sigma_prime(double r) const {
    if (r >= seam_) return f_seam_[1] + f_seam_[2] * (r - seam_);
    if (r <= -seam_) return -f_seam_[1] + f_seam_[2] * (r + seam_);
    return F_c_prime(r);
}

double PotentialPack::F_c_sigma_second(double r) const {
    if (r >= seam_ || r <= -seam_) return f_seam_[2];
    return F_c_second(r);
}

double PotentialPack::F_sigma(double r) const {
    return F_c_sigma(r) - 0.5 * p_.omega * r * r;
}
double PotentialPack::F_sigma_prime(double r) const {
    return F_c_sigma_prime(r) - p_.omega * r;
}
double PotentialPack::F_sigma_second(double r) const {
    return F_c_sigma_second(r) - p_.omega;
}

// --- density coordinate --------------------------------------------------

double PotentialPack::tilde_F(double rho) const {
    check_rho_domain(rho);
    return F(phi_of_rho(rho));
}
double PotentialPack::tilde_F_prime(double rho) const {
    check_rho_domain(rho);
    return -ell_ * F_prime(phi_of_rho(rho));
}
double PotentialPack::tilde_F_second(double rho) const {
    check_rho_domain(rho);
    return ell_ * ell_ * F_second(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c(double rho) const {
    check_rho_domain(rho);
    return F_c(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c_prime(double rho) const {
    check_rho_domain(rho);
    return -ell_ * F_c_prime(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c_second(double rho) const {
    check_rho_domain(rho);
    return ell_ * ell_ * F_c_second(phi_of_rho(rho));
}

double PotentialPack::tilde_F_sigma(double rho) const {
    return F_sigma(phi_of_rho(rho));
}
double PotentialPack::tilde_F_sigma_prime(double rho) const {
    return -ell_ * F_sigma_prime(phi_of_rho(rho));
}
double PotentialPack::tilde_F_sigma_second(double rho) const {
    return ell_ * ell_ * F_sigma_second(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c_sigma(double rho) const {
    return F_c_sigma(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c_sigma_prime(double rho) const {
    return -ell_ * F_c_sigma_prime(phi_of_rho(rho));
}
double PotentialPack::tilde_F_c_sigma_second(double rho) const {
    return ell_ * ell_ * F_c_sigma_second(phi_of_rho(rho));
}

double PotentialPack::P_tilde(double rho) const {
    return rho * tilde_F_prime(rho) - tilde_F(rho);
}
double PotentialPack::P_tilde_c(double rho) const {
    return rho * tilde_F_c_prime(rho) - tilde_F_c(rho);
}
double PotentialPack::P_tilde_sigma(double rho) const {
    return rho * tilde_F_sigma_prime(rho) - tilde_F_sigma(rho);
}
double PotentialPack::P_tilde_c_sigma(double rho) const {
    return rho * tilde_F_c_sigma_prime(rho) - tilde_F_c_sigma(rho);
}

// --- logarithmic test functions -------------------------------------------

double PotentialPack::chi(double rho) const {
    check_rho_domain(rho);
    return std::log((rho - rho_lower_) / (1.0 - rho));
}

double PotentialPack::chi_prime(double rho) const {
    check_rho_domain(rho);
    return 1.0 / (rho - rho_lower_) + 1.0 / (1.0 - rho);
}

double PotentialPack::chi_sigma(double rho) const {
    const double lo = rho_lower_ + p_.sigma;
    const double hi = 1.0 - p_.sigma;
    return chi(std::clamp(rho, lo, hi));
}

double PotentialPack::chi_sigma_prime(double rho) const {
    const double lo = rho_lower_ + p_.sigma;
    const double hi = 1.0 - p_.sigma;
    if (rho < lo || rho > hi) return 0.0;
    return chi_prime(rho);
}

GrowthBoundsReport PotentialPack::growth_bounds_check(
    std::span<const double> sample, double p) const {
    GrowthBoundsReport rep;
    rep.p = p;
    for (double rho : sample) {
        check_rho_domain(rho); // endpoint samples raise
        const double aF = std::abs(tilde_F(rho)) + 1.0;
        const double aP = std::abs(P_tilde(rho)) + 1.0;
        const double ch = std::abs(chi(rho));
        const double cp = chi_prime(rho);
        rep.c_chi_pow_p = std::max(rep.c_chi_pow_p, std::pow(ch, p) / aF);
        rep.c_chiprime_pow_beta =
            std::max(rep.c_chiprime_pow_beta, std::pow(cp, p_.beta) / aF);
        rep.c_chiprime_pow_beta1 =
            std::max(rep.c_chiprime_pow_beta1,
                     std::pow(cp, p_.beta + 1.0) / aP);
    }
    rep.finite = std::isfinite(rep.c_chi_pow_p) &&
                 std::isfinite(rep.c_chiprime_pow_beta) &&
                 std::isfinite(rep.c_chiprime_pow_beta1);
    return rep;
}

// --- confinement extension --------------------------------------------------

ConfinementSpec::ConfinementSpec(const Params& p, double theta_, double kappa_,
                                 double big_r_) {
    rho_lower = p.rho_lower();
    theta = theta_;
    kappa = kappa_;
    big_r = big_r_;
    if (!(theta > 0.0) || !(theta < rho_lower))
        throw ConfigError("ConfinementSpec: theta must lie in (0, rho_lower)");
    if (!(kappa > 0.0)) throw ConfigError("ConfinementSpec: kappa must be > 0");
    steep_level = (big_r + 1.0) / (p.delta * kappa); // sup W = 0
    const double half = 0.5 * theta;
    quartic_coef = steep_level / (half * half * half * half);
}

ConfinementSpec ConfinementSpec::from_run(const Params& p, int dim, double E0,
                                          double T_final, double c0) {
    const double theta = 0.5 * p.rho_lower();
    PotentialPack pack(p);
    const double gr = 2.0 * p.delta * std::abs(p.omega) * T_final;
    const double R = (E0 + pack.C_star()) * (1.0 + gr * std::exp(gr)) + 1.0;
    // ||rho||_{H2} ceiling given (delta/2) ||lap rho||^2 <= R and mean c0
    const double c_low = 1.0 + 1.0 / (4.0 * pi * pi);
    const double r_prime =
        std::sqrt(c0 * c0 + c_low * c_low * 2.0 * R / p.delta);
    const double c1 = sobolev_embedding_c1(dim);
    const double l = std::pow(theta / (2.0 * c1 * r_prime), 2.0);
    const double ball = std::min(l, 0.5);
    const double vd = dim == 2 ? pi : 4.0 * pi / 3.0;
    const double kappa = vd * std::pow(ball, dim);
    return ConfinementSpec(p, theta, kappa, R);
}

double ConfinementSpec::W(double r) const {
    if (r < rho_lower || r > 1.0)
        throw SingularDomainError("W evaluated outside [rho_lower, 1]");
    return 0.0;
}

double ConfinementSpec::W_delta(double r) const {
    if (r > 1.0) {
        const double d = r - 1.0;
        return quartic_coef * d * d * d * d;
    }
    if (r < rho_lower) {
        const double d = rho_lower - r;
        return quartic_coef * d * d * d * d;
    }
    return 0.0;
}

double ConfinementSpec::W_delta_prime(double r) const {
    if (r > 1.0) {
        const double d = r - 1.0;
        return 4.0 * quartic_coef * d * d * d;
    }
    if (r < rho_lower) {
        const double d = rho_lower - r;
        return -4.0 * quartic_coef * d * d * d;
    }
    return 0.0;
}

double ConfinementSpec::W_delta_second(double r) const {
    if (r > 1.0) {
        const double d = r - 1.0;
        return 12.0 * quartic_coef * d * d;
    }
    if (r < rho_lower) {
        const double d = rho_lower - r;
        return 12.0 * quartic_coef * d * d;
    }
    return 0.0;
}

double ConfinementSpec::H_delta(double r) const {
    return r * W_delta_prime(r) - W_delta(r);
}

double sobolev_embedding_c1(int dim) {
    static double cache[4] = {0, 0, 0, 0};
    if (cache[dim] > 0.0) return cache[dim];
    // C1 = sup_h G(h)/sqrt(h), G(h)^2 = sum_{k!=0} min(2, 2 pi |k| h)^2 /
    // (1 + |2 pi k|^2)^2 over a truncated lattice
    const int K = dim == 2 ? 48 : 24;
    std::vector<double> k2s;
    if (dim == 2) {
        for (int a = -K; a <= K; ++a)
            for (int b = -K; b <= K; ++b)
                if (a || b) k2s.push_back(double(a * a + b * b));
    } else {
        for (int a = -K; a <= K; ++a)
            for (int b = -K; b <= K; ++b)
                for (int c = -K; c <= K; ++c)
                    if (a || b || c)
                        k2s.push_back(double(a * a + b * b + c * c));
    }
    double best = 0.0;
    for (double lh = -8.0; lh <= 0.0; lh += 0.25) {
        const double h = std::exp(lh);
        double g2 = 0.0;
        for (double k2 : k2s) {
            const double t = std::min(2.0, 2.0 * pi * std::sqrt(k2) * h);
            const double w = 1.0 + 4.0 * pi * pi * k2;
            g2 += t * t / (w * w);
        }
        best = std::max(best, std::sqrt(g2 / h));
    }
    cache[dim] = best;
    return best;
}

} // namespace qnsch
