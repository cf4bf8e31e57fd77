#pragma once

#include <cstdint>
#include <functional>

#include "qnsch/potentials.hpp"
#include "qnsch/spectral.hpp"

namespace qnsch {

// Prognostic pair at one time instant. Steps produce new values; nothing
// mutates a state in place.
struct State {
    double time = 0.0;
    VectorField u;
    Field rho;

    State() = default;
    State(double t, VectorField u_, Field rho_)
        : time(t), u(std::move(u_)), rho(std::move(rho_)) {}
};

// Reconstructed phase-field variables:
//   phi  = -ell rho + ell - 1
//   mu   = -lap phi + F'(phi)            (sigma-truncated F' when sigma > 0)
//   mu_p = (1/alpha) invlap(div u)       (zero mean; alpha lap mu_p = div u)
//   p    = (mu_p - mu)/alpha
struct DerivedFields {
    Field phi;
    Field mu;
    Field mu_p;
    Field p;
};

// Admissible density band for reconstruction: the regularized system lives in
// (rho_lower - theta, 1 + theta); the target system requires (rho_lower, 1).
struct DensityBand {
    double lo = 0.0;
    double hi = 1.0;

    static DensityBand regularized(const Params& p, double theta) {
        return {p.rho_lower() - theta, 1.0 + theta};
    }
    static DensityBand target(const Params& p) { return {p.rho_lower(), 1.0}; }
    bool contains(double lo_v, double hi_v) const {
        return lo_v > lo && hi_v < hi;
    }
};

DerivedFields reconstruct_derived(const State& state, const PotentialPack& pack,
                                  const SpectralOps& ops,
                                  const DensityBand& band);

// pointwise affine images
Field phi_of_rho_field(const Field& rho, const PotentialPack& pack);
Field rho_of_phi_field(const Field& phi, const PotentialPack& pack);

enum class InitialKind { spinodal, stratified, bubble, manufactured };

struct InitialData {
    VectorField u0;
    Field rho0;  // strictly inside (rho_lower, 1)
    Field phi0;
    // mollifier width rule delta -> epsilon(delta); the default prefactor
    // keeps epsilon < 1/4 and grid-resolvable at desk scale
    std::function<double(double)> mollify_scale = [](double delta) {
        return 0.05 * std::pow(delta, 0.25);
    };
};

struct InitialDataOptions {
    double amplitude = 1e-2; // phase-field amplitude
    double margin = 0.05;    // keep phi0 in (-1+margin, 1-margin)
    // velocity: zero for physical runs; "shear" gives a nonzero-momentum
    // band-limited field for conservation tests
    enum class Velocity { zero, shear } velocity = Velocity::zero;
    double u_amplitude = 0.0;
};

InitialData build_initial_data(InitialKind kind, std::uint64_t seed,
                               const PotentialPack& pack,
                               const SpectralOps& ops,
                               const InitialDataOptions& opt = {});

// rho_{0,delta} = rho0 * eta^per_{eps(delta)}; mean preserved exactly,
// values stay within [min rho0, max rho0] (convex kernel weights)
Field mollified_initial_density(const Field& rho0, double delta,
                                const SpectralOps& ops,
                                const std::function<double(double)>& scale);

// manufactured two-mode fields with analytic derivatives, shared by the
// residual tests and the time-accuracy oracles
struct ManufacturedFields {
    // rho = rho_mid + a1 cos(2 pi x0) + a2 sin(2 pi x1)
    // u0  = b1 sin(2 pi x1), u1 = b2 cos(2 pi x0)   (2-d; axis-aligned modes)
    double a1 = 0.04, a2 = 0.025, b1 = 0.08, b2 = 0.05;

    Field rho(const Grid& g) const;
    VectorField u(const Grid& g) const;
    VectorField grad_rho(const Grid& g) const;   // analytic
    Field lap_rho(const Grid& g) const;          // analytic
};

} // namespace qnsch
