#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "qnsch/field.hpp"

namespace qnsch {

// Periodized mollifier J_eps: convolution with a nonnegative unit-sum kernel
// sampled on the grid. The Gaussian profile is the default (fast spectral
// decay); the compact bump exp(-1/(1-|x|^2)) is available as well.
struct MollifierSpec {
    enum class Profile { gaussian_periodized, bump_periodized };
    double epsilon = 0.05;
    Profile profile = Profile::gaussian_periodized;

    MollifierSpec() = default;
    MollifierSpec(double eps, Profile p) : epsilon(eps), profile(p) {
        validate();
    }
    void validate() const {
        if (!(epsilon > 0.0) || !(epsilon < 0.25))
            throw std::invalid_argument(
                "MollifierSpec: epsilon must lie in (0, 1/4)");
    }
};

// Spectral calculus on the torus grid. Transforms are FFTW real-to-complex
// with coefficients normalized so that a constant field c has mode-0 value c:
//     f(x) = sum_k fhat(k) e^{2 pi i k.x}.
// The half-spectrum layout keeps k_last in {0,...,n/2}; Hermitian partners
// are implicit. The Nyquist mode k = n/2 is zeroed by odd-order derivative
// operators (grad/div/bogovskii) to preserve real-to-real symmetry.
class SpectralOps {
public:
    explicit SpectralOps(Grid g);
    ~SpectralOps();
    SpectralOps(const SpectralOps&) = delete;
    SpectralOps& operator=(const SpectralOps&) = delete;

    const Grid& grid() const { return grid_; }
    std::size_t spectral_size() const { return spec_size_; }

    // transforms; backward(forward(f)) == f to round-off
    std::vector<std::complex<double>> forward(const Field& f) const;
    Field backward(const std::vector<std::complex<double>>& coeffs) const;

    // differential operators (exact on trig polynomials below Nyquist)
    VectorField grad(const Field& f) const;
    Field div(const VectorField& v) const;
    Field laplacian(const Field& f) const;
    Field bilaplacian(const Field& f) const;
    VectorField laplacian(const VectorField& v) const;
    VectorField bilaplacian(const VectorField& v) const;
    VectorField grad_div(const VectorField& v) const;

    // zero-mean inverses; tol is relative to the L2 norm of g
    Field inv_laplacian_zero_mean(const Field& g,
                                  double tol_mean = 1e-12) const;
    // Bogovskii operator B = grad lap^{-1}: div(B[g]) = g for zero-mean g
    VectorField bogovskii(const Field& g, double tol_mean = 1e-12) const;

    // 2/3-rule dealiasing: kills modes with any |k_i| > floor(n/3)
    Field dealias(const Field& f) const;
    VectorField dealias(const VectorField& v) const;
    int dealias_cutoff() const { return grid_.n / 3; }

    // Sobolev norm via multipliers (1+|2 pi k|^2)^{s/2}, s in [-3,3]
    double sobolev_norm(const Field& f, double s) const;

    Field mollify(const Field& f, const MollifierSpec& spec) const;
    // Fourier multiplier of the (normalized) mollifier kernel at mode k
    std::vector<double> mollifier_multipliers(const MollifierSpec& spec) const;

    static Field zero_mean(const Field& f);

    // sum over modes of |fhat|^2 (equals the grid mean of f^2 by Parseval)
    double spectral_energy(const Field& f) const;

    // integer wavenumber of axis `axis` for the flattened complex index
    int wavenumber(std::size_t flat, int axis) const;

private:
    struct Impl;
    Grid grid_;
    std::size_t spec_size_;
    std::unique_ptr<Impl> impl_;

    void apply_real_multiplier(const Field& f, const std::vector<double>& m,
                               Field& out) const;
    void apply_imag_multiplier(const Field& f, const std::vector<double>& t,
                               Field& out) const;
    friend struct SpectralTestAccess;
};

} // namespace qnsch
