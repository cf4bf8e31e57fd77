#include "qnsch/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace qnsch {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// FFTW's planner is not reentrant; executions are.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct SpectralOps::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    std::size_t n_real = 0;
    std::size_t n_cplx = 0;

    // cached integer wavenumbers per axis for each flattened complex index
    std::vector<std::vector<int>> kint; // [axis][flat]
    std::vector<double> k2;             // |2 pi k|^2
    std::vector<double> herm_weight;    // 1 or 2 (Hermitian partner count)
    std::vector<double> dealias_mask;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (real_buf) fftw_free(real_buf);
        if (cplx_buf) fftw_free(cplx_buf);
    }
};

SpectralOps::SpectralOps(Grid g) : grid_(g), impl_(new Impl) {
    const int n = g.n;
    const int d = g.dim;
    std::vector<int> dims(static_cast<std::size_t>(d), n);

    impl_->n_real = g.point_count();
    impl_->n_cplx = 1;
    for (int a = 0; a < d - 1; ++a)
        impl_->n_cplx *= static_cast<std::size_t>(n);
    impl_->n_cplx *= static_cast<std::size_t>(n / 2 + 1);
    spec_size_ = impl_->n_cplx;

    impl_->real_buf = fftw_alloc_real(impl_->n_real);
    impl_->cplx_buf = fftw_alloc_complex(impl_->n_cplx);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->fwd = fftw_plan_dft_r2c(d, dims.data(), impl_->real_buf,
                                       impl_->cplx_buf, FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_c2r(d, dims.data(), impl_->cplx_buf,
                                       impl_->real_buf, FFTW_ESTIMATE);
    }
    if (!impl_->fwd || !impl_->bwd)
        throw std::runtime_error("SpectralOps: FFTW plan creation failed");

    // decode flattened complex index -> integer wavenumbers
    impl_->kint.assign(static_cast<std::size_t>(d),
                       std::vector<int>(impl_->n_cplx));
    impl_->k2.resize(impl_->n_cplx);
    impl_->herm_weight.resize(impl_->n_cplx);
    impl_->dealias_mask.resize(impl_->n_cplx);
    const int n_half = n / 2;
    const int cutoff = n / 3;
    for (std::size_t flat = 0; flat < impl_->n_cplx; ++flat) {
        std::size_t rem = flat;
        const std::size_t last = rem % static_cast<std::size_t>(n_half + 1);
        rem /= static_cast<std::size_t>(n_half + 1);
        int idx[3] = {0, 0, 0};
        idx[d - 1] = static_cast<int>(last);
        for (int a = d - 2; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % static_cast<std::size_t>(n));
            rem /= static_cast<std::size_t>(n);
        }
        double k2 = 0.0;
        bool ok_alias = true;
        for (int a = 0; a < d; ++a) {
            int k = idx[a];
            if (a < d - 1 && k > n_half) k -= n;
            impl_->kint[static_cast<std::size_t>(a)][flat] = k;
            k2 += static_cast<double>(k) * static_cast<double>(k);
            if (std::abs(k) > cutoff) ok_alias = false;
        }
        impl_->k2[flat] = two_pi * two_pi * k2;
        const int klast = idx[d - 1];
        impl_->herm_weight[flat] = (klast == 0 || klast == n_half) ? 1.0 : 2.0;
        impl_->dealias_mask[flat] = ok_alias ? 1.0 : 0.0;
    }
}

SpectralOps::~SpectralOps() = default;

int SpectralOps::wavenumber(std::size_t flat, int axis) const {
    return impl_->kint[static_cast<std::size_t>(axis)][flat];
}

std::vector<std::complex<double>> SpectralOps::forward(const Field& f) const {
    check_same_grid(f.grid(), grid_, "forward_transform");
    std::memcpy(impl_->real_buf, f.data(), impl_->n_real * sizeof(double));
    fftw_execute(impl_->fwd);
    std::vector<std::complex<double>> out(impl_->n_cplx);
    const double scale = 1.0 / static_cast<double>(impl_->n_real);
    for (std::size_t j = 0; j < impl_->n_cplx; ++j)
        out[j] = std::complex<double>(impl_->cplx_buf[j][0] * scale,
                                      impl_->cplx_buf[j][1] * scale);
    return out;
}

Field SpectralOps::backward(
    const std::vector<std::complex<double>>& coeffs) const {
    if (coeffs.size() != impl_->n_cplx)
        throw std::invalid_argument("backward_transform: size mismatch");
    for (std::size_t j = 0; j < impl_->n_cplx; ++j) {
        impl_->cplx_buf[j][0] = coeffs[j].real();
        impl_->cplx_buf[j][1] = coeffs[j].imag();
    }
    fftw_execute(impl_->bwd);
    Field out(grid_);
    std::memcpy(out.data(), impl_->real_buf, impl_->n_real * sizeof(double));
    return out;
}

void SpectralOps::apply_real_multiplier(const Field& f,
                                        const std::vector<double>& m,
                                        Field& out) const {
    check_same_grid(f.grid(), grid_, "apply_real_multiplier");
    std::memcpy(impl_->real_buf, f.data(), impl_->n_real * sizeof(double));
    fftw_execute(impl_->fwd);
    double* z = reinterpret_cast<double*>(impl_->cplx_buf);
    kernels::active().cmul_real(z, m.data(), z, impl_->n_cplx);
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(impl_->n_real);
    kernels::active().scale(impl_->real_buf, scale, out.data(), impl_->n_real);
}

void SpectralOps::apply_imag_multiplier(const Field& f,
                                        const std::vector<double>& t,
                                        Field& out) const {
    check_same_grid(f.grid(), grid_, "apply_imag_multiplier");
    std::memcpy(impl_->real_buf, f.data(), impl_->n_real * sizeof(double));
    fftw_execute(impl_->fwd);
    double* z = reinterpret_cast<double*>(impl_->cplx_buf);
    kernels::active().cmul_imag(z, t.data(), z, impl_->n_cplx);
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(impl_->n_real);
    kernels::active().scale(impl_->real_buf, scale, out.data(), impl_->n_real);
}

VectorField SpectralOps::grad(const Field& f) const {
    VectorField out(grid_);
    const int n_half = grid_.n / 2;
    std::vector<double> t(impl_->n_cplx);
    for (int c = 0; c < grid_.dim; ++c) {
        const auto& kc = impl_->kint[static_cast<std::size_t>(c)];
        for (std::size_t j = 0; j < impl_->n_cplx; ++j) {
            // Nyquist zeroed in odd-order derivatives
            t[j] = (std::abs(kc[j]) == n_half) ? 0.0 : two_pi * kc[j];
        }
        apply_imag_multiplier(f, t, out[c]);
    }
    return out;
}

Field SpectralOps::div(const VectorField& v) const {
    check_same_grid(v.grid(), grid_, "div");
    const int n_half = grid_.n / 2;
    // accumulate i*2pi*k_c * vhat_c over components in the complex buffer
    std::vector<std::complex<double>> acc(impl_->n_cplx,
                                          std::complex<double>(0.0, 0.0));
    for (int c = 0; c < grid_.dim; ++c) {
        auto coeffs = forward(v[c]);
        const auto& kc = impl_->kint[static_cast<std::size_t>(c)];
        for (std::size_t j = 0; j < impl_->n_cplx; ++j) {
            const double t =
                (std::abs(kc[j]) == n_half) ? 0.0 : two_pi * kc[j];
            acc[j] += std::complex<double>(0.0, t) * coeffs[j];
        }
    }
    return backward(acc);
}

Field SpectralOps::laplacian(const Field& f) const {
    Field out(grid_);
    std::vector<double> m(impl_->n_cplx);
    for (std::size_t j = 0; j < impl_->n_cplx; ++j) m[j] = -impl_->k2[j];
    apply_real_multiplier(f, m, out);
    return out;
}

Field SpectralOps::bilaplacian(const Field& f) const {
    Field out(grid_);
    std::vector<double> m(impl_->n_cplx);
    for (std::size_t j = 0; j < impl_->n_cplx; ++j)
        m[j] = impl_->k2[j] * impl_->k2[j];
    apply_real_multiplier(f, m, out);
    return out;
}

VectorField SpectralOps::laplacian(const VectorField& v) const {
    VectorField out(grid_);
    for (int c = 0; c < grid_.dim; ++c) out[c] = laplacian(v[c]);
    return out;
}

VectorField SpectralOps::bilaplacian(const VectorField& v) const {
    VectorField out(grid_);
    for (int c = 0; c < grid_.dim; ++c) out[c] = bilaplacian(v[c]);
    return out;
}

VectorField SpectralOps::grad_div(const VectorField& v) const {
    return grad(div(v));
}

Field SpectralOps::inv_laplacian_zero_mean(const Field& g,
                                           double tol_mean) const {
    check_same_grid(g.grid(), grid_, "inv_laplacian_zero_mean");
    const double gm = g.mean();
    const double gn = l2_norm(g);
    if (std::abs(gm) > tol_mean * (gn + 1e-300) && gn > 0.0)
        throw std::domain_error(
            "inv_laplacian_zero_mean: input has nonzero mean");
    Field out(grid_);
    std::vector<double> m(impl_->n_cplx);
    for (std::size_t j = 0; j < impl_->n_cplx; ++j)
        m[j] = impl_->k2[j] > 0.0 ? -1.0 / impl_->k2[j] : 0.0;
    apply_real_multiplier(g, m, out);
    return out;
}

VectorField SpectralOps::bogovskii(const Field& g, double tol_mean) const {
    check_same_grid(g.grid(), grid_, "bogovskii");
    const double gm = g.mean();
    const double gn = l2_norm(g);
    if (std::abs(gm) > tol_mean * (gn + 1e-300) && gn > 0.0)
        throw std::domain_error(
            "bogovskii: operator undefined on the mode-0 component");
    VectorField out(grid_);
    const int n_half = grid_.n / 2;
    std::vector<double> t(impl_->n_cplx);
    for (int c = 0; c < grid_.dim; ++c) {
        const auto& kc = impl_->kint[static_cast<std::size_t>(c)];
        for (std::size_t j = 0; j < impl_->n_cplx; ++j) {
            if (impl_->k2[j] == 0.0 || std::abs(kc[j]) == n_half) {
                t[j] = 0.0;
            } else {
                t[j] = -two_pi * kc[j] / impl_->k2[j];
            }
        }
        apply_imag_multiplier(g, t, out[c]);
    }
    return out;
}

Field SpectralOps::dealias(const Field& f) const {
    Field out(grid_);
    apply_real_multiplier(f, impl_->dealias_mask, out);
    return out;
}

VectorField SpectralOps::dealias(const VectorField& v) const {
    VectorField out(grid_);
    for (int c = 0; c < grid_.dim; ++c) out[c] = dealias(v[c]);
    return out;
}

double SpectralOps::sobolev_norm(const Field& f, double s) const {
    if (s < -3.0 || s > 3.0)
        throw std::invalid_argument("sobolev_norm: s outside [-3,3]");
    auto coeffs = forward(f);
    double acc = 0.0;
    for (std::size_t j = 0; j < impl_->n_cplx; ++j) {
        const double w = std::pow(1.0 + impl_->k2[j], s);
        acc += impl_->herm_weight[j] * w * std::norm(coeffs[j]);
    }
    return std::sqrt(acc);
}

double SpectralOps::spectral_energy(const Field& f) const {
    auto coeffs = forward(f);
    double acc = 0.0;
    for (std::size_t j = 0; j < impl_->n_cplx; ++j)
        acc += impl_->herm_weight[j] * std::norm(coeffs[j]);
    return acc;
}

namespace {

// kernel values on the grid; nonnegative, normalized to unit grid sum later
Field build_kernel(const Grid& g, const MollifierSpec& spec) {
    spec.validate();
    Field K(g);
    const int n = g.n;
    const double eps = spec.epsilon;
    if (spec.profile == MollifierSpec::Profile::gaussian_periodized) {
        // separable product of periodized 1-d Gaussians
        std::vector<double> axis(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(i) / n;
            double v = 0.0;
            for (int m = -3; m <= 3; ++m) {
                const double d = x + m;
                v += std::exp(-0.5 * d * d / (eps * eps));
            }
            axis[static_cast<std::size_t>(i)] = v;
        }
        const std::size_t N = g.point_count();
        for (std::size_t p = 0; p < N; ++p) {
            std::size_t rem = p;
            double v = 1.0;
            for (int a = g.dim - 1; a >= 0; --a) {
                v *= axis[rem % static_cast<std::size_t>(n)];
                rem /= static_cast<std::size_t>(n);
            }
            K[p] = v;
        }
    } else {
        // compact bump exp(-1/(1-|y|^2)); support radius eps < 1/4, so only
        // the nearest periodic image contributes
        const std::size_t N = g.point_count();
        for (std::size_t p = 0; p < N; ++p) {
            std::size_t rem = p;
            double r2 = 0.0;
            for (int a = g.dim - 1; a >= 0; --a) {
                const int i = static_cast<int>(
                    rem % static_cast<std::size_t>(n));
                rem /= static_cast<std::size_t>(n);
                double x = static_cast<double>(i) / n;
                if (x > 0.5) x -= 1.0;
                r2 += x * x;
            }
            const double y2 = r2 / (eps * eps);
            K[p] = y2 < 1.0 ? std::exp(-1.0 / (1.0 - y2)) : 0.0;
        }
    }
    return K;
}

} // namespace

std::vector<double> SpectralOps::mollifier_multipliers(
    const MollifierSpec& spec) const {
    Field K = build_kernel(grid_, spec);
    const double S = kernels::active().sum(K.data(), K.size());
    if (!(S > 0.0))
        throw std::runtime_error("mollify: kernel vanished on the grid");
    auto coeffs = forward(K);
    std::vector<double> m(impl_->n_cplx);
    const double scale = static_cast<double>(impl_->n_real) / S;
    for (std::size_t j = 0; j < impl_->n_cplx; ++j)
        m[j] = coeffs[j].real() * scale; // kernel is even: coeffs are real
    m[0] = 1.0; // exact mean preservation
    return m;
}

Field SpectralOps::mollify(const Field& f, const MollifierSpec& spec) const {
    check_same_grid(f.grid(), grid_, "mollify");
    const auto m = mollifier_multipliers(spec);
    Field out(grid_);
    apply_real_multiplier(f, m, out);
    return out;
}

Field SpectralOps::zero_mean(const Field& f) {
    // two passes: the second subtraction removes the summation round-off of
    // the first, leaving a residual mean at the 1e-15 level
    Field out(f.grid());
    const double m = f.mean();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - m;
    const double m2 = out.mean();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= m2;
    return out;
}

} // namespace qnsch
