#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qnsch/spectral.hpp"
#include "test_helpers.hpp"

using namespace qnsch;
using namespace qnsch::testing;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("transform basics") {
    SpectralOps ops(Grid(2, 32));

    SUBCASE("constant field has only mode 0") {
        Field c(ops.grid(), 2.5);
        auto coeffs = ops.forward(c);
        CHECK(coeffs[0].real() == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(coeffs[0].imag() == doctest::Approx(0.0).epsilon(1e-14));
        double rest = 0.0;
        for (std::size_t j = 1; j < coeffs.size(); ++j)
            rest += std::norm(coeffs[j]);
        CHECK(rest < 1e-26);
    }

    SUBCASE("cos(2 pi x1) occupies the conjugate pair k = (+-1, 0)") {
        Field f = field_from(ops.grid(),
                             [](const double* x) { return std::cos(2 * pi * x[0]); });
        auto coeffs = ops.forward(f);
        double offmode = 0.0;
        int hits = 0;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const int k0 = ops.wavenumber(j, 0);
            const int k1 = ops.wavenumber(j, 1);
            if (std::abs(k0) == 1 && k1 == 0) {
                ++hits;
                CHECK(coeffs[j].real() == doctest::Approx(0.5).epsilon(1e-13));
                CHECK(std::abs(coeffs[j].imag()) < 1e-14);
            } else {
                offmode += std::norm(coeffs[j]);
            }
        }
        CHECK(hits == 2); // the half-spectrum stores +1 and -1 on axis 0
        CHECK(offmode < 1e-26);
    }

    SUBCASE("roundtrip on random data") {
        Field f = random_band_limited(ops, 42);
        Field g = ops.backward(ops.forward(f));
        CHECK(rel_diff_l2(f, g) < 1e-12);
    }

    SUBCASE("Parseval: grid mean of f^2 equals spectral energy") {
        Field f = random_band_limited(ops, 7);
        const double phys = dot_grid(f, f) / static_cast<double>(f.size());
        const double spec = ops.spectral_energy(f);
        CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
    }

    SUBCASE("grid mismatch raises") {
        SpectralOps other(Grid(2, 16));
        Field f(Grid(2, 16));
        CHECK_THROWS_AS(ops.forward(f), std::invalid_argument);
    }
}

TEST_CASE("differential operators") {
    SpectralOps ops(Grid(2, 64));

    SUBCASE("grad of a single mode") {
        Field f = field_from(ops.grid(),
                             [](const double* x) { return std::cos(2 * pi * x[0]); });
        VectorField g = ops.grad(f);
        Field expect0 = field_from(ops.grid(), [](const double* x) {
            return -2 * pi * std::sin(2 * pi * x[0]);
        });
        CHECK(rel_diff_l2(g[0], expect0) < 1e-13);
        CHECK(l2_norm(g[1]) < 1e-13);
    }

    SUBCASE("laplacian of a constant vanishes") {
        Field c(ops.grid(), 3.0);
        CHECK(l2_norm(ops.laplacian(c)) < 1e-13);
    }

    SUBCASE("div(grad f) = laplacian f on random band-limited f") {
        Field f = random_band_limited(ops, 3);
        Field lhs = ops.div(ops.grad(f));
        Field rhs = ops.laplacian(f);
        CHECK(rel_diff_l2(lhs, rhs) < 1e-12);
    }

    SUBCASE("bilaplacian = laplacian(laplacian)") {
        Field f = random_band_limited(ops, 4);
        CHECK(rel_diff_l2(ops.bilaplacian(f), ops.laplacian(ops.laplacian(f)))
              < 1e-12);
    }
}

TEST_CASE("inverse laplacian") {
    SpectralOps ops(Grid(2, 64));

    SUBCASE("single mode eigenvalue") {
        Field g = field_from(ops.grid(),
                             [](const double* x) { return std::cos(2 * pi * x[0]); });
        Field u = ops.inv_laplacian_zero_mean(g);
        Field expect = field_from(ops.grid(), [](const double* x) {
            return -std::cos(2 * pi * x[0]) / (4 * pi * pi);
        });
        CHECK(rel_diff_l2(u, expect) < 1e-13);
        CHECK(std::abs(u.mean()) < 1e-15);
    }

    SUBCASE("zero input") {
        Field z(ops.grid());
        CHECK(l2_norm(ops.inv_laplacian_zero_mean(z)) == 0.0);
    }

    SUBCASE("residual on random zero-mean input") {
        Field g = random_band_limited(ops, 5);
        Field u = ops.inv_laplacian_zero_mean(g);
        CHECK(rel_diff_l2(ops.laplacian(u), g) < 1e-12);
    }

    SUBCASE("nonzero mean rejected") {
        Field g(ops.grid(), 1.0);
        CHECK_THROWS_AS(ops.inv_laplacian_zero_mean(g), std::domain_error);
    }
}

TEST_CASE("bogovskii operator") {
    SpectralOps ops(Grid(2, 64));

    SUBCASE("single-mode inversion") {
        Field g = field_from(ops.grid(),
                             [](const double* x) { return std::cos(2 * pi * x[0]); });
        VectorField B = ops.bogovskii(g);
        Field expect0 = field_from(ops.grid(), [](const double* x) {
            return std::sin(2 * pi * x[0]) / (2 * pi);
        });
        CHECK(rel_diff_l2(B[0], expect0) < 1e-13);
        CHECK(l2_norm(B[1]) < 1e-13);
        CHECK(rel_diff_l2(ops.div(B), g) < 1e-13);
    }

    SUBCASE("zero field maps to zero") {
        Field z(ops.grid());
        CHECK(l2_norm(ops.bogovskii(z)) == 0.0);
    }

    SUBCASE("div B[g] = g and the H1 bound on random fields") {
        // exhaustive multiplier maximum: sqrt(1+|2 pi k|^2)/(2 pi |k|),
        // attained at |k| = 1
        const double mult_max = std::sqrt(1.0 + 4 * pi * pi) / (2 * pi);
        double measured = 0.0;
        for (unsigned s = 0; s < 20; ++s) {
            Field g = random_band_limited(ops, 100 + s);
            VectorField B = ops.bogovskii(g);
            CHECK(rel_diff_l2(ops.div(B), g) < 1e-12);
            double h1sq = 0.0;
            for (int c = 0; c < 2; ++c) {
                const double nc = ops.sobolev_norm(B[c], 1.0);
                h1sq += nc * nc;
            }
            measured = std::max(measured, std::sqrt(h1sq) / l2_norm(g));
        }
        // extremal probe: the lowest mode saturates the bound
        Field ext = field_from(ops.grid(), [](const double* x) {
            return std::cos(2 * pi * x[0]);
        });
        VectorField Bext = ops.bogovskii(ext);
        measured = std::max(measured,
                            ops.sobolev_norm(Bext[0], 1.0) / l2_norm(ext));
        CHECK(measured <= 1.01 * mult_max);
        CHECK(measured >= 0.99 * mult_max);
    }

    SUBCASE("bogovskii(div v) is a projection") {
        VectorField v(ops.grid());
        v[0] = random_band_limited(ops, 51);
        v[1] = random_band_limited(ops, 52);
        VectorField p1 = ops.bogovskii(ops.div(v));
        VectorField p2 = ops.bogovskii(ops.div(p1));
        CHECK(rel_diff_l2(p1, p2) < 1e-12);
    }

    SUBCASE("nonzero mean rejected") {
        Field g(ops.grid(), 0.5);
        CHECK_THROWS_AS(ops.bogovskii(g), std::domain_error);
    }
}

TEST_CASE("dealiasing") {
    SpectralOps ops(Grid(2, 32)); // cutoff floor(32/3) = 10

    SUBCASE("band-limited field unchanged") {
        Field f = field_from(ops.grid(), [](const double* x) {
            return std::cos(2 * pi * 3 * x[0]) + std::sin(2 * pi * 9 * x[1]);
        });
        CHECK(rel_diff_l2(ops.dealias(f), f) < 1e-13);
    }

    SUBCASE("mode above the cutoff is removed") {
        Field f = field_from(ops.grid(), [](const double* x) {
            return std::cos(2 * pi * 16 * x[0]); // Nyquist
        });
        CHECK(l2_norm(ops.dealias(f)) < 1e-13);
        Field g = field_from(ops.grid(), [](const double* x) {
            return std::cos(2 * pi * 11 * x[0]); // just above cutoff
        });
        CHECK(l2_norm(ops.dealias(g)) < 1e-13);
    }

    SUBCASE("idempotence") {
        Field f = random_band_limited(ops, 9);
        Field once = ops.dealias(f);
        Field twice = ops.dealias(once);
        CHECK(rel_diff_l2(once, twice) < 1e-14);
    }
}

TEST_CASE("sobolev norms") {
    SpectralOps ops(Grid(2, 64));

    SUBCASE("constant field: |c| for every s") {
        Field c(ops.grid(), -1.5);
        for (double s : {-2.0, 0.0, 1.0, 3.0})
            CHECK(ops.sobolev_norm(c, s) == doctest::Approx(1.5).epsilon(1e-13));
    }

    SUBCASE("cos mode H1 norm") {
        Field f = field_from(ops.grid(),
                             [](const double* x) { return std::cos(2 * pi * x[0]); });
        const double expect = std::sqrt(0.5 * (1.0 + 4 * pi * pi));
        CHECK(ops.sobolev_norm(f, 1.0) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(ops.sobolev_norm(f, 0.0) ==
              doctest::Approx(l2_norm(f)).epsilon(1e-13));
    }

    SUBCASE("monotone in s") {
        Field f = random_band_limited(ops, 12);
        const double n0 = ops.sobolev_norm(f, 0.0);
        const double n1 = ops.sobolev_norm(f, 1.0);
        const double n2 = ops.sobolev_norm(f, 2.0);
        CHECK(n1 >= n0);
        CHECK(n2 >= n1);
    }

    SUBCASE("s out of range rejected") {
        Field f(ops.grid());
        CHECK_THROWS_AS(ops.sobolev_norm(f, 3.5), std::invalid_argument);
    }
}

TEST_CASE("mollifier") {
    SpectralOps ops(Grid(2, 128));

    SUBCASE("constant preserved exactly") {
        Field c(ops.grid(), 0.7);
        for (auto prof : {MollifierSpec::Profile::gaussian_periodized,
                          MollifierSpec::Profile::bump_periodized}) {
            Field m = ops.mollify(c, MollifierSpec(0.05, prof));
            CHECK(rel_diff_l2(m, c) < 1e-14);
        }
    }

    SUBCASE("single mode scaled by the kernel transform (quadrature oracle)") {
        const int kmode = 3;
        Field f = field_from(ops.grid(), [&](const double* x) {
            return std::cos(2 * pi * kmode * x[0]);
        });
        for (auto prof : {MollifierSpec::Profile::gaussian_periodized,
                          MollifierSpec::Profile::bump_periodized}) {
            MollifierSpec spec(0.08, prof);
            Field m = ops.mollify(f, spec);
            // the mollified mode must stay proportional to the input mode
            const double num = dot_grid(m, f);
            const double den = dot_grid(f, f);
            const double scale = num / den;
            CHECK(scale > 0.0);
            CHECK(scale <= 1.0 + 1e-12);
            CHECK(rel_diff_l2(m, scale * f) < 1e-10);
        }
    }

    SUBCASE("mean preserved exactly and L2 non-expansive") {
        Field f = random_band_limited(ops, 21, 0.8);
        for (std::size_t p = 0; p < f.size(); ++p) f[p] += 0.3;
        const double m0 = f.mean();
        MollifierSpec spec(0.03, MollifierSpec::Profile::gaussian_periodized);
        Field g = ops.mollify(f, spec);
        CHECK(g.mean() == doctest::Approx(m0).epsilon(1e-14));
        CHECK(l2_norm(g) <= l2_norm(f) * (1.0 + 1e-13));
    }

    SUBCASE("convergence J_eps f -> f monotone along eps = .1,.05,.025") {
        Field f = field_from(ops.grid(), [](const double* x) {
            return std::sin(2 * pi * x[0]) + 0.4 * std::cos(2 * pi * 2 * x[1]);
        });
        double prev = 1e300;
        for (double eps : {0.1, 0.05, 0.025}) {
            MollifierSpec spec(eps,
                               MollifierSpec::Profile::gaussian_periodized);
            const double err = l2_norm(ops.mollify(f, spec) - f);
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 0.1 * l2_norm(f));
    }

    SUBCASE("H2-vs-1/eps scaling: log-log slope >= -1.1") {
        // rough field: white noise shaped to a |k|^{-2.01} spectrum,
        // marginally H1 in 2-d (real multiplier keeps Hermitian symmetry)
        SpectralOps o64(Grid(2, 64));
        std::mt19937_64 rng(33);
        std::normal_distribution<double> dist(0.0, 1.0);
        Field noise(o64.grid());
        for (std::size_t p = 0; p < noise.size(); ++p) noise[p] = dist(rng);
        auto coeffs = o64.forward(noise);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            double k2 = 0.0;
            for (int a = 0; a < 2; ++a) {
                const double k = o64.wavenumber(j, a);
                k2 += k * k;
            }
            coeffs[j] *= k2 > 0 ? std::pow(k2, -1.005) : 0.0;
        }
        Field rough = o64.backward(coeffs);
        std::vector<double> lx, ly;
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            MollifierSpec spec(eps,
                               MollifierSpec::Profile::gaussian_periodized);
            lx.push_back(std::log(eps));
            ly.push_back(std::log(o64.sobolev_norm(o64.mollify(rough, spec),
                                                   2.0)));
        }
        // least-squares slope over the three points
        double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
        double num = 0, den = 0;
        for (int i = 0; i < 3; ++i) {
            num += (lx[i] - mx) * (ly[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        const double slope = num / den;
        CHECK(slope >= -1.1);
        CHECK(slope <= 0.0);
    }

    SUBCASE("invalid epsilon rejected") {
        CHECK_THROWS_AS(
            MollifierSpec(0.3, MollifierSpec::Profile::gaussian_periodized),
            std::invalid_argument);
        CHECK_THROWS_AS(
            MollifierSpec(-0.1, MollifierSpec::Profile::bump_periodized),
            std::invalid_argument);
    }
}

TEST_CASE("zero mean") {
    SpectralOps ops(Grid(2, 32));

    SUBCASE("constant maps to zero") {
        Field c(ops.grid(), 4.2);
        CHECK(l2_norm(SpectralOps::zero_mean(c)) < 1e-13);
    }

    SUBCASE("zero-mean input unchanged") {
        Field f = random_band_limited(ops, 61);
        CHECK(rel_diff_l2(SpectralOps::zero_mean(f), f) < 1e-14);
    }

    SUBCASE("mean of result at round-off") {
        Field f = random_band_limited(ops, 62);
        for (std::size_t p = 0; p < f.size(); ++p) f[p] += 1.234;
        CHECK(std::abs(SpectralOps::zero_mean(f).mean()) <= 1e-15);
    }
}

TEST_CASE("3-d operators smoke test") {
    SpectralOps ops(Grid(3, 16));
    Field f = random_band_limited(ops, 71);
    CHECK(rel_diff_l2(ops.div(ops.grad(f)), ops.laplacian(f)) < 1e-12);
    Field g = SpectralOps::zero_mean(random_band_limited(ops, 72));
    VectorField B = ops.bogovskii(g);
    CHECK(rel_diff_l2(ops.div(B), g) < 1e-12);
    Field rt = ops.backward(ops.forward(f));
    CHECK(rel_diff_l2(rt, f) < 1e-12);
}
