#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnsch/kernels.hpp"

namespace qnsch {

// Uniform grid on the unit torus [0,1)^dim, n points per axis (power of two,
// n >= 8). Wavenumbers are the integers {-n/2+1,...,n/2} per axis, carrying
// an explicit 2*pi factor in all operators.
struct Grid {
    int dim = 2;
    int n = 0;

    Grid() = default;
    Grid(int dim_, int n_) : dim(dim_), n(n_) {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("Grid: dim must be 2 or 3");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 8");
    }

    std::size_t point_count() const {
        std::size_t p = 1;
        for (int d = 0; d < dim; ++d) p *= static_cast<std::size_t>(n);
        return p;
    }
    double spacing() const { return 1.0 / n; }
    bool operator==(const Grid& o) const { return dim == o.dim && n == o.n; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// Scalar field: one real value per grid point, row-major over the axes.
class Field {
public:
    Field() = default;
    explicit Field(Grid g, double fill = 0.0)
        : grid_(g), v_(g.point_count(), fill) {}

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }
    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    double mean() const {
        return kernels::active().sum(v_.data(), v_.size()) /
               static_cast<double>(v_.size());
    }
    double min() const {
        double mn, mx;
        kernels::active().minmax(v_.data(), v_.size(), &mn, &mx);
        return mn;
    }
    double max() const {
        double mn, mx;
        kernels::active().minmax(v_.data(), v_.size(), &mn, &mx);
        return mx;
    }

private:
    Grid grid_;
    std::vector<double> v_;
};

// dim scalar components on one shared grid.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(Grid g) : grid_(g), comp_(g.dim, Field(g)) {}

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }
    Field& operator[](int c) { return comp_[static_cast<std::size_t>(c)]; }
    const Field& operator[](int c) const {
        return comp_[static_cast<std::size_t>(c)];
    }

private:
    Grid grid_;
    std::vector<Field> comp_;
};

inline void check_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) +
                                            ": grid mismatch");
}

// -- elementwise field algebra (kernel-backed) ------------------------------

inline Field operator+(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "Field+");
    Field out(a.grid());
    kernels::active().add(a.data(), b.data(), out.data(), a.size());
    return out;
}

inline Field operator-(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "Field-");
    Field out(a.grid());
    kernels::active().sub(a.data(), b.data(), out.data(), a.size());
    return out;
}

inline Field operator*(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "Field*");
    Field out(a.grid());
    kernels::active().mul(a.data(), b.data(), out.data(), a.size());
    return out;
}

inline Field operator*(double s, const Field& a) {
    Field out(a.grid());
    kernels::active().scale(a.data(), s, out.data(), a.size());
    return out;
}

inline Field axpby(double sa, const Field& a, double sb, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "axpby");
    Field out(a.grid());
    kernels::active().axpby(sa, a.data(), sb, b.data(), out.data(), a.size());
    return out;
}

inline Field fmadd(const Field& a, const Field& b, const Field& c) {
    Field out(a.grid());
    kernels::active().fmadd(a.data(), b.data(), c.data(), out.data(),
                            a.size());
    return out;
}

inline double dot_grid(const Field& a, const Field& b) {
    check_same_grid(a.grid(), b.grid(), "dot_grid");
    return kernels::active().dot(a.data(), b.data(), a.size());
}

// integral over the unit torus = grid average (cell volume 1/N)
inline double integral(const Field& a) {
    return a.mean();
}

inline double l2_norm(const Field& a) {
    double q = dot_grid(a, a) / static_cast<double>(a.size());
    return q > 0.0 ? std::sqrt(q) : 0.0;
}

inline double l2_norm(const VectorField& v) {
    double q = 0.0;
    for (int c = 0; c < v.dim(); ++c)
        q += dot_grid(v[c], v[c]) / static_cast<double>(v[c].size());
    return q > 0.0 ? std::sqrt(q) : 0.0;
}

inline double max_abs(const Field& a) {
    double mn, mx;
    kernels::active().minmax(a.data(), a.size(), &mn, &mx);
    return std::max(std::abs(mn), std::abs(mx));
}

inline double max_abs(const VectorField& v) {
    double m = 0.0;
    for (int c = 0; c < v.dim(); ++c) m = std::max(m, max_abs(v[c]));
    return m;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField out(a.grid());
    for (int c = 0; c < a.dim(); ++c) out[c] = a[c] + b[c];
    return out;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField out(a.grid());
    for (int c = 0; c < a.dim(); ++c) out[c] = a[c] - b[c];
    return out;
}

inline VectorField operator*(double s, const VectorField& a) {
    VectorField out(a.grid());
    for (int c = 0; c < a.dim(); ++c) out[c] = s * a[c];
    return out;
}

} // namespace qnsch
