#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace hexcover {

// Dense polynomial of degree <= 6 in one variable, c[i] multiplies z^i.
struct SmallPoly {
    std::array<double, 7> c{};
    int deg = 0;

    double eval(double z) const {
        double v = 0.0;
        for (int i = deg; i >= 0; --i) v = v * z + c[static_cast<size_t>(i)];
        return v;
    }
    double deriv_eval(double z) const {
        double v = 0.0;
        for (int i = deg; i >= 1; --i) v = v * z + i * c[static_cast<size_t>(i)];
        return v;
    }
    double max_abs_coef() const {
        double m = 0.0;
        for (int i = 0; i <= deg; ++i) m = std::max(m, std::abs(c[static_cast<size_t>(i)]));
        return m;
    }
};

inline SmallPoly poly_add(const SmallPoly& a, const SmallPoly& b) {
    SmallPoly r;
    r.deg = std::max(a.deg, b.deg);
    for (int i = 0; i <= r.deg; ++i)
        r.c[static_cast<size_t>(i)] = (i <= a.deg ? a.c[static_cast<size_t>(i)] : 0.0) +
                                      (i <= b.deg ? b.c[static_cast<size_t>(i)] : 0.0);
    return r;
}

inline SmallPoly poly_sub(const SmallPoly& a, const SmallPoly& b) {
    SmallPoly r;
    r.deg = std::max(a.deg, b.deg);
    for (int i = 0; i <= r.deg; ++i)
        r.c[static_cast<size_t>(i)] = (i <= a.deg ? a.c[static_cast<size_t>(i)] : 0.0) -
                                      (i <= b.deg ? b.c[static_cast<size_t>(i)] : 0.0);
    return r;
}

inline SmallPoly poly_mul(const SmallPoly& a, const SmallPoly& b) {
    SmallPoly r;
    r.deg = a.deg + b.deg;
    for (int i = 0; i <= a.deg; ++i)
        for (int j = 0; j <= b.deg; ++j)
            r.c[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    return r;
}

// Real roots of p inside [lo, hi] (inclusive within edge_tol), via
// companion-matrix eigenvalues with Newton polishing. A sign-change scan
// backs up the eigensolver so bracketed roots are never lost.
inline std::vector<double> real_roots_in_interval(SmallPoly p, double lo, double hi,
                                                  double edge_tol = 1e-9) {
    std::vector<double> roots;
    const double scale = p.max_abs_coef();
    if (scale <= 0.0) return roots;
    int deg = p.deg;
    while (deg > 0 && std::abs(p.c[static_cast<size_t>(deg)]) <= 1e-13 * scale) --deg;
    p.deg = deg;
    if (deg == 0) return roots;

    const auto polish_and_keep = [&](double z) {
        for (int it = 0; it < 8; ++it) {
            const double f = p.eval(z), df = p.deriv_eval(z);
            if (std::abs(df) < 1e-300) break;
            const double step = f / df;
            z -= step;
            if (std::abs(step) < 1e-15) break;
        }
        if (z < lo - edge_tol || z > hi + edge_tol) return;
        z = std::clamp(z, lo, hi);
        for (double r : roots)
            if (std::abs(r - z) <= 1e-9) return;
        roots.push_back(z);
    };

    if (deg == 1) {
        polish_and_keep(-p.c[0] / p.c[1]);
    } else if (deg == 2) {
        const double a = p.c[2], b = p.c[1], c = p.c[0];
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            polish_and_keep(q / a);
            if (std::abs(q) > 1e-300) polish_and_keep(c / q);
        }
    } else {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i)
            companion(i, deg - 1) = -p.c[static_cast<size_t>(i)] / p.c[static_cast<size_t>(deg)];
        const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        for (int i = 0; i < deg; ++i) {
            const std::complex<double> ev = solver.eigenvalues()(i);
            if (std::abs(ev.imag()) <= 1e-7 * (1.0 + std::abs(ev.real()))) polish_and_keep(ev.real());
        }
    }

    // Bisection on any sign change the eigenvalue pass missed.
    constexpr int kScan = 64;
    double prev_z = lo, prev_f = p.eval(lo);
    for (int i = 1; i <= kScan; ++i) {
        const double z = lo + (hi - lo) * i / kScan;
        const double f = p.eval(z);
        if (prev_f == 0.0) polish_and_keep(prev_z);
        if ((prev_f < 0.0) != (f < 0.0)) {
            double a = prev_z, b = z, fa = prev_f;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b), fm = p.eval(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            polish_and_keep(0.5 * (a + b));
        }
        prev_z = z;
        prev_f = f;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hexcover
