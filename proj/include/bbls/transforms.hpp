#pragma once
// Composable search-space and objective-space transformations. Every test
// function is an immutable chain of these wrappers around a raw core; a
// wrapper's transform runs on the incoming point before the wrapped
// evaluator sees it, so wrapping order is the reverse of application order.

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bbls/rng.hpp"
#include "bbls/structured_ops.hpp"

namespace bbls {

// Dimension normalization min(1, 40/n) keeping target difficulty comparable
// across dimensions.
inline double gamma_norm(int n) {
    if (n < 1) throw std::invalid_argument("gamma_norm: n < 1");
    return std::min(1.0, 40.0 / static_cast<double>(n));
}

// Immutable evaluator handle. Copies share the underlying callable state;
// evaluation is pure, so concurrent calls on one Evaluator are safe.
class Evaluator {
public:
    using Fn = std::function<double(std::span<const double>)>;

    Evaluator() : n_(0) {}
    Evaluator(int n, Fn fn) : n_(n), fn_(std::move(fn)) {}

    int dimension() const { return n_; }

    double operator()(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("Evaluator: dimension mismatch");
        return fn_(x);
    }

private:
    int n_;
    Fn fn_;
};

// result(x) = inner(x - x_opt)
inline Evaluator translate(Evaluator inner, std::vector<double> x_opt) {
    if (static_cast<int>(x_opt.size()) != inner.dimension())
        throw std::invalid_argument("translate: dimension mismatch");
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), x_opt = std::move(x_opt)](
                            std::span<const double> x) {
        std::vector<double> z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - x_opt[i];
        return inner(z);
    });
}

// result(x) = inner(x) + f_opt
inline Evaluator shift_objective(Evaluator inner, double f_opt) {
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), f_opt](
                            std::span<const double> x) {
        return inner(x) + f_opt;
    });
}

// result(x) = inner(P x), gather convention.
inline Evaluator permute_vars(Evaluator inner, Permutation p) {
    if (p.dimension() != inner.dimension())
        throw std::invalid_argument("permute_vars: dimension mismatch");
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), p = std::move(p)](
                            std::span<const double> x) {
        return inner(p.apply(x));
    });
}

// result(x) = inner(B x)
inline Evaluator blockrotate_vars(Evaluator inner, BlockDiagonalMatrix b) {
    if (b.dimension() != inner.dimension())
        throw std::invalid_argument("blockrotate_vars: dimension mismatch");
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), b = std::move(b)](
                            std::span<const double> x) {
        return inner(b.apply(x));
    });
}

// Diagonal conditioning matrix Lambda^alpha, entries alpha^((i-1)/(2(n-1)))
// for 1-based i; the single entry is 1 when n == 1.
class ScalingVector {
public:
    ScalingVector(int n, double alpha) : diag_(static_cast<std::size_t>(n)) {
        if (n < 1) throw std::invalid_argument("ScalingVector: n < 1");
        for (int i = 0; i < n; ++i) {
            const double e =
                n == 1 ? 0.0
                       : static_cast<double>(i) / (2.0 * (static_cast<double>(n) - 1.0));
            diag_[static_cast<std::size_t>(i)] = std::pow(alpha, e);
        }
    }

    int dimension() const { return static_cast<int>(diag_.size()); }
    const std::vector<double>& diag() const { return diag_; }

    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != diag_.size())
            throw std::invalid_argument("ScalingVector: dimension mismatch");
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = diag_[i] * x[i];
        return y;
    }

private:
    std::vector<double> diag_;
};

// result(x) = inner(Lambda x)
inline Evaluator scale_vars(Evaluator inner, ScalingVector lambda) {
    if (lambda.dimension() != inner.dimension())
        throw std::invalid_argument("scale_vars: dimension mismatch");
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), lambda = std::move(lambda)](
                            std::span<const double> x) {
        return inner(lambda.apply(x));
    });
}

// Oscillation map: a nonlinear distortion that preserves sign, zero and
// monotonicity while wiggling magnitudes in log space.
inline double t_osz_scalar(double v) {
    if (v == 0.0) return 0.0;
    const double logv = std::log(std::abs(v));
    const double c1 = v > 0.0 ? 10.0 : 5.5;
    const double c2 = v > 0.0 ? 7.9 : 3.1;
    const double r =
        std::exp(logv + 0.049 * (std::sin(c1 * logv) + std::sin(c2 * logv)));
    return v > 0.0 ? r : -r;
}

inline std::vector<double> t_osz_vector(std::span<const double> x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = t_osz_scalar(x[i]);
    return y;
}

// result(x) = inner(T_osz(x)) componentwise.
inline Evaluator t_osz(Evaluator inner) {
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner)](std::span<const double> x) {
        return inner(t_osz_vector(x));
    });
}

// Asymmetry map: positive components are raised to a coordinate- and
// magnitude-dependent power, negative ones pass through.
inline std::vector<double> t_asy_vector(std::span<const double> x, double beta) {
    const std::size_t n = x.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > 0.0) {
            const double frac =
                n == 1 ? 0.0
                       : static_cast<double>(i) / (static_cast<double>(n) - 1.0);
            y[i] = std::pow(x[i], 1.0 + beta * frac * std::sqrt(x[i]));
        } else {
            y[i] = x[i];
        }
    }
    return y;
}

// result(x) = inner(T_asy^beta(x))
inline Evaluator t_asy(Evaluator inner, double beta) {
    if (beta < 0.0) throw std::invalid_argument("t_asy: beta < 0");
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), beta](
                            std::span<const double> x) {
        return inner(t_asy_vector(x, beta));
    });
}

// Boundary penalty sum(max(0, |x_i| - 5)^2).
inline double f_pen(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        const double d = std::abs(v) - 5.0;
        if (d > 0.0) s += d * d;
    }
    return s;
}

// result(x) = inner(x) + weight * f_pen(x). Applied outside the variable
// chain so the penalty sees the untransformed point.
inline Evaluator add_boundary_penalty(Evaluator inner, double weight) {
    const int n = inner.dimension();
    return Evaluator(n, [inner = std::move(inner), weight](
                            std::span<const double> x) {
        return inner(x) + weight * f_pen(x);
    });
}

// Random +-1 entries, each sign with probability 1/2.
inline std::vector<double> sign_vector(RngState& rng, int n) {
    if (n < 1) throw std::invalid_argument("sign_vector: n < 1");
    std::vector<double> s(static_cast<std::size_t>(n));
    for (auto& v : s) v = rng.next_uniform() < 0.5 ? -1.0 : 1.0;
    return s;
}

}  // namespace bbls
