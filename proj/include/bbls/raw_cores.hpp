#pragma once
// Raw objective cores: the untransformed formulas each test function is
// assembled around. All take the fully transformed variable z and return the
// unshifted objective value (no f_opt, no boundary penalty, no gamma unless
// noted).

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace bbls::cores {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Number of coordinates on the distinguished side of the axis split used by
// the discus, bent cigar and sharp ridge generalizations.
inline int split_index(int n) { return (n + 39) / 40; }

// 10^(scale * (i-1)/(n-1)) for 1-based i; {1} when n == 1.
inline std::vector<double> graded_powers(int n, double scale) {
    std::vector<double> c(static_cast<std::size_t>(n), 1.0);
    for (int i = 1; i < n; ++i)
        c[static_cast<std::size_t>(i)] =
            std::pow(10.0, scale * static_cast<double>(i) /
                               (static_cast<double>(n) - 1.0));
    return c;
}

inline double sphere(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) s += v * v;
    return s;
}

// sum coeff_i z_i^2 with externally supplied conditioning coefficients.
inline double weighted_square_sum(std::span<const double> z,
                                  std::span<const double> coeff) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += coeff[i] * z[i] * z[i];
    return s;
}

inline double rastrigin(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double cos_sum = 0.0, sq = 0.0;
    for (double v : z) {
        cos_sum += std::cos(kTwoPi * v);
        sq += v * v;
    }
    return 10.0 * (n - cos_sum) + sq;
}

inline double rosenbrock(std::span<const double> z) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double discus_split(std::span<const double> z, int split) {
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        (static_cast<int>(i) < split ? head : tail) += z[i] * z[i];
    return 1e6 * head + tail;
}

inline double cigar_split(std::span<const double> z, int split) {
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        (static_cast<int>(i) < split ? head : tail) += z[i] * z[i];
    return head + 1e6 * tail;
}

inline double sharp_ridge_split(std::span<const double> z, int split) {
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        (static_cast<int>(i) < split ? head : tail) += z[i] * z[i];
    return head + 100.0 * std::sqrt(tail);
}

inline double different_powers(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double e =
            z.size() == 1
                ? 2.0
                : 2.0 + 4.0 * static_cast<double>(i) / (n - 1.0);
        s += std::pow(std::abs(z[i]), e);
    }
    return s;
}

inline constexpr int kWeierstrassTerms = 12;
// sum_{k=0}^{11} 2^-k cos(pi 3^k) = -(2 - 2^-11), closed form.
inline constexpr double kWeierstrassF0 = -(2.0 - 0x1.0p-11);

// Mean over coordinates of the 12-term cosine series.
inline double weierstrass_mean(std::span<const double> z) {
    double total = 0.0;
    for (double v : z) {
        double half_pow = 1.0, three_pow = 1.0;
        for (int k = 0; k < kWeierstrassTerms; ++k) {
            total += half_pow * std::cos(kTwoPi * three_pow * (v + 0.5));
            half_pow *= 0.5;
            three_pow *= 3.0;
        }
    }
    return total / static_cast<double>(z.size());
}

inline double schaffers_f7(std::span<const double> z) {
    if (z.size() < 2)
        throw std::invalid_argument("schaffers_f7: dimension must be >= 2");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double s = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double root = std::sqrt(s);
        const double osc = std::sin(50.0 * std::pow(s, 0.2));
        acc += root + root * osc * osc;
    }
    const double mean = acc / (static_cast<double>(z.size()) - 1.0);
    return mean * mean;
}

inline double griewank_rosenbrock(std::span<const double> z) {
    if (z.size() < 2)
        throw std::invalid_argument("griewank_rosenbrock: dimension must be >= 2");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        const double s = 100.0 * a * a + b * b;
        acc += s / 4000.0 - std::cos(s);
    }
    return 10.0 * acc / (static_cast<double>(z.size()) - 1.0) + 10.0;
}

inline constexpr int kKatsuuraTerms = 32;

inline double katsuura(std::span<const double> z) {
    const double n = static_cast<double>(z.size());
    const double exponent = 10.0 / std::pow(n, 1.2);
    double prod = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double inner = 0.0;
        for (int j = 1; j <= kKatsuuraTerms; ++j) {
            const double scaled = std::ldexp(z[i], j);
            inner += std::abs(scaled - std::round(scaled)) * std::ldexp(1.0, -j);
        }
        prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, exponent);
    }
    return 10.0 / (n * n) * (prod - 1.0);
}

}  // namespace bbls::cores
