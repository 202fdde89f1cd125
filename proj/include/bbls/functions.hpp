#pragma once
// Construction of the 24 benchmark problems. Every rotational transformation
// is a permuted orthogonal block-diagonal operator with block size
// min(n, 40), n swaps and swap range floor(n/3); all random parameters come
// from role-keyed sub-streams of (function id, dimension, instance).

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbls/raw_cores.hpp"
#include "bbls/rng.hpp"
#include "bbls/structured_ops.hpp"
#include "bbls/transforms.hpp"

namespace bbls {

inline constexpr int kFunctionCount = 24;
inline constexpr int kBlockSizeMax = 40;
inline constexpr double kLowerBound = -5.0;
inline constexpr double kUpperBound = 5.0;

inline int function_group(int fid) {
    if (fid >= 1 && fid <= 5) return 1;
    if (fid <= 9) return 2;
    if (fid <= 14) return 3;
    if (fid <= 19) return 4;
    if (fid <= 24) return 5;
    throw std::invalid_argument("unknown function id");
}

inline const char* function_name(int fid) {
    static constexpr const char* names[kFunctionCount] = {
        "sphere",
        "ellipsoid-separable",
        "rastrigin-separable",
        "bueche-rastrigin",
        "linear-slope",
        "attractive-sector",
        "step-ellipsoid",
        "rosenbrock",
        "rosenbrock-rotated",
        "ellipsoid",
        "discus",
        "bent-cigar",
        "sharp-ridge",
        "different-powers",
        "rastrigin",
        "weierstrass",
        "schaffers-f7",
        "schaffers-f7-ill-conditioned",
        "griewank-rosenbrock",
        "schwefel",
        "gallagher-101-peaks",
        "gallagher-21-peaks",
        "katsuura",
        "lunacek-bi-rastrigin",
    };
    if (fid < 1 || fid > kFunctionCount)
        throw std::invalid_argument("unknown function id");
    return names[fid - 1];
}

struct ProblemDescriptor {
    int function_id = 0;
    int dimension = 0;
    std::int64_t instance = 0;
    std::string name;
    int group = 0;

    bool operator==(const ProblemDescriptor& o) const {
        return function_id == o.function_id && dimension == o.dimension &&
               instance == o.instance;
    }
};

// One rotational transformation R = P_left * B * P_right. apply() realizes
// R x with the gather convention, so it matches the dense product of the
// materialized factors exactly.
struct RotationOperator {
    Permutation p_left;
    BlockDiagonalMatrix block;
    Permutation p_right;

    std::vector<double> apply(std::span<const double> x) const {
        return p_left.apply(block.apply(p_right.apply(x)));
    }

    // R^-1 = P_right^-1 * B^T * P_left^-1
    std::vector<double> apply_inverse(std::span<const double> x) const {
        return p_right.inverse().apply(
            block.apply_transpose(p_left.inverse().apply(x)));
    }
};

struct GallagherData {
    std::vector<double> weights;               // w_i per peak
    std::vector<std::vector<double>> centers;  // y_i per peak
    std::vector<std::vector<double>> diags;    // C_i diagonal per peak
};

struct StorageReport {
    std::size_t block_matrix_reals = 0;
    std::size_t permutation_ints = 0;
    std::size_t aux_reals = 0;
    int max_blocks_per_operator = 0;
    int largest_block = 0;
};

// Immutable bag of everything a problem instance was built from; kept
// alongside the evaluator for introspection and cross-checking.
struct ProblemData {
    ProblemDescriptor descriptor;
    std::vector<double> x_opt;
    double f_opt = 0.0;
    std::optional<RotationOperator> rot1;      // R
    std::optional<RotationOperator> rot2;      // Q
    std::optional<BlockDiagonalMatrix> plain_block;  // Gallagher B
    std::optional<GallagherData> gallagher;

    StorageReport storage() const {
        StorageReport r;
        auto add_block = [&r](const BlockDiagonalMatrix& b) {
            r.block_matrix_reals += b.storage_reals();
            r.max_blocks_per_operator =
                std::max(r.max_blocks_per_operator, b.block_count());
            r.largest_block = std::max(r.largest_block, b.largest_block());
        };
        for (const auto* rot : {&rot1, &rot2}) {
            if (!rot->has_value()) continue;
            add_block((*rot)->block);
            r.permutation_ints +=
                2 * static_cast<std::size_t>((*rot)->p_left.dimension());
        }
        if (plain_block) add_block(*plain_block);
        if (gallagher) {
            r.aux_reals += gallagher->weights.size();
            for (const auto& c : gallagher->centers) r.aux_reals += c.size();
            for (const auto& d : gallagher->diags) r.aux_reals += d.size();
        }
        r.aux_reals += x_opt.size();
        return r;
    }
};

struct Problem {
    ProblemDescriptor descriptor;
    Evaluator evaluator;
    std::vector<double> x_opt;
    double f_opt = 0.0;
    std::shared_ptr<const ProblemData> data;

    int dimension() const { return descriptor.dimension; }
    double operator()(std::span<const double> x) const { return evaluator(x); }
};

namespace detail {

inline double round2(double v) { return std::round(100.0 * v) / 100.0; }

// Componentwise uniform draw in [-half, half], rounded to 2 decimals, zeros
// remapped to -1e-5 to keep every component strictly signed.
inline std::vector<double> draw_rounded_uniform(RngState& rng, int n,
                                                double half) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& e : v) {
        e = round2(half * (2.0 * rng.next_uniform() - 1.0));
        if (e == 0.0) e = -1e-5;
    }
    return v;
}

// Heavy-tailed f_opt draw: standard Cauchy via the ratio of two normals,
// scaled by 100, rounded to 2 decimals, clipped to [-1000, 1000].
inline double draw_f_opt(RngState& rng) {
    const double g1 = rng.next_gaussian();
    const double g2 = rng.next_gaussian();
    const double raw = g2 == 0.0 ? (g1 >= 0.0 ? 1e9 : -1e9) : 100.0 * g1 / g2;
    return std::min(1000.0, std::max(-1000.0, round2(raw)));
}

}  // namespace detail

struct InstanceParams {
    std::vector<double> x_opt;
    double f_opt = 0.0;
    std::array<std::uint64_t, kSeedRoleCount> role_seeds{};
};

// Deterministic instance parameters. For f19 the returned x_opt is empty
// (it is derived from the rotation during problem construction); for f21/f22
// the optimum is the first Gallagher peak, also filled in later.
inline InstanceParams instance_parameters(int fid, int n,
                                          std::int64_t instance) {
    if (fid < 1 || fid > kFunctionCount)
        throw std::invalid_argument("unknown function id");
    if (n < 2) throw std::invalid_argument("dimension must be >= 2");
    if (instance < 0) throw std::invalid_argument("instance must be >= 0");

    InstanceParams params;
    const auto u_fid = static_cast<std::uint64_t>(fid);
    const auto u_n = static_cast<std::uint64_t>(n);
    const auto u_inst = static_cast<std::uint64_t>(instance);
    for (int r = 0; r < kSeedRoleCount; ++r)
        params.role_seeds[static_cast<std::size_t>(r)] =
            derive_seed(u_fid, u_n, u_inst, static_cast<SeedRole>(r));

    RngState x_rng(params.role_seeds[static_cast<std::size_t>(SeedRole::x_opt)]);
    switch (fid) {
        case 5: {
            const auto s = sign_vector(x_rng, n);
            params.x_opt.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                params.x_opt[static_cast<std::size_t>(i)] =
                    5.0 * s[static_cast<std::size_t>(i)];
            break;
        }
        case 8:
        case 9:
            params.x_opt = detail::draw_rounded_uniform(x_rng, n, 3.0);
            break;
        case 19:
        case 21:
        case 22:
            break;  // derived during construction
        case 20: {
            const auto s = sign_vector(x_rng, n);
            params.x_opt.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                params.x_opt[static_cast<std::size_t>(i)] =
                    (4.2096874633 / 2.0) * s[static_cast<std::size_t>(i)];
            break;
        }
        case 24: {
            const auto s = sign_vector(x_rng, n);
            params.x_opt.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                params.x_opt[static_cast<std::size_t>(i)] =
                    1.25 * s[static_cast<std::size_t>(i)];  // 0.5 * mu0
            break;
        }
        default:
            params.x_opt = detail::draw_rounded_uniform(x_rng, n, 4.0);
    }

    RngState f_rng(params.role_seeds[static_cast<std::size_t>(SeedRole::f_opt)]);
    params.f_opt = detail::draw_f_opt(f_rng);
    return params;
}

namespace detail {

inline RotationOperator make_rotation(const InstanceParams& params,
                                      int n, SeedRole block_role,
                                      SeedRole left_role,
                                      SeedRole right_role) {
    const SwapParams swaps{n, n / 3};
    RngState block_rng(params.role_seeds[static_cast<std::size_t>(block_role)]);
    RngState left_rng(params.role_seeds[static_cast<std::size_t>(left_role)]);
    RngState right_rng(params.role_seeds[static_cast<std::size_t>(right_role)]);
    return RotationOperator{
        truncated_uniform_swaps(left_rng, n, swaps),
        generate_block_diagonal(block_rng, n, kBlockSizeMax),
        truncated_uniform_swaps(right_rng, n, swaps)};
}

// Wraps the chain [P_right, B, P_left] around an evaluator so the incoming
// point passes through P_right first; the realized operator equals the dense
// product P_left * B * P_right.
inline Evaluator rotate_vars(Evaluator e, const RotationOperator& rot) {
    e = permute_vars(std::move(e), rot.p_left);
    e = blockrotate_vars(std::move(e), rot.block);
    e = permute_vars(std::move(e), rot.p_right);
    return e;
}

inline GallagherData make_gallagher(RngState& aux, int fid, int n) {
    const int peaks = fid == 21 ? 101 : 21;
    const int denom = fid == 21 ? 99 : 19;
    GallagherData g;
    g.weights.resize(static_cast<std::size_t>(peaks));
    g.weights[0] = 10.0;
    for (int i = 1; i < peaks; ++i)
        g.weights[static_cast<std::size_t>(i)] =
            1.1 + 8.0 * static_cast<double>(i - 1) / static_cast<double>(denom);

    // Condition numbers: the set {1000^(2j/denom)} assigned to peaks 2..P
    // without replacement, plus a fixed alpha for the sharpest peak.
    const Permutation alpha_order = random_permutation(aux, denom + 1);
    std::vector<double> alphas(static_cast<std::size_t>(peaks));
    alphas[0] = fid == 21 ? 1000.0 : 1000.0 * 1000.0;
    for (int i = 1; i < peaks; ++i)
        alphas[static_cast<std::size_t>(i)] = std::pow(
            1000.0, 2.0 * static_cast<double>(alpha_order[i - 1]) /
                        static_cast<double>(denom));

    const double center_half = fid == 21 ? 5.0 : 4.9;
    const double opt_half = fid == 21 ? 4.0 : 3.92;
    g.centers.resize(static_cast<std::size_t>(peaks));
    g.diags.resize(static_cast<std::size_t>(peaks));
    for (int i = 0; i < peaks; ++i) {
        if (i == 0) {
            g.centers[0] = draw_rounded_uniform(aux, n, opt_half);
        } else {
            auto& c = g.centers[static_cast<std::size_t>(i)];
            c.resize(static_cast<std::size_t>(n));
            for (auto& e : c)
                e = center_half * (2.0 * aux.next_uniform() - 1.0);
        }
        // Lambda^alpha diagonal with randomly permuted entries, divided by
        // alpha^(1/4).
        const double alpha = alphas[static_cast<std::size_t>(i)];
        const Permutation order = random_permutation(aux, n);
        auto& d = g.diags[static_cast<std::size_t>(i)];
        d.resize(static_cast<std::size_t>(n));
        const double quarter_root = std::pow(alpha, 0.25);
        for (int k = 0; k < n; ++k)
            d[static_cast<std::size_t>(k)] =
                std::pow(alpha, static_cast<double>(order[k]) /
                                    (2.0 * (static_cast<double>(n) - 1.0))) /
                quarter_root;
    }
    return g;
}

}  // namespace detail

inline std::shared_ptr<const ProblemData> make_problem_data(
    int fid, int n, std::int64_t instance) {
    InstanceParams params = instance_parameters(fid, n, instance);
    auto data = std::make_shared<ProblemData>();
    data->descriptor = ProblemDescriptor{fid, n, instance, function_name(fid),
                                         function_group(fid)};
    data->f_opt = params.f_opt;

    const bool one_rotation =
        fid == 9 || fid == 10 || fid == 11 || fid == 12 || fid == 14 ||
        fid == 19;
    const bool two_rotations =
        fid == 6 || fid == 7 || fid == 13 || fid == 15 || fid == 16 ||
        fid == 17 || fid == 18 || fid == 23 || fid == 24;
    if (one_rotation || two_rotations)
        data->rot1 = detail::make_rotation(params, n, SeedRole::block_b1,
                                           SeedRole::perm_p11,
                                           SeedRole::perm_p12);
    if (two_rotations)
        data->rot2 = detail::make_rotation(params, n, SeedRole::block_b2,
                                           SeedRole::perm_p21,
                                           SeedRole::perm_p22);

    if (fid == 21 || fid == 22) {
        RngState block_rng(
            params.role_seeds[static_cast<std::size_t>(SeedRole::block_b1)]);
        data->plain_block = generate_block_diagonal(block_rng, n, kBlockSizeMax);
        RngState aux(params.role_seeds[static_cast<std::size_t>(SeedRole::aux)]);
        data->gallagher = detail::make_gallagher(aux, fid, n);
        data->x_opt = data->gallagher->centers[0];
    } else if (fid == 19) {
        // Optimum solves z = 1 with z = max(1, sqrt(n)/8) R x + 1/2.
        const double m = std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
        std::vector<double> target(static_cast<std::size_t>(n), 0.5 / m);
        data->x_opt = data->rot1->apply_inverse(target);
    } else {
        data->x_opt = std::move(params.x_opt);
    }
    return data;
}

namespace detail {

// Pipelines that are pure wrapper chains. The remaining functions couple
// intermediate vectors with the raw point and are built as dedicated
// closures below.
inline Evaluator build_chain_evaluator(
    const std::shared_ptr<const ProblemData>& d) {
    const int fid = d->descriptor.function_id;
    const int n = d->descriptor.dimension;
    const double g = gamma_norm(n);
    const int split = cores::split_index(n);

    Evaluator e;
    switch (fid) {
        case 1:
            e = Evaluator(n, [g](std::span<const double> z) {
                return g * cores::sphere(z);
            });
            e = translate(std::move(e), d->x_opt);
            break;
        case 2:
            e = Evaluator(n, [g, c = cores::graded_powers(n, 6.0)](
                                 std::span<const double> z) {
                return g * cores::weighted_square_sum(z, c);
            });
            e = t_osz(std::move(e));
            e = translate(std::move(e), d->x_opt);
            break;
        case 3:
            e = Evaluator(n, [g](std::span<const double> z) {
                return g * cores::rastrigin(z);
            });
            e = scale_vars(std::move(e), ScalingVector(n, 10.0));
            e = t_asy(std::move(e), 0.2);
            e = t_osz(std::move(e));
            e = translate(std::move(e), d->x_opt);
            break;
        case 4: {
            // z_i = s_i * t_i on the oscillated shifted point t; the sign
            // test uses t since the scaling is positive.
            e = Evaluator(n, [g, base = cores::graded_powers(n, 0.5)](
                                 std::span<const double> t) {
                std::vector<double> z(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) {
                    double s = base[i];
                    if (t[i] > 0.0 && i % 2 == 0) s *= 10.0;
                    z[i] = s * t[i];
                }
                return g * cores::rastrigin(z);
            });
            e = t_osz(std::move(e));
            e = translate(std::move(e), d->x_opt);
            e = add_boundary_penalty(std::move(e), 100.0);
            break;
        }
        case 8:
        case 9: {
            const double m =
                std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
            e = Evaluator(n, [g, m](std::span<const double> v) {
                std::vector<double> z(v.size());
                for (std::size_t i = 0; i < v.size(); ++i)
                    z[i] = m * v[i] + 1.0;
                return g * cores::rosenbrock(z);
            });
            if (fid == 9) e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        }
        case 10:
            e = Evaluator(n, [g, c = cores::graded_powers(n, 6.0)](
                                 std::span<const double> z) {
                return g * cores::weighted_square_sum(z, c);
            });
            e = t_osz(std::move(e));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 11:
            e = Evaluator(n, [g, split](std::span<const double> z) {
                return g * cores::discus_split(z, split);
            });
            e = t_osz(std::move(e));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 12:
            e = Evaluator(n, [g, split](std::span<const double> z) {
                return g * cores::cigar_split(z, split);
            });
            e = rotate_vars(std::move(e), *d->rot1);
            e = t_asy(std::move(e), 0.5);
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 13:
            e = Evaluator(n, [g, split](std::span<const double> z) {
                return g * cores::sharp_ridge_split(z, split);
            });
            e = rotate_vars(std::move(e), *d->rot2);
            e = scale_vars(std::move(e), ScalingVector(n, 10.0));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 14:
            e = Evaluator(n, [g](std::span<const double> z) {
                return g * cores::different_powers(z);
            });
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 15:
            e = Evaluator(n, [g](std::span<const double> z) {
                return g * cores::rastrigin(z);
            });
            e = rotate_vars(std::move(e), *d->rot1);
            e = scale_vars(std::move(e), ScalingVector(n, 10.0));
            e = rotate_vars(std::move(e), *d->rot2);
            e = t_asy(std::move(e), 0.2);
            e = t_osz(std::move(e));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            break;
        case 16:
            e = Evaluator(n, [](std::span<const double> z) {
                const double diff =
                    cores::weierstrass_mean(z) - cores::kWeierstrassF0;
                return 10.0 * diff * diff * diff;
            });
            e = rotate_vars(std::move(e), *d->rot1);
            e = scale_vars(std::move(e), ScalingVector(n, 0.01));
            e = rotate_vars(std::move(e), *d->rot2);
            e = t_osz(std::move(e));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            e = add_boundary_penalty(std::move(e), 10.0 / n);
            break;
        case 17:
        case 18:
            e = Evaluator(n, [](std::span<const double> z) {
                return cores::schaffers_f7(z);
            });
            e = scale_vars(std::move(e),
                           ScalingVector(n, fid == 17 ? 10.0 : 1000.0));
            e = rotate_vars(std::move(e), *d->rot2);
            e = t_asy(std::move(e), 0.5);
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            e = add_boundary_penalty(std::move(e), 10.0);
            break;
        case 19: {
            const double m =
                std::max(1.0, std::sqrt(static_cast<double>(n)) / 8.0);
            e = Evaluator(n, [m](std::span<const double> w) {
                std::vector<double> z(w.size());
                for (std::size_t i = 0; i < w.size(); ++i)
                    z[i] = m * w[i] + 0.5;
                return cores::griewank_rosenbrock(z);
            });
            e = rotate_vars(std::move(e), *d->rot1);
            break;
        }
        case 23:
            e = Evaluator(n, [](std::span<const double> z) {
                return cores::katsuura(z);
            });
            e = rotate_vars(std::move(e), *d->rot2);
            e = scale_vars(std::move(e), ScalingVector(n, 100.0));
            e = rotate_vars(std::move(e), *d->rot1);
            e = translate(std::move(e), d->x_opt);
            e = add_boundary_penalty(std::move(e), 1.0);
            break;
        default:
            throw std::logic_error("build_chain_evaluator: not a chain fid");
    }
    return shift_objective(std::move(e), d->f_opt);
}

inline Evaluator build_f5(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    const double g = gamma_norm(n);
    std::vector<double> slope(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double mag =
            std::pow(10.0, n == 1 ? 0.0
                                  : static_cast<double>(i) /
                                        (static_cast<double>(n) - 1.0));
        slope[static_cast<std::size_t>(i)] =
            (d->x_opt[static_cast<std::size_t>(i)] > 0.0 ? 1.0 : -1.0) * mag;
    }
    Evaluator e(n, [g, slope = std::move(slope), x_opt = d->x_opt](
                       std::span<const double> x) {
        double total = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double z = x_opt[i] * x[i] < 25.0 ? x[i] : x_opt[i];
            total += 5.0 * std::abs(slope[i]) - slope[i] * z;
        }
        return g * total;
    });
    return shift_objective(std::move(e), d->f_opt);
}

inline Evaluator build_f6(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    const double g = gamma_norm(n);
    Evaluator e(n, [g, x_opt = d->x_opt](std::span<const double> z) {
        double total = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double s = z[i] * x_opt[i] > 0.0 ? 100.0 : 1.0;
            const double sz = s * z[i];
            total += sz * sz;
        }
        return std::pow(t_osz_scalar(g * total), 0.9);
    });
    e = rotate_vars(std::move(e), *d->rot2);
    e = scale_vars(std::move(e), ScalingVector(n, 10.0));
    e = rotate_vars(std::move(e), *d->rot1);
    e = translate(std::move(e), d->x_opt);
    return shift_objective(std::move(e), d->f_opt);
}

inline Evaluator build_f7(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    const double g = gamma_norm(n);
    Evaluator e(n, [g, d, lambda = ScalingVector(n, 10.0),
                    coeff = cores::graded_powers(n, 2.0)](
                       std::span<const double> x) {
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - d->x_opt[i];
        const std::vector<double> z_hat = lambda.apply(d->rot1->apply(v));
        std::vector<double> z_tilde(z_hat.size());
        for (std::size_t i = 0; i < z_hat.size(); ++i)
            z_tilde[i] = std::abs(z_hat[i]) > 0.5
                             ? std::floor(0.5 + z_hat[i])
                             : std::floor(0.5 + 10.0 * z_hat[i]) / 10.0;
        const std::vector<double> z = d->rot2->apply(z_tilde);
        const double sum = cores::weighted_square_sum(z, coeff);
        const double head = std::abs(z_hat[0]) / 1e4;
        return g * 0.1 * std::max(head, sum) + f_pen(x) + d->f_opt;
    });
    return e;
}

inline Evaluator build_f20(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    // 2|x_opt_i| is the Schwefel optimum argument 4.2096874633.
    Evaluator e(n, [n, d, lambda = ScalingVector(n, 10.0)](
                       std::span<const double> x) {
        const double w = 4.2096874633;
        std::vector<double> x_hat(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x_hat[i] = 2.0 * (d->x_opt[i] > 0.0 ? 1.0 : -1.0) * x[i];
        std::vector<double> z_hat(x.size());
        z_hat[0] = x_hat[0];
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            z_hat[i + 1] = x_hat[i + 1] + 0.25 * (x_hat[i] - w);
        for (auto& v : z_hat) v -= w;
        std::vector<double> z = lambda.apply(z_hat);
        for (auto& v : z) v = 100.0 * (v + w);
        double total = 0.0;
        for (double v : z) total += v * std::sin(std::sqrt(std::abs(v)));
        std::vector<double> z100(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) z100[i] = z[i] / 100.0;
        return -total / (100.0 * static_cast<double>(n)) + 4.189828872724339 +
               100.0 * f_pen(z100) + d->f_opt;
    });
    return e;
}

inline Evaluator build_gallagher(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    Evaluator e(n, [n, d](std::span<const double> x) {
        const auto& g = *d->gallagher;
        double best = 0.0;
        std::vector<double> diff(x.size());
        for (std::size_t p = 0; p < g.weights.size(); ++p) {
            for (std::size_t i = 0; i < x.size(); ++i)
                diff[i] = x[i] - g.centers[p][i];
            const std::vector<double> t = d->plain_block->apply(diff);
            double quad = 0.0;
            for (std::size_t i = 0; i < t.size(); ++i)
                quad += g.diags[p][i] * t[i] * t[i];
            const double value =
                g.weights[p] *
                std::exp(-quad / (2.0 * static_cast<double>(n)));
            best = std::max(best, value);
        }
        // oscillation applies to the deficit first, then the square
        const double osc = t_osz_scalar(10.0 - best);
        return osc * osc + f_pen(x) + d->f_opt;
    });
    return e;
}

inline Evaluator build_f24(const std::shared_ptr<const ProblemData>& d) {
    const int n = d->descriptor.dimension;
    const double g = gamma_norm(n);
    const double mu0 = 2.5;
    const double s =
        1.0 - 1.0 / (2.0 * std::sqrt(static_cast<double>(n) + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - 1.0) / s);
    Evaluator e(n, [n, g, mu0, mu1, s, d, lambda = ScalingVector(n, 100.0)](
                       std::span<const double> x) {
        std::vector<double> x_hat(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x_hat[i] = 2.0 * (d->x_opt[i] > 0.0 ? 1.0 : -1.0) * x[i];
        double sum0 = 0.0, sum1 = 0.0;
        for (double v : x_hat) {
            sum0 += (v - mu0) * (v - mu0);
            sum1 += (v - mu1) * (v - mu1);
        }
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = x_hat[i] - mu0;
        const std::vector<double> z =
            d->rot2->apply(lambda.apply(d->rot1->apply(v)));
        double cos_sum = 0.0;
        for (double zi : z) cos_sum += std::cos(cores::kTwoPi * zi);
        const double nd = static_cast<double>(n);
        const double basin = std::min(sum0, nd + s * sum1);
        return g * (basin + 10.0 * (nd - cos_sum)) + 1e4 * f_pen(x) + d->f_opt;
    });
    return e;
}

}  // namespace detail

inline Problem build_problem(int fid, int n, std::int64_t instance) {
    auto data = make_problem_data(fid, n, instance);
    Evaluator e;
    switch (fid) {
        case 5:
            e = detail::build_f5(data);
            break;
        case 6:
            e = detail::build_f6(data);
            break;
        case 7:
            e = detail::build_f7(data);
            break;
        case 20:
            e = detail::build_f20(data);
            break;
        case 21:
        case 22:
            e = detail::build_gallagher(data);
            break;
        case 24:
            e = detail::build_f24(data);
            break;
        default:
            e = detail::build_chain_evaluator(data);
    }
    return Problem{data->descriptor, std::move(e), data->x_opt, data->f_opt,
                   data};
}

}  // namespace bbls
