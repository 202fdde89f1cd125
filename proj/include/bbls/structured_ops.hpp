#pragma once
// Permuted orthogonal block-diagonal operators. A full rotation matrix R is
// represented as R = P_left * B * P_right where B is orthogonal
// block-diagonal and the P's are permutations, so applying R costs
// O(n * s_max) arithmetic and O(n * s_max) memory instead of O(n^2).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bbls/rng.hpp"

namespace bbls {

// Uniform block partition of n: every block is min(n, s_max) except possibly
// a smaller last one. Count is ceil(n / min(n, s_max)).
inline std::vector<int> block_sizes(int n, int s_max) {
    if (n < 1 || s_max < 1)
        throw std::invalid_argument("block_sizes: n and s_max must be >= 1");
    const int s = std::min(n, s_max);
    std::vector<int> sizes(static_cast<std::size_t>((n + s - 1) / s), s);
    if (n % s != 0) sizes.back() = n % s;
    return sizes;
}

// Orthogonal block-diagonal matrix. Immutable once generated; blocks are
// stored row-major, storage is sum(s_i^2) reals.
class BlockDiagonalMatrix {
public:
    BlockDiagonalMatrix(int n, std::vector<int> sizes,
                        std::vector<std::vector<double>> blocks)
        : n_(n), sizes_(std::move(sizes)), blocks_(std::move(blocks)) {
        if (std::accumulate(sizes_.begin(), sizes_.end(), 0) != n_)
            throw std::invalid_argument("block sizes must sum to n");
    }

    int dimension() const { return n_; }
    int block_count() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    int largest_block() const {
        return *std::max_element(sizes_.begin(), sizes_.end());
    }

    // Row-major s_i x s_i entries of block i.
    const std::vector<double>& block(int i) const {
        return blocks_[static_cast<std::size_t>(i)];
    }

    std::size_t storage_reals() const {
        std::size_t t = 0;
        for (int s : sizes_) t += static_cast<std::size_t>(s) * s;
        return t;
    }

    // Exactly sum(s_i^2) multiply-adds per application.
    std::size_t multiply_add_count() const { return storage_reals(); }

    std::vector<double> apply(std::span<const double> x) const {
        return apply_impl(x, false);
    }

    // B is orthogonal, so this is also the inverse.
    std::vector<double> apply_transpose(std::span<const double> x) const {
        return apply_impl(x, true);
    }

    // max |B B^T - I| over all blocks.
    double orthogonality_error() const {
        double worst = 0.0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const int s = sizes_[b];
            const auto& m = blocks_[b];
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) {
                    double dot = 0.0;
                    for (int k = 0; k < s; ++k)
                        dot += m[static_cast<std::size_t>(i) * s + k] *
                               m[static_cast<std::size_t>(j) * s + k];
                    worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
        }
        return worst;
    }

private:
    std::vector<double> apply_impl(std::span<const double> x,
                                   bool transpose) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("BlockDiagonalMatrix: dimension mismatch");
        std::vector<double> y(x.size());
        int offset = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const int s = sizes_[b];
            const auto& m = blocks_[b];
            for (int i = 0; i < s; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) {
                    const double mij = transpose
                                           ? m[static_cast<std::size_t>(j) * s + i]
                                           : m[static_cast<std::size_t>(i) * s + j];
                    acc += mij * x[static_cast<std::size_t>(offset + j)];
                }
                y[static_cast<std::size_t>(offset + i)] = acc;
            }
            offset += s;
        }
        return y;
    }

    int n_;
    std::vector<int> sizes_;
    std::vector<std::vector<double>> blocks_;
};

// Each block: i.i.d. standard normal entries, rows orthonormalized by
// modified Gram-Schmidt with one re-orthogonalization pass. A row collapsing
// below 1e-12 regenerates the block from fresh draws.
inline BlockDiagonalMatrix generate_block_diagonal(RngState& rng, int n,
                                                   int s_max) {
    auto sizes = block_sizes(n, s_max);
    std::vector<std::vector<double>> blocks;
    blocks.reserve(sizes.size());
    for (int s : sizes) {
        const std::size_t ss = static_cast<std::size_t>(s);
        std::vector<double> m(ss * ss);
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            for (auto& e : m) e = rng.next_gaussian();
            ok = true;
            for (int r = 0; r < s && ok; ++r) {
                double* row = &m[static_cast<std::size_t>(r) * ss];
                for (int pass = 0; pass < 2; ++pass) {
                    for (int q = 0; q < r; ++q) {
                        const double* prev = &m[static_cast<std::size_t>(q) * ss];
                        double proj = 0.0;
                        for (int j = 0; j < s; ++j) proj += row[j] * prev[j];
                        for (int j = 0; j < s; ++j) row[j] -= proj * prev[j];
                    }
                }
                double norm2 = 0.0;
                for (int j = 0; j < s; ++j) norm2 += row[j] * row[j];
                const double norm = std::sqrt(norm2);
                if (norm < 1e-12) {
                    ok = false;
                    break;
                }
                for (int j = 0; j < s; ++j) row[j] /= norm;
            }
        }
        if (!ok)
            throw std::runtime_error(
                "generate_block_diagonal: degenerate generation");
        blocks.push_back(std::move(m));
    }
    return BlockDiagonalMatrix(n, std::move(sizes), std::move(blocks));
}

// Bijection on {0..n-1}. Application uses the gather convention:
// y[i] = x[forward[i]].
class Permutation {
public:
    explicit Permutation(std::vector<int> forward)
        : forward_(std::move(forward)) {}

    static Permutation identity(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        return Permutation(std::move(p));
    }

    int dimension() const { return static_cast<int>(forward_.size()); }
    const std::vector<int>& forward() const { return forward_; }
    int operator[](int i) const { return forward_[static_cast<std::size_t>(i)]; }

    bool is_valid() const {
        std::vector<char> seen(forward_.size(), 0);
        for (int v : forward_) {
            if (v < 0 || v >= dimension() || seen[static_cast<std::size_t>(v)])
                return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return true;
    }

    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != forward_.size())
            throw std::invalid_argument("Permutation: dimension mismatch");
        std::vector<double> y(x.size());
        for (std::size_t i = 0; i < forward_.size(); ++i)
            y[i] = x[static_cast<std::size_t>(forward_[i])];
        return y;
    }

    Permutation inverse() const {
        std::vector<int> inv(forward_.size());
        for (std::size_t i = 0; i < forward_.size(); ++i)
            inv[static_cast<std::size_t>(forward_[i])] = static_cast<int>(i);
        return Permutation(std::move(inv));
    }

private:
    std::vector<int> forward_;
};

inline std::vector<double> apply_permutation(const Permutation& p,
                                             std::span<const double> x) {
    return p.apply(x);
}

struct SwapParams {
    int n_swaps = 0;
    int swap_range = 0;
};

// Uniform shuffle (Fisher-Yates) driven by uniform_int.
inline Permutation random_permutation(RngState& rng, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int k = n - 1; k >= 1; --k) {
        const int j = static_cast<int>(rng.uniform_int(0, k));
        std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(j)]);
    }
    return Permutation(std::move(p));
}

// Second index of a truncated uniform swap with first index i (0-based):
// uniform over {max(0, i-r_s) .. min(n-1, i+r_s)} \ {i}, or nullopt when that
// set is empty (n == 1 or r_s == 0).
inline std::optional<int> second_swap_index(RngState& rng, int n, int i,
                                            int r_s) {
    const int lb = std::max(0, i - r_s);
    const int ub = std::min(n - 1, i + r_s);
    const int count = ub - lb;  // set size excluding i
    if (count <= 0) return std::nullopt;
    int j = lb + static_cast<int>(rng.uniform_int(0, count - 1));
    if (j >= i) ++j;
    return j;
}

// Truncated uniform swaps: start from the identity, draw a uniform order pi,
// then for k = 1..n_swaps swap position i = pi(k) with a partner drawn
// uniformly within distance swap_range of i. One stream feeds pi first, then
// the swap draws.
inline Permutation truncated_uniform_swaps(RngState& rng, int n,
                                           const SwapParams& params) {
    if (n < 1) throw std::invalid_argument("truncated_uniform_swaps: n < 1");
    if (params.n_swaps < 0 || params.swap_range < 0)
        throw std::invalid_argument("truncated_uniform_swaps: negative params");
    if (params.n_swaps > n)
        throw std::invalid_argument("truncated_uniform_swaps: n_swaps > n");
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    const Permutation order = random_permutation(rng, n);
    for (int k = 0; k < params.n_swaps; ++k) {
        const int i = order[k];
        const auto j = second_swap_index(rng, n, i, params.swap_range);
        if (!j) continue;
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(*j)]);
    }
    return Permutation(std::move(p));
}

struct SwapDistanceStats {
    std::int64_t executed_swaps = 0;
    double mean_distance = 0.0;
    std::int64_t max_distance = 0;
};

// Monte-Carlo |i - j| statistics over executed swaps. With pinned_first set,
// each sample is a single swap at that fixed first index; otherwise each
// sample is a full truncated_uniform_swaps run and all its swaps count.
inline SwapDistanceStats swap_distance_stats(
    RngState& rng, std::int64_t samples, int n, const SwapParams& params,
    std::optional<int> pinned_first = std::nullopt) {
    SwapDistanceStats stats;
    double total = 0.0;
    for (std::int64_t t = 0; t < samples; ++t) {
        if (pinned_first) {
            const auto j = second_swap_index(rng, n, *pinned_first,
                                             params.swap_range);
            if (!j) continue;
            const std::int64_t d = std::abs(*pinned_first - *j);
            total += static_cast<double>(d);
            stats.max_distance = std::max(stats.max_distance, d);
            ++stats.executed_swaps;
        } else {
            const Permutation order = random_permutation(rng, n);
            for (int k = 0; k < params.n_swaps; ++k) {
                const int i = order[k];
                const auto j = second_swap_index(rng, n, i, params.swap_range);
                if (!j) continue;
                const std::int64_t d = std::abs(i - *j);
                total += static_cast<double>(d);
                stats.max_distance = std::max(stats.max_distance, d);
                ++stats.executed_swaps;
            }
        }
    }
    if (stats.executed_swaps > 0)
        stats.mean_distance = total / static_cast<double>(stats.executed_swaps);
    return stats;
}

// Dense materializations for small-n cross-checks. The gather convention
// makes row i of a permutation matrix carry its 1 in column forward[i].
inline std::vector<std::vector<double>> materialize(const Permutation& p) {
    const int n = p.dimension();
    std::vector<std::vector<double>> m(
        static_cast<std::size_t>(n),
        std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[i])] = 1.0;
    return m;
}

inline std::vector<std::vector<double>> materialize(
    const BlockDiagonalMatrix& b) {
    const int n = b.dimension();
    std::vector<std::vector<double>> m(
        static_cast<std::size_t>(n),
        std::vector<double>(static_cast<std::size_t>(n), 0.0));
    int offset = 0;
    for (int blk = 0; blk < b.block_count(); ++blk) {
        const int s = b.sizes()[static_cast<std::size_t>(blk)];
        const auto& data = b.block(blk);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                m[static_cast<std::size_t>(offset + i)]
                 [static_cast<std::size_t>(offset + j)] =
                     data[static_cast<std::size_t>(i) * s + j];
        offset += s;
    }
    return m;
}

}  // namespace bbls
