#include "graphlim/cutnorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace detail {

double cut_norm_core(int k, const double* w, const double* d) {
    if (k > 16) throw SizeError("cut_norm: refined partition exceeds 16 blocks");
    // The box integral over S x T is bilinear in block-membership
    // indicators, so the supremum is attained with every block fully in or
    // out. For a fixed S the best T keeps either the positive or the
    // negative column sums. Fixed ascending scan order keeps the result
    // deterministic.
    double best = 0;
    std::vector<double> col(k);
    for (std::uint32_t s = 1; s < (1u << k); ++s) {
        std::fill(col.begin(), col.end(), 0.0);
        for (int i = 0; i < k; ++i) {
            if (!((s >> i) & 1u)) continue;
            const double wi = w[i];
            const double* row = d + static_cast<size_t>(i) * k;
            for (int j = 0; j < k; ++j) col[j] += wi * w[j] * row[j];
        }
        double pos = 0, neg = 0;
        for (int j = 0; j < k; ++j) {
            if (col[j] > 0)
                pos += col[j];
            else
                neg += col[j];
        }
        best = std::max(best, std::max(pos, std::fabs(neg)));
    }
    return best;
}

double cut_distance_equal_blocks(int k, const double* a, const double* b) {
    std::vector<double> w(k, 1.0 / k);
    std::vector<double> d(static_cast<size_t>(k) * k);

    auto is_const = [k](const double* m) {
        for (int i = 1; i < k * k; ++i)
            if (m[i] != m[0]) return false;
        return true;
    };
    // A constant side makes the cut norm invariant under block relabeling.
    if (is_const(a) || is_const(b)) {
        for (int i = 0; i < k * k; ++i) d[i] = a[i] - b[i];
        return cut_norm_core(k, w.data(), d.data());
    }

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1;
    do {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                d[static_cast<size_t>(i) * k + j] =
                    a[static_cast<size_t>(perm[i]) * k + perm[j]] -
                    b[static_cast<size_t>(i) * k + j];
        const double v = cut_norm_core(k, w.data(), d.data());
        if (best < 0 || v < best) best = v;
        if (best == 0.0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

EqualBlocks equal_mass_blocks(const std::vector<double>& weights) {
    const int n = static_cast<int>(weights.size());
    for (int cand = 1; cand <= 9; ++cand) {
        std::vector<int> m(n);
        long total = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const double x = weights[i] * cand;
            m[i] = static_cast<int>(std::llround(x));
            if (std::fabs(x - m[i]) > 1e-9) {
                ok = false;
                break;
            }
            total += m[i];
        }
        if (ok && total == cand) {
            EqualBlocks eb;
            eb.k = cand;
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < m[i]; ++c) eb.src.push_back(i);
            return eb;
        }
    }
    throw SizeError("cut_distance_upper: no common equal-mass refinement with <= 9 blocks");
}

}  // namespace detail

double cut_norm(const StepGraphon& a, const StepGraphon& b) {
    a.validate();
    b.validate();
    Refinement r = common_refinement(a, b);
    const int k = static_cast<int>(r.weights.size());
    if (k > 16) throw SizeError("cut_norm: refined partition exceeds 16 blocks");
    std::vector<double> d(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            d[static_cast<size_t>(i) * k + j] =
                a.values[r.idx_a[i]][r.idx_a[j]] - b.values[r.idx_b[i]][r.idx_b[j]];
    return detail::cut_norm_core(k, r.weights.data(), d.data());
}

double cut_distance_upper(const StepGraphon& a, const StepGraphon& b) {
    a.validate();
    b.validate();
    Refinement r = common_refinement(a, b);
    detail::EqualBlocks eb = detail::equal_mass_blocks(r.weights);
    const int k = eb.k;
    std::vector<double> fa(static_cast<size_t>(k) * k), fb(fa.size());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            fa[static_cast<size_t>(i) * k + j] =
                a.values[r.idx_a[eb.src[i]]][r.idx_a[eb.src[j]]];
            fb[static_cast<size_t>(i) * k + j] =
                b.values[r.idx_b[eb.src[i]]][r.idx_b[eb.src[j]]];
        }
    return detail::cut_distance_equal_blocks(k, fa.data(), fb.data());
}

}  // namespace graphlim
