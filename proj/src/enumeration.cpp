#include "graphlim/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "graphlim/cutnorm.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/functionals.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/parallel.hpp"

namespace graphlim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void kahan_add(double& sum, double& comp, double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

// Streaming log-sum-exp with a running maximum, plus companion sums for
// the conditional triangle mean and the far-mass indicator, all on the
// same scale.
struct LseAcc {
    double m = kNegInf;
    double sum = 0, sum_c = 0;
    double tri = 0, tri_c = 0;
    double far = 0, far_c = 0;
    std::uint64_t count = 0;

    void rescale_to(double new_m) {
        if (m == kNegInf) {
            m = new_m;
            return;
        }
        const double r = std::exp(m - new_m);
        sum *= r;
        sum_c *= r;
        tri *= r;
        tri_c *= r;
        far *= r;
        far_c *= r;
        m = new_m;
    }

    void add(double x, double t_tri, double far_flag) {
        if (x > m) rescale_to(x);
        const double w = std::exp(x - m);
        kahan_add(sum, sum_c, w);
        kahan_add(tri, tri_c, t_tri * w);
        if (far_flag != 0.0) kahan_add(far, far_c, w);
        ++count;
    }

    void absorb(const LseAcc& other) {  // ordered combine
        if (other.count == 0) return;
        if (other.m > m) rescale_to(other.m);
        const double r = std::exp(other.m - m);
        kahan_add(sum, sum_c, (other.sum + other.sum_c) * r);
        kahan_add(tri, tri_c, (other.tri + other.tri_c) * r);
        kahan_add(far, far_c, (other.far + other.far_c) * r);
        count += other.count;
    }
};

struct ConcCtx {
    int k = 0;
    std::vector<int> vert;     // equal-mass block -> vertex index
    std::vector<double> bref;  // flattened reference values on those blocks
    double eta = 0;
};

struct ScanSetup {
    int n;
    double beta1, beta2;
    bool shell = false;
    double e = 0, alpha = 0;
    const ConcCtx* conc = nullptr;
};

LseAcc scan_all_masks(const ScanSetup& s) {
    const int n = s.n;
    const int slots = n * (n - 1) / 2;
    const std::uint64_t total = 1ull << slots;
    int pi[28], pj[28];
    {
        int p = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                pi[p] = i;
                pj[p] = j;
                ++p;
            }
    }

    const int n_ranges = static_cast<int>(std::min<std::uint64_t>(64, total));
    std::vector<LseAcc> accs(n_ranges);
    parallel_ranges(total, n_ranges, [&](int range, std::uint64_t lo, std::uint64_t hi) {
        LseAcc acc;
        std::vector<double> fa;
        if (s.conc) fa.resize(static_cast<size_t>(s.conc->k) * s.conc->k);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            const int e_cnt = std::popcount(mask);
            // Robust strict shell test: exact boundary graphs are excluded.
            if (s.shell &&
                !(std::fabs(2.0 * e_cnt - s.e * n * n) < s.alpha * n * n - 1e-9))
                continue;
            std::uint32_t rows[8] = {0, 0, 0, 0, 0, 0, 0, 0};
            std::uint64_t mm = mask;
            while (mm) {
                const int idx = std::countr_zero(mm);
                mm &= mm - 1;
                rows[pi[idx]] |= 1u << pj[idx];
                rows[pj[idx]] |= 1u << pi[idx];
            }
            int tri3 = 0;
            mm = mask;
            while (mm) {
                const int idx = std::countr_zero(mm);
                mm &= mm - 1;
                tri3 += std::popcount(rows[pi[idx]] & rows[pj[idx]]);
            }
            const int t_cnt = tri3 / 3;
            const double x = 2.0 * s.beta1 * e_cnt + 6.0 * s.beta2 * t_cnt / n;
            const double t_tri = 6.0 * t_cnt / (static_cast<double>(n) * n * n);
            double far_flag = 0;
            if (s.conc) {
                const int k = s.conc->k;
                for (int q1 = 0; q1 < k; ++q1)
                    for (int q2 = 0; q2 < k; ++q2)
                        fa[static_cast<size_t>(q1) * k + q2] =
                            (rows[s.conc->vert[q1]] >> s.conc->vert[q2]) & 1u ? 1.0 : 0.0;
                const double d = detail::cut_distance_equal_blocks(
                    k, fa.data(), s.conc->bref.data());
                if (d >= s.conc->eta) far_flag = 1;
            }
            acc.add(x, t_tri, far_flag);
        }
        accs[range] = acc;
    });

    LseAcc out;
    for (const LseAcc& a : accs) out.absorb(a);
    return out;
}

void validate_common(const EnumSpec& spec) {
    if (spec.n < 2) throw DomainError("enumeration: n must be at least 2");
    if (spec.n > 8) throw SizeError("enumeration: n is capped at 8");
    if (spec.alpha && !spec.e_target)
        throw DomainError("enumeration: alpha requires e_target");
    if (spec.e_target && !(*spec.e_target >= 0.0 && *spec.e_target <= 1.0))
        throw DomainError("enumeration: e_target must lie in [0,1]");
    if (spec.alpha && !(*spec.alpha > 0.0))
        throw DomainError("enumeration: alpha must be positive");
}

EnumResult finish(const EnumSpec& spec, const LseAcc& acc) {
    if (acc.count == 0)
        throw EmptyShellError(
            "enumeration: no graph has edge density within alpha of e");
    EnumResult res;
    res.graph_count = acc.count;
    res.total_graphs = 1ull << (spec.n * (spec.n - 1) / 2);
    res.log_partition = acc.m + std::log(acc.sum + acc.sum_c);
    res.psi = res.log_partition / (spec.n * spec.n);
    return res;
}

}  // namespace

EnumResult exact_psi(const EnumSpec& spec) {
    validate_common(spec);
    if (spec.e_target || spec.alpha)
        throw DomainError("exact_psi: constraint fields set; use exact_conditional_psi");
    ScanSetup s{spec.n, spec.beta1, spec.beta2};
    return finish(spec, scan_all_masks(s));
}

EnumResult exact_conditional_psi(const EnumSpec& spec) {
    validate_common(spec);
    if (!spec.e_target || !spec.alpha)
        throw DomainError("exact_conditional_psi: e_target and alpha are required");
    ScanSetup s{spec.n, spec.beta1, spec.beta2, true, *spec.e_target, *spec.alpha};
    return finish(spec, scan_all_masks(s));
}

ConcentrationResult conditional_concentration(const EnumSpec& spec,
                                              const StepGraphon& reference,
                                              double eta) {
    validate_common(spec);
    if (spec.n > 7) throw SizeError("conditional_concentration: n is capped at 7");
    if (!spec.e_target || !spec.alpha)
        throw DomainError("conditional_concentration: e_target and alpha are required");
    if (!(eta > 0)) throw DomainError("conditional_concentration: eta must be positive");
    reference.validate();

    // Refine the n equal vertex blocks against the reference partition once.
    ConcCtx ctx;
    ctx.eta = eta;
    StepGraphon blocks = graph_to_graphon(SimpleGraph::empty(spec.n));
    Refinement r = common_refinement(blocks, reference);
    detail::EqualBlocks eb = detail::equal_mass_blocks(r.weights);
    ctx.k = eb.k;
    ctx.vert.resize(eb.k);
    ctx.bref.resize(static_cast<size_t>(eb.k) * eb.k);
    for (int q = 0; q < eb.k; ++q) ctx.vert[q] = r.idx_a[eb.src[q]];
    for (int q1 = 0; q1 < eb.k; ++q1)
        for (int q2 = 0; q2 < eb.k; ++q2)
            ctx.bref[static_cast<size_t>(q1) * eb.k + q2] =
                reference.values[r.idx_b[eb.src[q1]]][r.idx_b[eb.src[q2]]];

    ScanSetup s{spec.n, spec.beta1, spec.beta2, true, *spec.e_target, *spec.alpha, &ctx};
    LseAcc acc = scan_all_masks(s);
    if (acc.count == 0)
        throw EmptyShellError(
            "enumeration: no graph has edge density within alpha of e");
    const double z = acc.sum + acc.sum_c;
    return ConcentrationResult{(acc.far + acc.far_c) / z, (acc.tri + acc.tri_c) / z};
}

}  // namespace graphlim
