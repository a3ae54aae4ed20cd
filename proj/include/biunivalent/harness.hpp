#ifndef BIUNIVALENT_HARNESS_HPP
#define BIUNIVALENT_HARNESS_HPP

// Randomized falsification campaigns and derivative-free extremal search.
//
// A campaign draws Caratheodory elements p, induces the coefficients a2, a3
// and the matching q through the f- and g-side coefficient relations, keeps
// tuples whose q prefix is admissible, and compares |a2|, |a3| with the
// closed-form bounds. The bounds follow from |p_k|, |q_k| <= 2 alone, so any
// admissible tuple exceeding a bound is a genuine counterexample to the
// implemented relations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include <biunivalent/bounds.hpp>
#include <biunivalent/caratheodory.hpp>
#include <biunivalent/operator.hpp>
#include <biunivalent/random.hpp>

namespace biuni
{

using FamilyParams = std::variant<AlphaParams, BetaParams>;

inline std::string_view family_name(const FamilyParams &params)
{
    return std::holds_alternative<AlphaParams>(params) ? "alpha" : "beta";
}

inline BoundReport family_bounds(const FamilyParams &params)
{
    return std::visit(
        [](const auto &p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, AlphaParams>) {
                return bounds_alpha(p);
            } else {
                return bounds_beta(p);
            }
        },
        params);
}

// alpha or beta.
inline double family_level(const FamilyParams &params)
{
    if (const auto *a = std::get_if<AlphaParams>(&params)) {
        return a->alpha();
    }
    return std::get<BetaParams>(params).beta();
}

inline double family_lambda(const FamilyParams &params)
{
    return std::visit([](const auto &p) { return p.lambda(); }, params);
}

inline double family_mu(const FamilyParams &params)
{
    return std::visit([](const auto &p) { return p.mu(); }, params);
}

inline constexpr double violation_tolerance = 1e-9;

struct CampaignRecord {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    CoefficientTuple tuple{};
    bool admissible = false;
    // Verdict of the prefix filter on the induced (q1, q2).
    AdmissibilityVerdict filter_verdict = AdmissibilityVerdict::pass;
    double a2_abs = 0;
    double a3_abs = 0;
    double a2_margin = 0;
    double a3_margin = 0;

    bool violates() const noexcept
    {
        return admissible && (a2_margin < -violation_tolerance || a3_margin < -violation_tolerance);
    }
};

// Evaluates one p prefix against the bounds. The achieved |a2| and |a3| are
// the largest over every route the coefficient relations offer (forward
// solve and each lifting formula), which can only make violations easier to
// detect.
inline CampaignRecord evaluate_prefix(complex p1, complex p2, const FamilyParams &params, const BoundReport &bounds,
                                      AdmissibilityFilter filter)
{
    CampaignRecord rec;
    InducedCoefficients ind{};
    if (const auto *a = std::get_if<AlphaParams>(&params)) {
        ind = induce_q_alpha(p1, p2, *a);
        rec.tuple = {p1, p2, ind.q1, ind.q2};
        const auto lift = lift_alpha(rec.tuple, *a);
        rec.a2_abs = std::max(std::abs(ind.a2), std::sqrt(std::abs(lift.a2_squared)));
        rec.a3_abs = std::max(std::abs(ind.a3), std::abs(lift.a3));
    } else {
        const auto &b = std::get<BetaParams>(params);
        ind = induce_q_beta(p1, p2, b);
        rec.tuple = {p1, p2, ind.q1, ind.q2};
        const auto lift = lift_beta(rec.tuple, b);
        rec.a2_abs = std::max({std::abs(ind.a2), std::sqrt(std::abs(lift.a2sq_from_p1q1)),
                               std::sqrt(std::abs(lift.a2sq_from_p2q2))});
        rec.a3_abs = std::max({std::abs(ind.a3), std::abs(lift.a3_from_p1q1), std::abs(lift.a3_from_p2q2)});
    }
    const std::array<complex, 2> q{ind.q1, ind.q2};
    rec.filter_verdict = is_admissible_prefix(q, filter);
    rec.admissible = rec.filter_verdict == AdmissibilityVerdict::pass;
    rec.a2_margin = bounds.a2_bound - rec.a2_abs;
    rec.a3_margin = bounds.a3_bound - rec.a3_abs;
    return rec;
}

struct CampaignConfig {
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 0;
    std::size_t atoms = 3;
    AdmissibilityFilter filter = AdmissibilityFilter::toeplitz;
    // 0 selects std::thread::hardware_concurrency().
    unsigned threads = 1;
    bool keep_records = false;
};

inline constexpr std::size_t margin_histogram_bins = 20;

struct CampaignSummary {
    FamilyParams params;
    CampaignConfig config;
    BoundReport bounds{};
    std::uint64_t n_admissible = 0;
    std::uint64_t n_filtered_modulus = 0;
    std::uint64_t n_filtered_toeplitz = 0;
    std::vector<CampaignRecord> violations;
    double max_a2 = 0;
    double max_a3 = 0;
    double min_a2_margin = std::numeric_limits<double>::infinity();
    double min_a3_margin = std::numeric_limits<double>::infinity();
    // Admissible records binned by margin / bound on [0, 1]; bin 0 is
    // closest to the bound. Negative margins land in bin 0.
    std::array<std::uint64_t, margin_histogram_bins> a2_margin_histogram{};
    std::array<std::uint64_t, margin_histogram_bins> a3_margin_histogram{};
    // Every record in index order, when requested.
    std::vector<CampaignRecord> records;
};

namespace detail
{

inline std::size_t margin_bin(double margin, double bound)
{
    if (!(bound > 0) || !(margin > 0)) {
        return 0;
    }
    const auto b = static_cast<std::size_t>(margin / bound * margin_histogram_bins);
    return std::min(b, margin_histogram_bins - 1);
}

inline CampaignRecord campaign_sample(std::uint64_t index, const FamilyParams &params, const BoundReport &bounds,
                                      const CampaignConfig &cfg)
{
    const auto seed = derive_seed(cfg.seed, index);
    const auto p = sample_random(seed, cfg.atoms, 2);
    auto rec = evaluate_prefix(p.coeff(1), p.coeff(2), params, bounds, cfg.filter);
    rec.index = index;
    rec.seed = seed;
    return rec;
}

} // namespace detail

inline CampaignSummary falsify(const FamilyParams &params, const CampaignConfig &cfg)
{
    if (cfg.n_samples < 1) {
        throw std::invalid_argument("falsify: n_samples must be at least 1");
    }
    CampaignSummary sum{.params = params, .config = cfg, .bounds = family_bounds(params), .violations = {}, .records = {}};
    const auto n = cfg.n_samples;
    std::vector<CampaignRecord> records(n);

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
    const auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (auto i = begin; i < end; ++i) {
            records[i] = detail::campaign_sample(i, params, sum.bounds, cfg);
        }
    };
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const auto chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const auto begin = std::min<std::uint64_t>(n, t * chunk);
            const auto end = std::min<std::uint64_t>(n, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }

    for (const auto &rec : records) {
        switch (rec.filter_verdict) {
            case AdmissibilityVerdict::pass:
                ++sum.n_admissible;
                break;
            case AdmissibilityVerdict::fail_modulus:
                ++sum.n_filtered_modulus;
                continue;
            case AdmissibilityVerdict::fail_toeplitz:
                ++sum.n_filtered_toeplitz;
                continue;
        }
        sum.max_a2 = std::max(sum.max_a2, rec.a2_abs);
        sum.max_a3 = std::max(sum.max_a3, rec.a3_abs);
        sum.min_a2_margin = std::min(sum.min_a2_margin, rec.a2_margin);
        sum.min_a3_margin = std::min(sum.min_a3_margin, rec.a3_margin);
        ++sum.a2_margin_histogram[detail::margin_bin(rec.a2_margin, sum.bounds.a2_bound)];
        ++sum.a3_margin_histogram[detail::margin_bin(rec.a3_margin, sum.bounds.a3_bound)];
        if (rec.violates()) {
            sum.violations.push_back(rec);
        }
    }
    if (cfg.keep_records) {
        sum.records = std::move(records);
    }
    return sum;
}

inline constexpr std::string_view campaign_csv_header
    = "index,seed,family,level,lambda,mu,p1_re,p1_im,p2_re,p2_im,q1_re,q1_im,q2_re,q2_im,"
      "admissible,filter_verdict,a2_abs,a3_abs,a2_bound,a3_bound,a2_margin,a3_margin";

// One row per record in index order. Shortest round-trip decimal formatting,
// '.' as the decimal separator regardless of locale.
inline void write_campaign_csv(std::ostream &os, const CampaignSummary &sum)
{
    os << campaign_csv_header << '\n';
    const auto fam = family_name(sum.params);
    const auto level = family_level(sum.params);
    const auto lambda = family_lambda(sum.params);
    const auto mu = family_mu(sum.params);
    for (const auto &r : sum.records) {
        os << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.index, r.seed, fam,
                          level, lambda, mu, r.tuple.p1.real(), r.tuple.p1.imag(), r.tuple.p2.real(),
                          r.tuple.p2.imag(), r.tuple.q1.real(), r.tuple.q1.imag(), r.tuple.q2.real(),
                          r.tuple.q2.imag(), r.admissible ? 1 : 0, to_string(r.filter_verdict), r.a2_abs, r.a3_abs,
                          sum.bounds.a2_bound, sum.bounds.a3_bound, r.a2_margin, r.a3_margin);
    }
}

enum class Objective { a2, a3 };

struct ExtremalConfig {
    Objective objective = Objective::a2;
    std::uint64_t budget = 10000;
    std::uint64_t seed = 0;
    std::size_t atoms = 3;
    AdmissibilityFilter filter = AdmissibilityFilter::toeplitz;
    // Evaluations allowed per start before restarting.
    std::uint64_t local_budget = 2000;
    double initial_step = 0.5;
    double min_step = 1e-9;
};

struct EmpiricalExtremum {
    CoefficientTuple best_tuple{};
    std::vector<HerglotzAtom> best_atoms;
    // False when no evaluated point had an admissible induced q; achieved is
    // then 0 and best_tuple is the first evaluated point.
    bool feasible = false;
    double achieved = 0;
    double bound = 0;
    double gap = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t starts = 0;
};

namespace detail
{

// Weights are a softmax of the first m coordinates; the last m are angles.
inline std::vector<HerglotzAtom> decode_atoms(const std::vector<double> &x)
{
    const auto m = x.size() / 2;
    const double top = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<HerglotzAtom> atoms(m);
    double total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        atoms[i].weight = std::exp(x[i] - top);
        total += atoms[i].weight;
    }
    for (std::size_t i = 0; i < m; ++i) {
        atoms[i].weight /= total;
        atoms[i].angle = std::remainder(x[m + i], 2 * std::numbers::pi);
        if (atoms[i].angle < 0) {
            atoms[i].angle += 2 * std::numbers::pi;
        }
    }
    return atoms;
}

} // namespace detail

// Multi-start coordinate search over Herglotz atom parameters for the largest
// |a2| or |a3| with an admissible induced q. The sequence of evaluated points
// does not depend on the budget, so the result is nondecreasing in budget for
// a fixed seed.
inline EmpiricalExtremum extremal_search(const FamilyParams &params, const ExtremalConfig &cfg)
{
    if (cfg.budget < 1) {
        throw std::invalid_argument("extremal_search: budget must be at least 1");
    }
    const auto bounds = family_bounds(params);
    EmpiricalExtremum best;
    best.bound = cfg.objective == Objective::a2 ? bounds.a2_bound : bounds.a3_bound;

    constexpr double infeasible = -std::numeric_limits<double>::infinity();
    auto evaluate = [&](const std::vector<double> &x) {
        auto atoms = detail::decode_atoms(x);
        // Rounding can leave the weights a few ulps off 1; herglotz only
        // tolerates 1e-12, far above that.
        const auto p = herglotz(atoms, 2);
        const auto rec = evaluate_prefix(p.coeff(1), p.coeff(2), params, bounds, cfg.filter);
        ++best.evaluations;
        const double value = rec.admissible ? (cfg.objective == Objective::a2 ? rec.a2_abs : rec.a3_abs) : infeasible;
        const bool first = best.evaluations == 1;
        if (first || (value > infeasible && (!best.feasible || value > best.achieved))) {
            best.best_tuple = rec.tuple;
            best.best_atoms = std::move(atoms);
            if (value > infeasible) {
                best.feasible = true;
                best.achieved = value;
            }
        }
        return value;
    };

    const auto m = cfg.atoms;
    while (best.evaluations < cfg.budget) {
        const auto init = random_atoms(derive_seed(cfg.seed, best.starts), m);
        ++best.starts;
        std::vector<double> x(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = std::log(init[i].weight);
            x[m + i] = init[i].angle;
        }
        const auto local_start = best.evaluations;
        double fx = evaluate(x);
        double step = cfg.initial_step;
        auto exhausted = [&] {
            return best.evaluations >= cfg.budget || best.evaluations - local_start >= cfg.local_budget;
        };
        while (step >= cfg.min_step && !exhausted()) {
            bool improved = false;
            for (std::size_t i = 0; i < x.size() && !exhausted(); ++i) {
                for (double dir : {1.0, -1.0}) {
                    if (exhausted()) {
                        break;
                    }
                    auto y = x;
                    y[i] += dir * step;
                    const double fy = evaluate(y);
                    if (fy > fx) {
                        x = std::move(y);
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
            }
        }
    }
    best.gap = best.bound - best.achieved;
    return best;
}

} // namespace biuni

#endif
