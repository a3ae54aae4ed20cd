#ifndef BIUNIVALENT_OPERATOR_HPP
#define BIUNIVALENT_OPERATOR_HPP

// The class operator
//
//     L[f](z) = (1 - lambda) (f(z)/z)^mu + lambda f'(z) (f(z)/z)^(mu - 1),
//
// grid membership tests for the arg-condition (alpha) and real-part
// condition (beta) classes, and the coefficient relations that tie the first
// two coefficients of L[f] and L[g], g = f^{-1}, to Caratheodory elements p, q.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <biunivalent/series.hpp>

namespace biuni
{

// Parameters (alpha, lambda, mu) with 0 < alpha <= 1, lambda >= 1, mu >= 0.
class AlphaParams
{
public:
    AlphaParams(double alpha, double lambda, double mu) : m_alpha(alpha), m_lambda(lambda), m_mu(mu)
    {
        if (!(alpha > 0 && alpha <= 1)) {
            throw std::invalid_argument("AlphaParams: alpha must lie in (0, 1]");
        }
        if (!(lambda >= 1 && std::isfinite(lambda))) {
            throw std::invalid_argument("AlphaParams: lambda must be finite and >= 1");
        }
        if (!(mu >= 0 && std::isfinite(mu))) {
            throw std::invalid_argument("AlphaParams: mu must be finite and >= 0");
        }
    }

    double alpha() const noexcept { return m_alpha; }
    double lambda() const noexcept { return m_lambda; }
    double mu() const noexcept { return m_mu; }

private:
    double m_alpha, m_lambda, m_mu;
};

// Parameters (beta, lambda, mu) with 0 <= beta < 1, lambda >= 1, mu >= 0.
class BetaParams
{
public:
    BetaParams(double beta, double lambda, double mu) : m_beta(beta), m_lambda(lambda), m_mu(mu)
    {
        if (!(beta >= 0 && beta < 1)) {
            throw std::invalid_argument("BetaParams: beta must lie in [0, 1)");
        }
        if (!(lambda >= 1 && std::isfinite(lambda))) {
            throw std::invalid_argument("BetaParams: lambda must be finite and >= 1");
        }
        if (!(mu >= 0 && std::isfinite(mu))) {
            throw std::invalid_argument("BetaParams: mu must be finite and >= 0");
        }
    }

    double beta() const noexcept { return m_beta; }
    double lambda() const noexcept { return m_lambda; }
    double mu() const noexcept { return m_mu; }

private:
    double m_beta, m_lambda, m_mu;
};

// First two coefficients of p and q.
struct CoefficientTuple {
    complex p1, p2, q1, q2;
};

// L[f] through order min(order, f.order - 1); coefficients of L[f] past
// f.order - 1 depend on unknown coefficients of f. Constant term is exactly 1.
inline TruncatedSeries apply_operator(const NormalizedFunction &f, double lambda, double mu,
                                      std::size_t order = default_order)
{
    const auto n = std::min(order, f.order() - 1);
    const auto ratio = f.series().shifted_down().truncated(n);
    const auto df = derivative(f.series()).truncated(n);
    auto out = complex{1.0 - lambda} * pow_real(ratio, mu) + complex{lambda} * (df * pow_real(ratio, mu - 1.0));
    std::vector<complex> c(out.coeffs().begin(), out.coeffs().end());
    c[0] = 1;
    return TruncatedSeries(std::move(c));
}

// Coefficients 1 and 2 of L[f] in closed form:
//   l1 = (lambda + mu) a2
//   l2 = (2 lambda + mu) a3 + (mu - 1)(lambda + mu/2) a2^2
inline std::pair<complex, complex> operator_coeffs_closed(complex a2, complex a3, double lambda, double mu)
{
    return {(lambda + mu) * a2, (2 * lambda + mu) * a3 + (mu - 1) * (lambda + mu / 2) * a2 * a2};
}

struct MembershipGrid {
    std::vector<double> radii{0.5, 0.8, 0.9, 0.95};
    std::size_t angles = 256;
};

inline constexpr double membership_tolerance = 1e-8;

// Outcome of a grid membership test. This is a necessary-condition check on
// truncations of f and of its reversion; it does not prove class membership.
struct MembershipReport {
    bool pass = true;
    // Smallest slack over the grid: alpha*pi/2 - |arg L| or Re L - beta.
    double margin = std::numeric_limits<double>::infinity();
    complex worst_point{0};
    complex worst_value{1};
    // "f" or "g", whichever side produced the worst point.
    std::string worst_side = "f";
    std::size_t points_checked = 0;
};

namespace detail
{

inline void validate_grid(const MembershipGrid &grid)
{
    if (grid.angles == 0 || grid.radii.empty()) {
        throw std::invalid_argument("membership: grid must have at least one radius and one angle");
    }
    for (auto r : grid.radii) {
        if (!(r >= 0 && r < 1)) {
            throw std::domain_error("membership: grid radii must lie in [0, 1)");
        }
    }
}

template <typename Slack>
void scan_grid(const TruncatedSeries &l, const MembershipGrid &grid, const char *side, Slack slack,
               MembershipReport &report)
{
    for (auto r : grid.radii) {
        for (std::size_t j = 0; j < grid.angles; ++j) {
            const auto z = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j)
                                             / static_cast<double>(grid.angles));
            const auto v = evaluate(l, z);
            const double s = slack(v);
            ++report.points_checked;
            if (s < report.margin) {
                report.margin = s;
                report.worst_point = z;
                report.worst_value = v;
                report.worst_side = side;
            }
        }
    }
}

template <typename Slack>
MembershipReport membership(const NormalizedFunction &f, double lambda, double mu, const MembershipGrid &grid,
                            Slack slack)
{
    validate_grid(grid);
    MembershipReport report;
    const auto g = revert(f);
    scan_grid(apply_operator(f, lambda, mu, f.order()), grid, "f", slack, report);
    scan_grid(apply_operator(g, lambda, mu, g.order()), grid, "g", slack, report);
    report.pass = report.margin > -membership_tolerance;
    return report;
}

} // namespace detail

// |arg L[f]| < alpha pi/2 and |arg L[g]| < alpha pi/2 on the grid.
inline MembershipReport membership_alpha(const NormalizedFunction &f, const AlphaParams &params,
                                         const MembershipGrid &grid = {})
{
    const double half_angle = params.alpha() * std::numbers::pi / 2;
    return detail::membership(f, params.lambda(), params.mu(), grid,
                              [half_angle](complex v) { return half_angle - std::abs(std::arg(v)); });
}

// Re L[f] > beta and Re L[g] > beta on the grid.
inline MembershipReport membership_beta(const NormalizedFunction &f, const BetaParams &params,
                                        const MembershipGrid &grid = {})
{
    const double beta = params.beta();
    return detail::membership(f, params.lambda(), params.mu(), grid,
                              [beta](complex v) { return v.real() - beta; });
}

inline constexpr double consistency_tolerance = 1e-9;

namespace detail
{

inline void require_opposite(const CoefficientTuple &t, const char *who)
{
    if (std::abs(t.p1 + t.q1) > consistency_tolerance) {
        throw std::invalid_argument(std::string(who) + ": tuple violates p1 = -q1");
    }
}

} // namespace detail

struct AlphaLift {
    complex a2_squared;
    complex a3;
};

// a2^2 and a3 recovered from (p, q) for the alpha class:
//   a2^2 = alpha^2 (p2 + q2) / [(lambda + mu)^2 + alpha (mu + 2 lambda - lambda^2)]
//   a3   = alpha^2 (p1^2 + q1^2) / (2 (lambda + mu)^2) + alpha (p2 - q2) / (2 (2 lambda + mu))
// The denominator is positive on the parameter domain: it is affine in alpha,
// equals (lambda + mu)^2 at alpha = 0 and mu^2 + 2 lambda mu + mu + 2 lambda at alpha = 1.
inline AlphaLift lift_alpha(const CoefficientTuple &t, const AlphaParams &params)
{
    detail::require_opposite(t, "lift_alpha");
    const double a = params.alpha(), l = params.lambda(), m = params.mu();
    const double denom = (l + m) * (l + m) + a * (m + 2 * l - l * l);
    return {a * a * (t.p2 + t.q2) / denom,
            a * a * (t.p1 * t.p1 + t.q1 * t.q1) / (2 * (l + m) * (l + m)) + a * (t.p2 - t.q2) / (2 * (2 * l + m))};
}

struct InducedCoefficients {
    complex a2, a3, q1, q2;
};

// Forward-solves a2, a3 from p through the f-side relations
//   (lambda + mu) a2 = alpha p1
//   (2 lambda + mu) a3 + (mu - 1)(lambda + mu/2) a2^2 = alpha p2 + alpha (alpha - 1)/2 p1^2
// then back-solves q from the g-side relations
//   -(lambda + mu) a2 = alpha q1
//   -(2 lambda + mu) a3 + (3 + mu)(lambda + mu/2) a2^2 = alpha q2 + alpha (alpha - 1)/2 q1^2.
inline InducedCoefficients induce_q_alpha(complex p1, complex p2, const AlphaParams &params)
{
    const double a = params.alpha(), l = params.lambda(), m = params.mu();
    const complex a2 = a * p1 / (l + m);
    const complex a2sq = a2 * a2;
    const complex a3 = (a * p2 + a * (a - 1) / 2 * p1 * p1 - (m - 1) * (l + m / 2) * a2sq) / (2 * l + m);
    const complex q1 = -p1;
    const complex q2 = (-(2 * l + m) * a3 + (3 + m) * (l + m / 2) * a2sq - a * (a - 1) / 2 * q1 * q1) / a;
    return {a2, a3, q1, q2};
}

// Same as induce_q_alpha with L[f] = beta + (1 - beta) p and L[g] = beta + (1 - beta) q.
inline InducedCoefficients induce_q_beta(complex p1, complex p2, const BetaParams &params)
{
    const double s = 1 - params.beta(), l = params.lambda(), m = params.mu();
    const complex a2 = s * p1 / (l + m);
    const complex a2sq = a2 * a2;
    const complex a3 = (s * p2 - (m - 1) * (l + m / 2) * a2sq) / (2 * l + m);
    const complex q2 = (-(2 * l + m) * a3 + (3 + m) * (l + m / 2) * a2sq) / s;
    return {a2, a3, -p1, q2};
}

// Two independent routes to a2^2 and to a3 for the beta class.
struct BetaLift {
    // (1 - beta)^2 (p1^2 + q1^2) / (2 (lambda + mu)^2)
    complex a2sq_from_p1q1;
    // (1 - beta)(p2 + q2) / ((mu + 1)(2 lambda + mu))
    complex a2sq_from_p2q2;
    // a2^2 (first route) + (1 - beta)(p2 - q2) / (2 (2 lambda + mu))
    complex a3_from_p1q1;
    // (1 - beta) / (2 (2 lambda + mu)) [(mu + 3)/(mu + 1) p2 + (1 - mu)/(mu + 1) q2]
    complex a3_from_p2q2;
};

inline BetaLift lift_beta(const CoefficientTuple &t, const BetaParams &params)
{
    detail::require_opposite(t, "lift_beta");
    const double s = 1 - params.beta(), l = params.lambda(), m = params.mu();
    const complex a2sq_1 = s * s * (t.p1 * t.p1 + t.q1 * t.q1) / (2 * (l + m) * (l + m));
    const complex a2sq_2 = s * (t.p2 + t.q2) / ((m + 1) * (2 * l + m));
    const complex a3_1 = a2sq_1 + s * (t.p2 - t.q2) / (2 * (2 * l + m));
    const complex a3_2 = s / (2 * (2 * l + m)) * ((m + 3) / (m + 1) * t.p2 + (1 - m) / (m + 1) * t.q2);
    return {a2sq_1, a2sq_2, a3_1, a3_2};
}

} // namespace biuni

#endif
