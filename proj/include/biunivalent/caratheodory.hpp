#ifndef BIUNIVALENT_CARATHEODORY_HPP
#define BIUNIVALENT_CARATHEODORY_HPP

// Elements of the Caratheodory class P: analytic p with p(0) = 1 and
// Re p > 0 on the unit disk. Elements are built from finite Herglotz measures,
//
//     p(z) = sum_i t_i (1 + e^{i theta_i} z) / (1 - e^{i theta_i} z),
//
// whose coefficients are c_k = 2 sum_i t_i e^{i k theta_i}. Each Mobius atom is
// in P and P is convex, so every such p is a certified member.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include <biunivalent/random.hpp>
#include <biunivalent/series.hpp>

namespace biuni
{

struct HerglotzAtom {
    double weight;
    double angle;
};

class CaratheodoryElement
{
public:
    CaratheodoryElement(TruncatedSeries series, std::optional<std::vector<HerglotzAtom>> atoms = std::nullopt)
        : m_series(std::move(series)), m_atoms(std::move(atoms))
    {
        if (m_series[0] != complex{1}) {
            throw std::invalid_argument("CaratheodoryElement: constant term must be 1");
        }
    }

    const TruncatedSeries &series() const noexcept { return m_series; }
    std::size_t order() const noexcept { return m_series.order(); }
    const complex &coeff(std::size_t k) const { return m_series[k]; }
    const std::optional<std::vector<HerglotzAtom>> &atoms() const noexcept { return m_atoms; }

    // Closed-form value of the full (untruncated) function. Only available
    // for elements carrying their atoms.
    complex evaluate_exact(complex z) const
    {
        if (!m_atoms) {
            throw std::logic_error("CaratheodoryElement: no atom representation to evaluate");
        }
        if (!(std::abs(z) < 1.0)) {
            throw std::domain_error("CaratheodoryElement: point must lie in the open unit disk");
        }
        complex acc{0};
        for (const auto &a : *m_atoms) {
            const auto w = std::polar(1.0, a.angle) * z;
            acc += a.weight * (1.0 + w) / (1.0 - w);
        }
        return acc;
    }

private:
    TruncatedSeries m_series;
    std::optional<std::vector<HerglotzAtom>> m_atoms;
};

inline constexpr double weight_sum_tolerance = 1e-12;

inline CaratheodoryElement herglotz(std::vector<HerglotzAtom> atoms, std::size_t order)
{
    if (atoms.empty()) {
        throw std::invalid_argument("herglotz: at least one atom is required");
    }
    double total = 0;
    for (const auto &a : atoms) {
        if (!(a.weight > 0)) {
            throw std::invalid_argument("herglotz: atom weights must be positive");
        }
        total += a.weight;
    }
    if (std::abs(total - 1.0) > weight_sum_tolerance) {
        throw std::invalid_argument("herglotz: atom weights must sum to 1");
    }
    std::vector<complex> c(order + 1, complex{0});
    c[0] = 1;
    for (const auto &a : atoms) {
        const auto step = std::polar(1.0, a.angle);
        auto rot = step;
        for (std::size_t k = 1; k <= order; ++k) {
            c[k] += 2.0 * a.weight * rot;
            rot *= step;
        }
    }
    return CaratheodoryElement(TruncatedSeries(std::move(c)), std::move(atoms));
}

// Atom parameters for a seed: weights from the flat Dirichlet distribution on
// the simplex, angles uniform on [0, 2 pi).
inline std::vector<HerglotzAtom> random_atoms(std::uint64_t seed, std::size_t atom_count)
{
    if (atom_count == 0) {
        throw std::invalid_argument("random_atoms: atom_count must be at least 1");
    }
    engine eng(seed);
    std::vector<HerglotzAtom> atoms(atom_count);
    double total = 0;
    for (auto &a : atoms) {
        a.weight = -std::log(uniform_open01(eng));
        total += a.weight;
    }
    for (auto &a : atoms) {
        a.weight /= total;
        a.angle = 2.0 * std::numbers::pi * uniform01(eng);
    }
    return atoms;
}

inline CaratheodoryElement sample_random(std::uint64_t seed, std::size_t atom_count, std::size_t order)
{
    return herglotz(random_atoms(seed, atom_count), order);
}

enum class AdmissibilityFilter { modulus, toeplitz };

enum class AdmissibilityVerdict { pass, fail_modulus, fail_toeplitz };

inline std::string_view to_string(AdmissibilityVerdict v)
{
    switch (v) {
        case AdmissibilityVerdict::pass:
            return "PASS";
        case AdmissibilityVerdict::fail_modulus:
            return "FAIL_MODULUS";
        case AdmissibilityVerdict::fail_toeplitz:
            return "FAIL_TOEPLITZ";
    }
    return "?";
}

inline std::string_view to_string(AdmissibilityFilter f)
{
    return f == AdmissibilityFilter::modulus ? "modulus" : "toeplitz";
}

inline constexpr double modulus_tolerance = 1e-12;
inline constexpr double eigenvalue_tolerance = 1e-9;

namespace detail
{

template <int Dim>
double toeplitz_min_eigenvalue(std::span<const complex> c)
{
    using matrix = Eigen::Matrix<complex, Dim, Dim>;
    const auto n = static_cast<Eigen::Index>(c.size() + 1);
    matrix t(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto m = 0.5 * c[static_cast<std::size_t>(j - i - 1)];
            t(i, j) = m;
            t(j, i) = std::conj(m);
        }
    }
    Eigen::SelfAdjointEigenSolver<matrix> solver(t, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace detail

// Smallest eigenvalue of the (K+1)x(K+1) Hermitian Toeplitz moment matrix with
// unit diagonal and c_(j-i)/2 above it.
inline double toeplitz_min_eigenvalue(std::span<const complex> c)
{
    switch (c.size()) {
        case 1:
            return detail::toeplitz_min_eigenvalue<2>(c);
        case 2:
            return detail::toeplitz_min_eigenvalue<3>(c);
        case 3:
            return detail::toeplitz_min_eigenvalue<4>(c);
        default:
            return detail::toeplitz_min_eigenvalue<Eigen::Dynamic>(c);
    }
}

// Prefix test for c_1..c_K. |c_k| <= 2 is the classical necessary condition;
// Toeplitz positivity characterizes prefixes of P exactly.
inline AdmissibilityVerdict is_admissible_prefix(std::span<const complex> c,
                                                 AdmissibilityFilter filter = AdmissibilityFilter::toeplitz)
{
    if (c.empty()) {
        throw std::invalid_argument("is_admissible_prefix: need at least one coefficient");
    }
    for (const auto &ck : c) {
        if (!(std::abs(ck) <= 2.0 + modulus_tolerance)) {
            return AdmissibilityVerdict::fail_modulus;
        }
    }
    if (filter == AdmissibilityFilter::toeplitz && toeplitz_min_eigenvalue(c) < -eigenvalue_tolerance) {
        return AdmissibilityVerdict::fail_toeplitz;
    }
    return AdmissibilityVerdict::pass;
}

} // namespace biuni

#endif
