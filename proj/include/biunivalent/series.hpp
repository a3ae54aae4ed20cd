#ifndef BIUNIVALENT_SERIES_HPP
#define BIUNIVALENT_SERIES_HPP

// Truncated complex power series and the normalized functions of class A.
//
// A TruncatedSeries of order N carries the coefficients c_0..c_N of a power
// series modulo z^(N+1). Coefficients past N are unknown, never zero, so every
// binary operation truncates to the smaller order of its operands.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biuni
{

using complex = std::complex<double>;

inline constexpr std::size_t default_order = 8;

class TruncatedSeries
{
public:
    TruncatedSeries() : m_coeffs{complex{0}} {}

    TruncatedSeries(std::initializer_list<complex> cs) : m_coeffs(cs)
    {
        if (m_coeffs.empty()) {
            throw std::invalid_argument("TruncatedSeries: at least one coefficient is required");
        }
    }

    explicit TruncatedSeries(std::vector<complex> cs) : m_coeffs(std::move(cs))
    {
        if (m_coeffs.empty()) {
            throw std::invalid_argument("TruncatedSeries: at least one coefficient is required");
        }
    }

    // Series of the given order with every coefficient set to `fill`.
    static TruncatedSeries filled(std::size_t order, complex fill = complex{0})
    {
        return TruncatedSeries(std::vector<complex>(order + 1, fill));
    }

    static TruncatedSeries constant(complex c, std::size_t order)
    {
        auto s = filled(order);
        s.m_coeffs[0] = c;
        return s;
    }

    std::size_t order() const noexcept { return m_coeffs.size() - 1; }

    const complex &operator[](std::size_t k) const
    {
        if (k > order()) {
            throw std::out_of_range("TruncatedSeries: coefficient " + std::to_string(k)
                                    + " is beyond the truncation order " + std::to_string(order()));
        }
        return m_coeffs[k];
    }

    std::span<const complex> coeffs() const noexcept { return m_coeffs; }

    TruncatedSeries truncated(std::size_t order) const
    {
        const auto n = std::min(order, this->order());
        return TruncatedSeries(std::vector<complex>(m_coeffs.begin(), m_coeffs.begin() + n + 1));
    }

    // Drops the constant term and divides by z; the caller guarantees c_0 = 0.
    TruncatedSeries shifted_down() const
    {
        if (order() == 0) {
            throw std::domain_error("TruncatedSeries: cannot divide an order-0 series by z");
        }
        return TruncatedSeries(std::vector<complex>(m_coeffs.begin() + 1, m_coeffs.end()));
    }

    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const auto n = std::min(a.order(), b.order());
        std::vector<complex> out(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            out[k] = a.m_coeffs[k] + b.m_coeffs[k];
        }
        return TruncatedSeries(std::move(out));
    }

    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const auto n = std::min(a.order(), b.order());
        std::vector<complex> out(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            out[k] = a.m_coeffs[k] - b.m_coeffs[k];
        }
        return TruncatedSeries(std::move(out));
    }

    // Cauchy product.
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const auto n = std::min(a.order(), b.order());
        std::vector<complex> out(n + 1, complex{0});
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; i + j <= n; ++j) {
                out[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return TruncatedSeries(std::move(out));
    }

    friend TruncatedSeries operator*(complex s, const TruncatedSeries &a)
    {
        auto out = a.m_coeffs;
        for (auto &c : out) {
            c *= s;
        }
        return TruncatedSeries(std::move(out));
    }

    friend TruncatedSeries operator-(const TruncatedSeries &a)
    {
        return complex{-1} * a;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    std::vector<complex> m_coeffs;
};

// c_k -> k c_k, shifted down one degree. The result has order N - 1 because
// the coefficient of z^N in the derivative depends on the unknown c_(N+1).
inline TruncatedSeries derivative(const TruncatedSeries &a)
{
    if (a.order() == 0) {
        throw std::domain_error("derivative: an order-0 series has no known derivative coefficients");
    }
    std::vector<complex> out(a.order());
    for (std::size_t k = 1; k <= a.order(); ++k) {
        out[k - 1] = static_cast<double>(k) * a[k];
    }
    return TruncatedSeries(std::move(out));
}

// Logarithm of a series with unit constant term, from (log a)' = a'/a.
inline TruncatedSeries log_unit(const TruncatedSeries &a)
{
    if (a[0] != complex{1}) {
        throw std::domain_error("log_unit: constant term must be exactly 1");
    }
    const auto n = a.order();
    std::vector<complex> l(n + 1, complex{0});
    for (std::size_t m = 1; m <= n; ++m) {
        complex acc = static_cast<double>(m) * a[m];
        for (std::size_t k = 1; k < m; ++k) {
            acc -= static_cast<double>(k) * l[k] * a[m - k];
        }
        l[m] = acc / static_cast<double>(m);
    }
    return TruncatedSeries(std::move(l));
}

// Exponential of a series with zero constant term, from e' = s' e.
inline TruncatedSeries exp_nil(const TruncatedSeries &s)
{
    if (s[0] != complex{0}) {
        throw std::domain_error("exp_nil: constant term must be exactly 0");
    }
    const auto n = s.order();
    std::vector<complex> e(n + 1, complex{0});
    e[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        complex acc{0};
        for (std::size_t k = 1; k <= m; ++k) {
            acc += static_cast<double>(k) * s[k] * e[m - k];
        }
        e[m] = acc / static_cast<double>(m);
    }
    return TruncatedSeries(std::move(e));
}

// Principal-branch real power of a series with unit constant term,
// exp(exponent * log a). The result has constant term exactly 1.
inline TruncatedSeries pow_real(const TruncatedSeries &a, double exponent)
{
    if (a[0] != complex{1}) {
        throw std::domain_error("pow_real: constant term must be exactly 1 for the principal branch");
    }
    return exp_nil(complex{exponent} * log_unit(a));
}

// a(b(z)) truncated to min(a.order, b.order). Requires b_0 = 0.
inline TruncatedSeries compose(const TruncatedSeries &a, const TruncatedSeries &b)
{
    if (b[0] != complex{0}) {
        throw std::domain_error("compose: inner series must have zero constant term");
    }
    const auto n = std::min(a.order(), b.order());
    const auto inner = b.truncated(n);
    // Horner in the series ring.
    auto acc = TruncatedSeries::constant(a[n], n);
    for (std::size_t k = n; k-- > 0;) {
        acc = acc * inner;
        auto c = acc.coeffs();
        std::vector<complex> next(c.begin(), c.end());
        next[0] += a[k];
        acc = TruncatedSeries(std::move(next));
    }
    return acc;
}

// Horner evaluation of the truncated polynomial at a point of the open unit disk.
inline complex evaluate(const TruncatedSeries &a, complex z)
{
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("evaluate: point must lie in the open unit disk");
    }
    complex acc{0};
    const auto c = a.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

// f(z) = z + a_2 z^2 + ... with c_0 = 0 and c_1 = 1 exactly (class A).
class NormalizedFunction
{
public:
    explicit NormalizedFunction(TruncatedSeries s) : m_series(std::move(s))
    {
        if (m_series.order() < 1) {
            throw std::invalid_argument("NormalizedFunction: order must be at least 1");
        }
        if (m_series[0] != complex{0} || m_series[1] != complex{1}) {
            throw std::invalid_argument("NormalizedFunction: requires c_0 = 0 and c_1 = 1");
        }
    }

    // Builds z + a_2 z^2 + ... + a_N z^N from the tail {a_2, ..., a_N}.
    static NormalizedFunction from_tail(std::span<const complex> tail)
    {
        std::vector<complex> c{complex{0}, complex{1}};
        c.insert(c.end(), tail.begin(), tail.end());
        return NormalizedFunction(TruncatedSeries(std::move(c)));
    }

    static NormalizedFunction from_tail(std::initializer_list<complex> tail)
    {
        return from_tail(std::span<const complex>(tail.begin(), tail.size()));
    }

    static NormalizedFunction identity(std::size_t order = 1)
    {
        auto c = std::vector<complex>(order + 1, complex{0});
        c[1] = 1;
        return NormalizedFunction(TruncatedSeries(std::move(c)));
    }

    const TruncatedSeries &series() const noexcept { return m_series; }
    std::size_t order() const noexcept { return m_series.order(); }

    // a_n; throws past the truncation order.
    const complex &coeff(std::size_t n) const { return m_series[n]; }

    friend bool operator==(const NormalizedFunction &, const NormalizedFunction &) = default;

private:
    TruncatedSeries m_series;
};

// Compositional inverse g with f(g(w)) = w through order N.
//
// The coefficient of w^n in f(g(w)) depends on g_n only through the linear
// term f_1 g_n = g_n, so each g_n is minus the residual obtained with g_n = 0.
inline NormalizedFunction revert(const NormalizedFunction &f)
{
    const auto n = f.order();
    std::vector<complex> g(n + 1, complex{0});
    g[1] = 1;
    for (std::size_t m = 2; m <= n; ++m) {
        const auto head = TruncatedSeries(std::vector<complex>(g.begin(), g.begin() + m + 1));
        const auto residual = compose(f.series().truncated(m), head)[m];
        g[m] = -residual;
    }
    return NormalizedFunction(TruncatedSeries(std::move(g)));
}

// Closed-form coefficients 2..4 of the inverse series:
// g(w) = w - a2 w^2 + (2 a2^2 - a3) w^3 - (5 a2^3 - 5 a2 a3 + a4) w^4 + ...
inline std::array<complex, 3> inverse_coeffs_closed(complex a2, complex a3, complex a4)
{
    return {-a2, 2.0 * a2 * a2 - a3, -(5.0 * a2 * a2 * a2 - 5.0 * a2 * a3 + a4)};
}

} // namespace biuni

#endif
