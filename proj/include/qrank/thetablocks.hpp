#ifndef QRANK_THETABLOCKS_HPP
#define QRANK_THETABLOCKS_HPP

#include <optional>
#include <vector>

#include "qrank/qseries.hpp"
#include "qrank/report.hpp"

namespace qrank {

/// j(z; q^p) = sum_n (-1)^n q^{p n(n-1)/2} z^n, for p > 0.
/// Returns the exact zero series when z is an integral power of q^p.
QSeries theta_j(const Monomial& z, const Rational& p, const Rational& order);
/// Same with the base given as a pure power q^p.
QSeries theta_j(const Monomial& z, const Monomial& base, const Rational& order);
/// j(z1;q^p) j(z2;q^p).
QSeries theta_j2(const Monomial& z1, const Monomial& z2, const Monomial& base, const Rational& order);

/// Lowest exponent of j(z; q^p), or nullopt if it vanishes identically.
std::optional<Rational> theta_valuation(const Monomial& z, const Rational& p);

/// The shift law j(q^n x;q) = (-1)^n q^{-n(n-1)/2} x^{-n} j(x;q) and the
/// reflection j(x;q) = j(q/x;q), both in base q^p, expanded side by side.
IdentityReport theta_shift_check(const Monomial& x, std::int64_t n, const Monomial& base,
                                 const Rational& order);

/// c * q^e * prod J_{m}^{e_m} * prod j(z;q^p)^{e}.
/// expand() computes every factor to exactly the precision the product needs.
class ThetaQuotient {
public:
    ThetaQuotient() = default;
    explicit ThetaQuotient(const Cyclotomic& c) : scale_(c) {}

    ThetaQuotient& times(const Monomial& m);
    ThetaQuotient& times(const Cyclotomic& c);
    /// J_m^power with J_m = (q^m; q^m)_inf, m a positive rational.
    ThetaQuotient& J(const Rational& m, std::int64_t power = 1);
    /// j(z; q^p)^power.
    ThetaQuotient& theta(const Monomial& z, const Rational& p, std::int64_t power = 1);
    ThetaQuotient& operator*=(const ThetaQuotient& o);

    /// True if a numerator theta vanishes identically (and no denominator does).
    bool vanishes() const;
    /// Throws NonGenericParameter if a denominator theta vanishes.
    Rational valuation() const;
    QSeries expand(const Rational& order) const;

private:
    struct Factor {
        bool is_eta;
        Monomial z;
        Rational p;
        std::int64_t power;
    };
    Cyclotomic scale_{1};
    Monomial mono_;
    std::vector<Factor> factors_;
};

}  // namespace qrank

#endif  // QRANK_THETABLOCKS_HPP
