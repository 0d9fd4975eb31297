#ifndef QRANK_APPELL_HPP
#define QRANK_APPELL_HPP

#include "qrank/qseries.hpp"
#include "qrank/report.hpp"

namespace qrank {

/// sum_{n in Z} alpha beta^n gamma^{n(n-1)/2} / (1 - mu nu^n), gamma a
/// positive power of q. Each divisor is expanded in its convergent direction;
/// the n-range covers every term with an exponent below `order`.
QSeries lerch_sum(const Monomial& alpha, const Monomial& beta, const Monomial& gamma, const Monomial& mu,
                  const Monomial& nu, const Rational& order);

/// m(x, q^p, z) = j(z;q^p)^{-1} sum_r (-1)^r q^{p r(r-1)/2} z^r / (1 - q^{p(r-1)} x z).
QSeries appell_m(const Monomial& x, const Monomial& base, const Monomial& z, const Rational& order);

/// z0 J^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)), all in `base`.
QSeries delta(const Monomial& x, const Monomial& z1, const Monomial& z0, const Monomial& base,
              const Rational& order);

/// Psi_k^n(x, z, z'; base), for any integer k and n >= 1.
QSeries psi(std::int64_t k, std::int64_t n, const Monomial& x, const Monomial& z, const Monomial& zp,
            const Monomial& base, const Rational& order);

/// Lambda(d, z, z0, z') for odd d. Fractional powers of z use the canonical branch.
QSeries lambda(std::int64_t d, const Monomial& z, const Monomial& z0, const Monomial& zp, const Rational& order);

/// O_d(z;q) from the single bilateral sum with the (1-z)/(1+z) prefactor.
/// Throws NonGenericParameter for z = 1 or z = -1.
QSeries o_d_direct(std::int64_t d, const Monomial& z, const Rational& order);

/// O_d(z;q) from the defining double-pole form. Valid at every root of
/// unity, including z = 1 and z = -1.
QSeries o_d_product_form(std::int64_t d, const Monomial& z, const Rational& order);

/// (1 + z) O_d(z;q) through Appell-Lerch series and Lambda (d odd) or Psi (d even).
QSeries s_bar_d(std::int64_t d, const Monomial& z, const Monomial& z0, const Monomial& zp, const Rational& order);

/// Both sides of j(q;q^2)^{-1} sum_n (-1)^n q^{n^2+n}/(1 - x q^n) = -x^{-1} m(x^{-2} q, q^2, x).
IdentityReport htom_check(const Monomial& x, const Rational& order);

}  // namespace qrank

#endif  // QRANK_APPELL_HPP
