#include "qrank/appell.hpp"

#include <algorithm>

#include "qrank/thetablocks.hpp"

namespace qrank {

namespace {

Rational binom2(std::int64_t n) { return Rational(n * (n - 1), 2); }

Monomial q_pow(const Rational& e) { return Monomial::q_power(e); }

Rational require_base(const Monomial& base) {
    if (!base.is_pure_power() || base.exp() <= Rational(0))
        throw Error("base must be a positive power of q, got " + base.str());
    return base.exp();
}

QSeries one_minus(const Monomial& z) { return QSeries::constant(1) - QSeries::monomial(z); }

}  // namespace

QSeries lerch_sum(const Monomial& alpha, const Monomial& beta, const Monomial& gamma, const Monomial& mu,
                  const Monomial& nu, const Rational& order) {
    const Rational g = gamma.exp();
    if (g <= Rational(0)) throw Error("lerch_sum needs a positive quadratic exponent");
    // Lowest exponent contributed by term n; convex in n.
    auto val = [&](std::int64_t n) {
        const Rational lin = mu.exp() + nu.exp() * Rational(n);
        const Rational geo = lin < Rational(0) ? -lin : Rational(0);
        return alpha.exp() + beta.exp() * Rational(n) + g * binom2(n) + geo;
    };
    std::int64_t n0 = (Rational(1, 2) - beta.exp() / g).floor();
    while (val(n0 - 1) < val(n0)) --n0;
    while (val(n0 + 1) < val(n0)) ++n0;
    std::int64_t lo = n0, hi = n0;
    while (val(lo - 1) < order) --lo;
    while (val(hi + 1) < order) ++hi;
    --lo;
    ++hi;

    QSeries total = QSeries::zero(order);
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (val(n) >= order) continue;
        const Monomial pre = alpha * beta.pow(n) * gamma.pow(binom2(n));
        const Monomial u = mu * nu.pow(n);
        total += geometric(u, order - pre.exp()) * pre;
    }
    return total.truncate(order);
}

QSeries appell_m(const Monomial& x, const Monomial& base, const Monomial& z, const Rational& order) {
    const Rational p = require_base(base);
    const auto vj = theta_valuation(z, p);
    if (!vj) throw NonGenericParameter("m(x,q,z) with z an integral power of q: z = " + z.str());
    const Monomial xz = x * z;
    if (xz.is_pure_power() && (xz.exp() / p).is_integer())
        throw NonGenericParameter("m(x,q,z) with xz an integral power of q: xz = " + xz.str());

    const Rational num_order = order + *vj;
    const QSeries num = lerch_sum(Monomial::one(), -z, base, xz * base.inv(), base, num_order);
    if (num.is_zero()) return QSeries::zero(order);
    // 1/j must carry the relative precision the numerator leaves over.
    const Rational den_order = std::max(order + *vj * Rational(2) - num.valuation(), *vj + Rational(1));
    const QSeries den = theta_j(z, p, den_order);
    QSeries m = num * invert(den);
    if (!m.is_exact() && m.finite_order() < order)
        throw Error("internal: m(x,q,z) reached only q^" + m.finite_order().str());
    return m.truncate(order);
}

QSeries delta(const Monomial& x, const Monomial& z1, const Monomial& z0, const Monomial& base,
              const Rational& order) {
    const Rational p = require_base(base);
    ThetaQuotient tq;
    tq.times(z0)
        .J(p, 3)
        .theta(z1 / z0, p)
        .theta(x * z0 * z1, p)
        .theta(z0, p, -1)
        .theta(z1, p, -1)
        .theta(x * z0, p, -1)
        .theta(x * z1, p, -1);
    return tq.expand(order);
}

QSeries psi(std::int64_t k, std::int64_t n, const Monomial& x, const Monomial& z, const Monomial& zp,
            const Monomial& base, const Rational& order) {
    if (n < 1) throw Error("Psi needs n >= 1");
    const Rational p = require_base(base);
    const Rational P = p * Rational(n * n);  // base q^{p n^2}
    const Monomial xz_n = (x * z).pow(n);
    const Monomial minus_z_n = (-z).pow(n);
    QSeries total = QSeries::zero(order);
    for (std::int64_t t = 0; t < n; ++t) {
        ThetaQuotient tq(Cyclotomic(-1));
        tq.times(x.pow(k) * z.pow(k + 1))
            .J(P, 3)
            .theta(z, p, -1)
            .theta(zp, P, -1)
            .times(base.pow(binom2(t + 1) + Rational(k * t)) * (-z).pow(t))
            .theta(-(base.pow(binom2(n + 1) + Rational(n * k + n * t)) * minus_z_n / zp), P)
            .theta(base.pow(n * t) * xz_n * zp, P)
            .theta(-(base.pow(binom2(n) - Rational(n * k)) * (-x).pow(n) * zp), P, -1)
            .theta(base.pow(n * t) * xz_n, P, -1);
        total += tq.expand(order);
    }
    return total.truncate(order);
}

QSeries lambda(std::int64_t d, const Monomial& z, const Monomial& z0, const Monomial& zp, const Rational& order) {
    if (d < 1 || d % 2 == 0) throw Error("Lambda needs odd d >= 1");
    const Monomial w = z.root_branch(d);
    const Monomial sign = Monomial::minus_one().pow((d + 1) / 2);
    const Monomial pre = sign * q_pow(-Rational((d - 1) * (d - 1), 4)) * w.pow(d - 1);
    const Rational inner = order - pre.exp();
    const Monomial q2 = q_pow(2);
    const Monomial x = w.pow(-2) * q_pow(d);
    QSeries s = psi((d - 1) / 2, d, x, z0, zp, q2, inner);
    QSeries dsum = QSeries::zero(inner);
    for (std::int64_t t = 0; t < d; ++t) {
        const Monomial zt = Monomial::zeta(d, t);
        dsum += delta(zt.pow(-2) * x, zt * w * q_pow(-Rational(d - 1, 2)), z0, q2, inner) * zt.inv().coeff();
    }
    s += dsum * Cyclotomic(BigRational(1, d));
    return (s * pre).truncate(order);
}

QSeries o_d_direct(std::int64_t d, const Monomial& z, const Rational& order) {
    if (d < 1) throw Error("O_d needs d >= 1");
    if (z == Monomial::one() || z == Monomial::minus_one())
        throw NonGenericParameter("O_d(z;q) from the single-sum form has a pole at z = " + z.str());
    // 1 + 2 z / j(q;q^2) * sum_n (-1)^n q^{n^2+dn} / (1 - z q^{dn})
    const Rational inner = order - z.exp();
    const QSeries sum = lerch_sum(Monomial::one(), -q_pow(d + 1), q_pow(2), z, q_pow(d), inner);
    const QSeries jq = eta_quotient({{1, 2}, {2, -1}}, std::max(inner, Rational(1)));
    QSeries body = QSeries::constant(1) + sum * invert(jq) * z * Cyclotomic(2);
    const Rational pad = std::min(Rational(0), z.exp());
    const QSeries ratio = one_minus(z) * invert(QSeries::constant(1) + QSeries::monomial(z),
                                                order - pad - pad);
    return (ratio * body).truncate(order);
}

QSeries o_d_product_form(std::int64_t d, const Monomial& z, const Rational& order) {
    if (d < 1) throw Error("O_d needs d >= 1");
    if (!z.is_constant()) throw Error("the double-pole form is implemented for root-of-unity z");
    const Cyclotomic c = z.coeff();
    const Cyclotomic factor = Cyclotomic(2) - c - c.inv();  // (1-z)(1-1/z)
    QSeries sum = QSeries::zero(order);
    if (!factor.is_zero()) {
        for (std::int64_t n = 1; Rational(n * n + d * n) < order; ++n) {
            const Monomial pre = Monomial::minus_one().pow(n) * q_pow(n * n + d * n);
            const Rational rest = order - pre.exp();
            sum += geometric(z * q_pow(d * n), rest) * geometric(z.inv() * q_pow(d * n), rest) * pre;
        }
    }
    const QSeries body = QSeries::constant(1) + sum * (factor * Cyclotomic(2));
    return (eta_quotient({{2, 1}, {1, -2}}, order) * body).truncate(order);
}

QSeries s_bar_d(std::int64_t d, const Monomial& z, const Monomial& z0, const Monomial& zp, const Rational& order) {
    if (d < 1) throw Error("S_d needs d >= 1");
    const Rational inner = order - std::min(Rational(0), z.exp());
    QSeries body;
    if (d % 2 == 1) {
        const std::int64_t d2 = d * d;
        body = QSeries::constant(1) - appell_m(z.pow(-2) * q_pow(d2), q_pow(2 * d2), zp, inner) * Cyclotomic(2) +
               lambda(d, z, z0, zp, inner) * Cyclotomic(2);
    } else {
        const std::int64_t h = d / 2;
        const Rational quarter(d * d, 4);
        const Monomial sgn = Monomial::minus_one().pow(h + 1);
        const Monomial pre = Monomial::minus_one().pow(h) * z * q_pow(-quarter);
        body = QSeries::constant(-1) +
               appell_m(sgn * z * q_pow(quarter), q_pow(quarter * Rational(2)), zp, inner) * Cyclotomic(2) +
               psi(0, h, z.pow(Rational(2, d)) * q_pow(1 - d), q_pow(1), zp, q_pow(2), inner - pre.exp()) * pre *
                   Cyclotomic(2);
    }
    return (one_minus(z) * body).truncate(order);
}

IdentityReport htom_check(const Monomial& x, const Rational& order) {
    const std::string inst = "x=" + x.str();
    const Rational inner = order;
    const QSeries sum = lerch_sum(Monomial::one(), -q_pow(2), q_pow(2), x, q_pow(1), inner);
    const QSeries lhs = sum * invert(eta_quotient({{1, 2}, {2, -1}}, std::max(inner, Rational(1))));
    const Monomial pre = -x.inv();
    const QSeries rhs = appell_m(x.pow(-2) * q_pow(1), q_pow(2), x, order - pre.exp()) * pre;
    return compare_series("htom", inst, lhs, rhs, order);
}

}  // namespace qrank
