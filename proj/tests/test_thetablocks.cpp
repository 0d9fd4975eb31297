#include "doctest.h"

#include "qrank/thetablocks.hpp"

using namespace qrank;

namespace {

// (z;q^p)_inf (q^p/z;q^p)_inf (q^p;q^p)_inf, multiplied out factor by factor.
QSeries triple_product(const Monomial& z, const Rational& p, const Rational& order) {
    const Rational margin = order - std::min(Rational(0), z.exp()) * Rational(4) + Rational(2);
    QSeries acc = QSeries::constant(1);
    auto factor = [&](const Monomial& u) {
        acc = (acc * (QSeries::constant(1) - QSeries::monomial(u)));
        if (!acc.is_exact()) return;
        acc = acc.truncate(margin);
    };
    for (std::int64_t k = 0; Rational(k) * p + z.exp() < margin; ++k) factor(z * Monomial::q_power(p * Rational(k)));
    for (std::int64_t k = 1; Rational(k) * p - z.exp() < margin; ++k)
        factor(z.inv() * Monomial::q_power(p * Rational(k)));
    for (std::int64_t k = 1; Rational(k) * p < margin; ++k) factor(Monomial::q_power(p * Rational(k)));
    return acc;
}

QSeries eq(std::vector<std::pair<std::int64_t, std::int64_t>> f, std::int64_t order) {
    return eta_quotient(f, order);
}

void check_equal(const QSeries& a, const QSeries& b, const Rational& order) {
    const auto m = first_mismatch(a, b, order);
    CHECK_MESSAGE(!m, "mismatch at q^" << (m ? m->exponent.str() : "") << ": " << (m ? m->lhs.str() : "") << " vs "
                                       << (m ? m->rhs.str() : ""));
}

}  // namespace

TEST_CASE("bilateral sum agrees with triple product") {
    const std::vector<std::pair<Monomial, Rational>> cases = {
        {Monomial::zeta(5), 1},
        {Monomial(Rational(2, 7), Rational(1, 2)), 2},
        {Monomial(Rational(1, 3), Rational(-3)), 2},
        {Monomial::minus_one(), 1},
        {Monomial(Rational(3, 4), Rational(5, 3)), 3},
    };
    for (const auto& [z, p] : cases) {
        // the product is computed only to a margin; compare to 25
        const QSeries tp = triple_product(z, p, 40);
        check_equal(theta_j(z, p, 25), tp, 25);
    }
}

TEST_CASE("vanishing and special values") {
    CHECK(theta_j(Monomial::q_power(1), 1, 30).is_zero());
    CHECK(theta_j(Monomial::q_power(1), 1, 30).is_exact());
    CHECK(theta_j(Monomial::q_power(-6), 3, 30).is_zero());
    CHECK(!theta_j(Monomial::q_power(1), 2, 30).is_zero());

    const Rational N = 40;
    check_equal(theta_j(Monomial::minus_one(), 1, N), eq({{2, 2}, {1, -1}}, 40) * Cyclotomic(2), N);
    const Cyclotomic w = root_of_unity(1, 3);
    check_equal(theta_j(Monomial::zeta(3), 1, N), eta_J(3, N) * (Cyclotomic(1) - w), N);
    check_equal(theta_j(Monomial::q_power(1), 2, N), eq({{1, 2}, {2, -1}}, 40), N);
    check_equal(theta_j(Monomial::q_power(1), 3, N), eta_J(1, N), N);
    check_equal(theta_j(Monomial::q_power(1), 6, N), eq({{1, 1}, {6, 2}, {2, -1}, {3, -1}}, 40), N);
    check_equal(theta_j(-Monomial::q_power(1), 3, N), eq({{2, 1}, {3, 2}, {1, -1}, {6, -1}}, 40), N);
    check_equal(theta_j(-Monomial::q_power(1), 6, N), eq({{2, 2}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}}, 40), N);
}

TEST_CASE("products of two thetas") {
    const Rational N = 30;
    const QSeries a = theta_j(Monomial::minus_one(), 1, N);
    check_equal(theta_j2(Monomial::minus_one(), Monomial::minus_one(), Monomial::q_power(1), N), a * a, N);
    CHECK(theta_j2(Monomial::q_power(1), Monomial::zeta(7), Monomial::q_power(1), N).is_zero());
    check_equal(theta_j2(Monomial::zeta(3), Monomial::zeta(3, 2), Monomial::q_power(1), N),
                eta_J(3, N) * eta_J(3, N) * Cyclotomic(3), N);
}

TEST_CASE("shift and reflection laws") {
    CHECK(theta_shift_check(Monomial(Rational(1, 5), Rational(1)), 2, Monomial::q_power(1), 30).passed());
    CHECK(theta_shift_check(Monomial::zeta(7), 0, Monomial::q_power(1), 30).passed());
    CHECK(theta_shift_check(Monomial::q_power(1), 3, Monomial::q_power(1), 30).passed());
    CHECK(theta_shift_check(Monomial(Rational(2, 9), Rational(-1, 2)), -3, Monomial::q_power(2), 30).passed());
}

TEST_CASE("theta quotients track precision") {
    // j(zeta_5 q^{1/2}; q) / j(zeta_7; q^2)^2 * J_3^{-1}
    ThetaQuotient tq;
    tq.theta(Monomial(Rational(1, 5), Rational(1, 2)), 1).theta(Monomial::zeta(7), 2, -2).J(3, -1);
    const QSeries direct = theta_j(Monomial(Rational(1, 5), Rational(1, 2)), 1, 50) *
                           pow(theta_j(Monomial::zeta(7), 2, 50), -2) * invert(eta_J(3, 50));
    const QSeries built = tq.expand(20);
    CHECK(built.finite_order() == Rational(20));
    check_equal(built, direct, 20);

    ThetaQuotient bad;
    bad.theta(Monomial::q_power(2), 1, -1);
    CHECK_THROWS_AS(bad.expand(10), NonGenericParameter);
    ThetaQuotient zero;
    zero.theta(Monomial::q_power(2), 1).J(1, -3);
    CHECK(zero.expand(10).is_zero());

    // negative valuation: j(q^{-2}; q^5) has its lowest term at q^{-2}
    ThetaQuotient neg;
    neg.theta(Monomial::q_power(-2), 5, 3);
    CHECK(neg.valuation() == Rational(-6));
    check_equal(neg.expand(15), pow(theta_j(Monomial::q_power(-2), 5, 40), 3), 15);
}
