#include "doctest.h"

#include "qrank/appell.hpp"
#include "qrank/thetablocks.hpp"

using namespace qrank;

namespace {

Monomial mono(std::int64_t k, std::int64_t L, Rational e = 0) { return Monomial(Rational(k, L), e); }
Monomial qp(Rational e) { return Monomial::q_power(e); }

void check_equal(const QSeries& a, const QSeries& b, const Rational& order) {
    const auto m = first_mismatch(a, b, order);
    CHECK_MESSAGE(!m, "mismatch at q^" << (m ? m->exponent.str() : "") << ": " << (m ? m->lhs.str() : "") << " vs "
                                       << (m ? m->rhs.str() : ""));
}

QSeries C(const Cyclotomic& c) { return QSeries::constant(c); }

}  // namespace

TEST_CASE("m(q, q^2, -1) = 1/2") {
    const QSeries m = appell_m(qp(1), qp(2), Monomial::minus_one(), 40);
    check_equal(m, C(BigRational(1, 2)), 40);
}

TEST_CASE("genericity of m") {
    CHECK_THROWS_AS(appell_m(mono(1, 5), qp(1), qp(2), 10), NonGenericParameter);
    CHECK_THROWS_AS(appell_m(qp(-1), qp(1), qp(Rational(1, 2)) * qp(Rational(-1, 2)) * Monomial::one() * qp(2), 10),
                    NonGenericParameter);
    CHECK_THROWS_AS(appell_m(mono(1, 5).inv() * qp(3), qp(1), mono(1, 5), 10), NonGenericParameter);
}

TEST_CASE("flip laws") {
    const Rational N = 25;
    const std::vector<std::pair<Monomial, Monomial>> cases = {
        {mono(1, 5, 1), mono(1, 7)},
        {mono(2, 5, Rational(1, 2)), mono(3, 7, Rational(1, 3))},
        {mono(1, 3, -2), mono(2, 7, 1)},
    };
    for (const auto& [x, z] : cases) {
        const QSeries m = appell_m(x, qp(1), z, N);
        check_equal(m, appell_m(x.inv(), qp(1), z.inv(), N - x.inv().exp()) * x.inv(), N);
        const QSeries rhs = C(1) * x.inv() - appell_m(qp(1) * x, qp(1), z, N - x.inv().exp()) * x.inv();
        check_equal(m, rhs, N);
    }
}

TEST_CASE("changing z in m") {
    const Rational N = 25;
    struct Case {
        Monomial x, z1, z0, base;
    };
    const std::vector<Case> cases = {
        {mono(1, 5, 1), mono(1, 7), Monomial::minus_one(), qp(2)},
        {mono(2, 5), mono(1, 7, Rational(1, 2)), mono(3, 7), qp(1)},
        {mono(1, 3, 3), mono(2, 7), mono(1, 4, -1), qp(3)},
    };
    for (const auto& c : cases) {
        const QSeries lhs = appell_m(c.x, c.base, c.z1, N) - appell_m(c.x, c.base, c.z0, N);
        check_equal(lhs, delta(c.x, c.z1, c.z0, c.base, N), N);
    }
    // identical z's: the numerator theta j(1) vanishes
    CHECK(delta(mono(1, 5, 1), mono(1, 7), mono(1, 7), qp(1), 10).is_zero());
}

TEST_CASE("orthogonality over n-th roots") {
    const Rational N = 20;
    const std::vector<std::tuple<Monomial, Monomial, Monomial>> params = {
        {mono(1, 5, 1), mono(1, 7), mono(2, 7)},
        {mono(2, 5, Rational(1, 2)), Monomial::minus_one(), mono(3, 7)},
        {mono(1, 4, 2), mono(2, 7, Rational(1, 3)), mono(1, 7)},
    };
    for (std::int64_t n : {2, 3}) {
        for (std::int64_t k = 0; k < n; ++k) {
            for (const auto& [x, z, zp] : params) {
                QSeries lhs = QSeries::zero(N);
                for (std::int64_t t = 0; t < n; ++t)
                    lhs += appell_m(Monomial::zeta(n, t) * x, qp(1), z, N) * Monomial::zeta(n, -k * t).coeff();
                const Monomial pre = qp(-Rational(k * (k + 1), 2)) * (-x).pow(k);
                const Monomial arg = -(qp(Rational(n * (n - 1), 2) - Rational(n * k)) * (-x).pow(n));
                const QSeries rhs = appell_m(arg, qp(n * n), zp, N - pre.exp()) * pre * Cyclotomic(n) +
                                    psi(k, n, x, z, zp, qp(1), N) * Cyclotomic(n);
                check_equal(lhs, rhs, N);
            }
        }
    }
}

TEST_CASE("single bilateral sum for h to m") {
    CHECK(htom_check(mono(1, 5), 30).passed());
    CHECK(htom_check(mono(1, 7, 1), 30).passed());
    CHECK(htom_check(mono(3, 8, Rational(-1, 2)), 30).passed());
    CHECK_THROWS_AS(htom_check(qp(1), 10), NonGenericParameter);
}

TEST_CASE("two forms of the generating function agree") {
    const Rational N = 30;
    for (std::int64_t d = 1; d <= 4; ++d)
        for (const Monomial z : {mono(1, 5), mono(2, 7), mono(1, 3), mono(1, 4)})
            check_equal(o_d_direct(d, z, N), o_d_product_form(d, z, N), N);
    CHECK_THROWS_AS(o_d_direct(1, Monomial::one(), N), NonGenericParameter);
    CHECK_THROWS_AS(o_d_direct(1, Monomial::minus_one(), N), NonGenericParameter);
    // z = 1 gives the overpartition generating function
    check_equal(o_d_product_form(3, Monomial::one(), N), eta_quotient({{2, 1}, {1, -2}}, 30), N);
}

TEST_CASE("Appell-Lerch form of (1+z) O_d") {
    const Rational N = 20;
    for (std::int64_t d = 1; d <= 4; ++d) {
        for (const Monomial z : {mono(1, 5), mono(2, 7)}) {
            const QSeries expected = (C(1) + QSeries::monomial(z)) * o_d_direct(d, z, N);
            const QSeries a = s_bar_d(d, z, mono(3, 7), mono(1, 7), N);
            const QSeries b = s_bar_d(d, z, mono(1, 11), mono(2, 11), N);
            check_equal(a, expected, N);
            check_equal(a, b, N);
        }
    }
}

TEST_CASE("Lambda at d = 1 carries a minus sign") {
    const Rational N = 20;
    const Monomial z = mono(1, 5), z0 = mono(3, 7), zp = mono(1, 7);
    const Monomial x = z.pow(-2) * qp(1);
    const QSeries plain = psi(0, 1, x, z0, zp, qp(2), N) + delta(x, z, z0, qp(2), N);
    check_equal(lambda(1, z, z0, zp, N), -plain, N);
}

TEST_CASE("a vanishing Psi") {
    const QSeries s = psi(0, 3, qp(9), Monomial::minus_one(), Monomial::minus_one(), qp(18), 60);
    CHECK(s.is_zero());
}
