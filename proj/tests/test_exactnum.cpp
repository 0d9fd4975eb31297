#include "doctest.h"

#include <random>

#include "qrank/exactnum.hpp"

using namespace qrank;

namespace {

// Naive oracle: Phi_L from the product of (x - zeta) is unavailable exactly,
// so instead use the Moebius formula Phi_L = prod_{d|L} (x^d - 1)^{mu(L/d)}.
int mobius(std::int64_t n) {
    int result = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<BigInt> mul_poly(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Divides a by the monic b exactly.
std::vector<BigInt> div_poly(std::vector<BigInt> a, const std::vector<BigInt>& b) {
    std::vector<BigInt> q(a.size() - b.size() + 1, BigInt(0));
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = a[i + b.size() - 1];
        for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
    }
    for (const auto& c : a) REQUIRE(c == 0);
    return q;
}

std::vector<BigInt> mobius_cyclo(std::int64_t L) {
    std::vector<BigInt> num{BigInt(1)}, den{BigInt(1)};
    for (std::int64_t d = 1; d <= L; ++d) {
        if (L % d) continue;
        std::vector<BigInt> f(static_cast<std::size_t>(d) + 1, BigInt(0));
        f[0] = -1;
        f.back() = 1;
        const int mu = mobius(L / d);
        if (mu == 1) num = mul_poly(num, f);
        if (mu == -1) den = mul_poly(den, f);
    }
    auto q = div_poly(num, den);
    if (q.back() < 0)
        for (auto& c : q) c = -c;
    return q;
}

Cyclotomic random_element(std::mt19937& rng, std::int64_t L) {
    std::uniform_int_distribution<int> dist(-5, 5);
    Cyclotomic acc = Cyclotomic(0);
    for (std::int64_t k = 0; k < L; ++k) {
        const int c = dist(rng);
        acc += root_of_unity(k, L) * Cyclotomic(BigRational(c, 1 + std::abs(dist(rng))));
    }
    return acc;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclo_polynomial(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclo_polynomial(3) == std::vector<BigInt>{1, 1, 1});
    CHECK(cyclo_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
    for (std::int64_t L = 1; L <= 60; ++L) CHECK(cyclo_polynomial(L) == mobius_cyclo(L));
    CHECK(cyclo_polynomial(105) == mobius_cyclo(105));
}

TEST_CASE("rational helper") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-3, 2).floor() == -2);
    CHECK(Rational(-3, 2).ceil() == -1);
    CHECK(Rational(-3, 2).frac() == Rational(1, 2));
    CHECK(Rational::parse("-7/21") == Rational(-1, 3));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("basic field arithmetic") {
    const Cyclotomic z3 = root_of_unity(1, 3);
    CHECK((z3 * z3.pow(2)).is_one());
    CHECK(z3 + z3.pow(2) == Cyclotomic(-1));
    // (1 - z)(2 + z)/3 = (2 - z - z^2)/3 = 1
    const Cyclotomic expected = (Cyclotomic(2) + z3) * Cyclotomic(BigRational(1, 3));
    CHECK((Cyclotomic(1) - z3).inv() == expected);
    CHECK_THROWS_AS(Cyclotomic(0).inv(), InverseOfZero);
    CHECK_THROWS_AS((z3 + z3.pow(2) + Cyclotomic(1)).inv(), InverseOfZero);
}

TEST_CASE("roots of unity and embeddings") {
    CHECK(root_of_unity(1, 1).is_one());
    CHECK(root_of_unity(3, 6) == Cyclotomic(-1));
    CHECK(root_of_unity(1, 3).embed(12) == root_of_unity(4, 12));
    CHECK(root_of_unity(Rational(7, 4)) == root_of_unity(3, 4));
    // zeta_10 lives in Q(zeta_5)
    CHECK(root_of_unity(1, 10).level() == 5);
    CHECK(root_of_unity(1, 10).pow(5) == Cyclotomic(-1));
    CHECK(root_of_unity(1, 10).pow(2) == root_of_unity(1, 5));
    for (std::int64_t L : {1, 3, 4, 5, 7, 9, 12, 15, 20, 21, 36}) {
        CHECK(root_of_unity(1, L).pow(L).is_one());
        CHECK(root_of_unity(L - 1, L) * root_of_unity(1, L) == Cyclotomic(1));
    }
    const Cyclotomic a = root_of_unity(2, 5) + Cyclotomic(BigRational(3, 7));
    CHECK(a.embed(15).embed(60) == a.embed(60));
    CHECK(a.embed(60) == a.embed(15).embed(60));
    CHECK(a.embed(15) != root_of_unity(2, 5).embed(15));
}

TEST_CASE("character sums over roots of unity") {
    for (std::int64_t n : {1, 2, 3, 4, 5, 6, 8, 9, 12}) {
        for (std::int64_t s = -13; s <= 13; ++s) {
            Cyclotomic sum = 0;
            for (std::int64_t j = 0; j < n; ++j) sum += root_of_unity(s * j, n);
            CHECK(sum == Cyclotomic(s % n == 0 ? n : 0));
        }
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(1234);
    for (std::int64_t L : {3, 5, 7, 12, 15, 21}) {
        for (int trial = 0; trial < 6; ++trial) {
            const Cyclotomic a = random_element(rng, L);
            const Cyclotomic b = random_element(rng, L);
            const Cyclotomic c = random_element(rng, 4);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a - a == Cyclotomic(0));
            if (!a.is_zero()) CHECK((a * a.inv()).is_one());
            if (!b.is_zero()) CHECK((a / b) * b == a);
        }
    }
}

TEST_CASE("string form") {
    CHECK(root_of_unity(1, 3).str() == "[0,1]@zeta3");
    CHECK(Cyclotomic(BigRational(-2, 3)).str() == "[-2/3]@zeta1");
}
