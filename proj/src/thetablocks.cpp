#include "qrank/thetablocks.hpp"

#include <algorithm>

namespace qrank {

namespace {

// Exponent of the n-th term of j(c q^e; q^p).
Rational term_exponent(std::int64_t n, const Rational& e, const Rational& p) {
    return p * Rational(n * (n - 1), 2) + e * Rational(n);
}

// Index of a minimizing term (the vertex of the parabola, rounded).
std::int64_t vertex(const Rational& e, const Rational& p) {
    const Rational star = Rational(1, 2) - e / p;
    return (star + Rational(1, 2)).floor();
}

bool vanishing_theta(const Monomial& z, const Rational& p) {
    return z.is_pure_power() && (z.exp() / p).is_integer();
}

}  // namespace

std::optional<Rational> theta_valuation(const Monomial& z, const Rational& p) {
    if (p <= Rational(0)) throw Error("theta base must be a positive power of q");
    if (vanishing_theta(z, p)) return std::nullopt;
    const std::int64_t n0 = vertex(z.exp(), p);
    Rational best = term_exponent(n0, z.exp(), p);
    for (std::int64_t n : {n0 - 1, n0 + 1}) best = std::min(best, term_exponent(n, z.exp(), p));
    return best;
}

QSeries theta_j(const Monomial& z, const Rational& p, const Rational& order) {
    if (p <= Rational(0)) throw Error("theta base must be a positive power of q");
    if (vanishing_theta(z, p)) return QSeries();
    const Rational e = z.exp();
    const std::int64_t n0 = vertex(e, p);
    // Terms below `order` form a contiguous block around the vertex; one
    // extra term on each side is included as margin.
    std::int64_t lo = n0, hi = n0;
    while (term_exponent(lo - 1, e, p) < order) --lo;
    while (term_exponent(hi + 1, e, p) < order) ++hi;
    --lo;
    ++hi;
    std::int64_t D = lcm64(order.den(), lcm64(e.den(), p.den() * 2));
    std::vector<std::pair<std::int64_t, Cyclotomic>> raw;
    std::int64_t first = QSeries::kExact;
    const std::int64_t L = level_of_turn(z.turn() + Rational(1, 2));
    for (std::int64_t n = lo; n <= hi; ++n) {
        const Rational ex = term_exponent(n, e, p);
        if (ex >= order) continue;
        const std::int64_t idx = (ex * Rational(D)).num();
        raw.emplace_back(idx, root_of_unity((z.turn() + Rational(1, 2)) * Rational(n)).embed(L));
        first = std::min(first, idx);
    }
    const std::int64_t ord_idx = (order * Rational(D)).ceil();
    if (raw.empty()) return QSeries::zero(Rational(ord_idx, D));
    std::vector<Cyclotomic> coeffs(static_cast<std::size_t>(ord_idx - first), Cyclotomic(CyclotomicField::get(L)));
    for (auto& [idx, c] : raw) coeffs[static_cast<std::size_t>(idx - first)] += c;
    return QSeries::from_coefficients(D, first, std::move(coeffs), ord_idx).normalized_denom();
}

QSeries theta_j(const Monomial& z, const Monomial& base, const Rational& order) {
    if (!base.is_pure_power()) throw Error("theta base must be a pure power of q");
    return theta_j(z, base.exp(), order);
}

QSeries theta_j2(const Monomial& z1, const Monomial& z2, const Monomial& base, const Rational& order) {
    return ThetaQuotient().theta(z1, base.exp()).theta(z2, base.exp()).expand(order);
}

IdentityReport theta_shift_check(const Monomial& x, std::int64_t n, const Monomial& base, const Rational& order) {
    const Rational p = base.exp();
    const std::string inst = "x=" + x.str() + ", n=" + std::to_string(n) + ", base=" + base.str();
    const QSeries lhs = theta_j(x * base.pow(n), p, order);
    // (-1)^n q^{-p n(n-1)/2} x^{-n} j(x)
    const Monomial pre = Monomial::minus_one().pow(n) * Monomial::q_power(-p * Rational(n * (n - 1), 2)) * x.pow(-n);
    const Rational inner = order - pre.exp();
    const QSeries rhs = theta_j(x, p, inner) * pre;
    IdentityReport r = compare_series("j1", inst, lhs, rhs, order);
    if (!r.passed()) return r;
    const QSeries refl = theta_j(base / x, p, order);
    IdentityReport r2 = compare_series("j2", inst, theta_j(x, p, order), refl, order);
    r2.id = "j1+j2";
    return r2;
}

ThetaQuotient& ThetaQuotient::times(const Monomial& m) {
    mono_ = mono_ * m;
    return *this;
}

ThetaQuotient& ThetaQuotient::times(const Cyclotomic& c) {
    scale_ = scale_ * c;
    return *this;
}

ThetaQuotient& ThetaQuotient::J(const Rational& m, std::int64_t power) {
    if (m <= Rational(0)) throw Error("J_m needs m > 0");
    if (power != 0) factors_.push_back({true, Monomial(), m, power});
    return *this;
}

ThetaQuotient& ThetaQuotient::theta(const Monomial& z, const Rational& p, std::int64_t power) {
    if (power != 0) factors_.push_back({false, z, p, power});
    return *this;
}

ThetaQuotient& ThetaQuotient::operator*=(const ThetaQuotient& o) {
    scale_ = scale_ * o.scale_;
    mono_ = mono_ * o.mono_;
    factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
    return *this;
}

bool ThetaQuotient::vanishes() const {
    bool zero = scale_.is_zero();
    for (const auto& f : factors_) {
        if (f.is_eta || !vanishing_theta(f.z, f.p)) continue;
        if (f.power < 0)
            throw NonGenericParameter("theta divisor j(" + f.z.str() + ";q^" + f.p.str() + ") vanishes");
        zero = true;
    }
    return zero;
}

Rational ThetaQuotient::valuation() const {
    if (vanishes()) throw Error("valuation of a vanishing theta quotient");
    Rational v = mono_.exp();
    for (const auto& f : factors_)
        if (!f.is_eta) v += *theta_valuation(f.z, f.p) * Rational(f.power);
    return v;
}

QSeries ThetaQuotient::expand(const Rational& order) const {
    if (vanishes()) return QSeries();
    const Rational V = valuation();
    if (order <= V) return QSeries::zero(order);
    // Each factor s must be known to N - V + v(s) for the product to reach N.
    QSeries result = QSeries::monomial(mono_, scale_);
    for (const auto& f : factors_) {
        QSeries s;
        Rational need = order - V;
        if (f.is_eta) {
            s = substitute_q_power(eta_J(1, need / f.p), f.p);
        } else {
            need += *theta_valuation(f.z, f.p);
            s = theta_j(f.z, f.p, need);
        }
        result *= pow(s, f.power);
    }
    result = result.truncate(order);
    if (!result.is_exact() && result.finite_order() < order)
        throw Error("internal: theta quotient reached only q^" + result.finite_order().str());
    return result;
}

}  // namespace qrank
