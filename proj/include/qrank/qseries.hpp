#ifndef QRANK_QSERIES_HPP
#define QRANK_QSERIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qrank/exactnum.hpp"

namespace qrank {

class FractionalExponents : public Error {
public:
    FractionalExponents() : Error("series has fractional exponents") {}
};

/// A symbolic parameter zeta * q^exp with zeta = e^{2 pi i turn}.
/// Every x, z, z', z0 argument of the theta and Appell-Lerch functions has
/// this form.
class Monomial {
public:
    Monomial() = default;
    Monomial(Rational turn, Rational exp) : turn_(turn.frac()), exp_(exp) {}

    static Monomial q_power(Rational e) { return {Rational(0), e}; }
    static Monomial root(Rational turn) { return {turn, Rational(0)}; }
    static Monomial zeta(std::int64_t order, std::int64_t k = 1) { return root(Rational(k, order)); }
    static Monomial minus_one() { return root(Rational(1, 2)); }
    static Monomial one() { return {}; }

    /// Parses "1", "-1", "q^<rat>", "zeta<L>^<k>", "-zeta<L>^<k>", "zeta<L>^<k>*q^<rat>".
    static Monomial parse(const std::string& text);

    const Rational& turn() const { return turn_; }
    const Rational& exp() const { return exp_; }
    bool is_pure_power() const { return turn_ == Rational(0); }
    bool is_constant() const { return exp_ == Rational(0); }

    Cyclotomic coeff() const { return root_of_unity(turn_); }
    /// Smallest normalized cyclotomic level holding the coefficient.
    std::int64_t level() const { return level_of_turn(turn_); }

    Monomial operator-() const { return {turn_ + Rational(1, 2), exp_}; }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        return {a.turn_ + b.turn_, a.exp_ + b.exp_};
    }
    friend Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.inv(); }
    Monomial inv() const { return {-turn_, -exp_}; }
    Monomial pow(std::int64_t e) const { return {turn_ * Rational(e), exp_ * Rational(e)}; }
    /// Canonical d-th root: turn/d with turn in [0, 1).
    Monomial root_branch(std::int64_t d) const { return {turn_ / Rational(d), exp_ / Rational(d)}; }
    /// (z^{1/den})^{num} on the canonical branch.
    Monomial pow(const Rational& e) const { return root_branch(e.den()).pow(e.num()); }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.turn_ == b.turn_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string str() const;

private:
    Rational turn_{0};
    Rational exp_{0};
};

/// Truncated Laurent series in q^{1/D} over Q(zeta_L).
///
/// Coefficients are stored densely from the first nonzero exponent; every
/// exponent strictly below order() is known exactly, everything at or above
/// it is unknown. Exact series (finite sums) report order() as infinite.
class QSeries {
public:
    static constexpr std::int64_t kExact = INT64_MAX / 4;

    /// The exact zero series.
    QSeries();
    static QSeries zero(Rational order);
    static QSeries constant(const Cyclotomic& c);
    static QSeries monomial(const Monomial& m, const Cyclotomic& scale = Cyclotomic(1));
    /// Coefficient i of `coeffs` belongs to exponent (first + i)/denom; known below ord_index/denom.
    static QSeries from_coefficients(std::int64_t denom, std::int64_t first,
                                     std::vector<Cyclotomic> coeffs, std::int64_t ord_index);

    std::int64_t denom() const { return denom_; }
    std::int64_t level() const { return level_; }
    bool is_exact() const { return ord_ == kExact; }
    bool is_zero() const { return coeffs_.empty(); }
    std::optional<Rational> order() const;
    /// Order as a rational; throws for exact series.
    Rational finite_order() const;
    /// Lowest exponent with a nonzero coefficient; for a zero series, the order.
    Rational valuation() const;
    /// Coefficient of q^e; throws if e is at or beyond the order.
    Cyclotomic coeff(const Rational& e) const;
    bool known(const Rational& e) const;

    /// Index-level access: exponent index/denom.
    std::int64_t first_index() const { return val_; }
    std::int64_t order_index() const { return ord_; }
    const std::vector<Cyclotomic>& coefficients() const { return coeffs_; }

    /// Nonzero terms as (exponent, coefficient).
    std::vector<std::pair<Rational, Cyclotomic>> terms() const;

    QSeries truncate(const Rational& order) const;
    QSeries with_denom(std::int64_t D) const;
    QSeries embed(std::int64_t L) const;
    /// Smallest denominator that still represents all exponents.
    QSeries normalized_denom() const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const Cyclotomic& c);
    friend QSeries operator*(const Cyclotomic& c, const QSeries& a) { return a * c; }
    friend QSeries operator*(const QSeries& a, const Monomial& m);
    friend QSeries operator*(const Monomial& m, const QSeries& a) { return a * m; }
    QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
    QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    std::string str() const;

private:
    void trim();

    std::int64_t denom_ = 1;
    std::int64_t level_ = 1;
    std::int64_t val_ = 0;
    std::int64_t ord_ = kExact;
    std::vector<Cyclotomic> coeffs_;
};

/// Multiplicative inverse. Exact inputs with more than one term need `cap`,
/// the order at which the infinite expansion is cut.
/// Throws NonGenericParameter when the input is identically zero.
QSeries invert(const QSeries& a, std::optional<Rational> cap = std::nullopt);

QSeries pow(const QSeries& a, std::int64_t e, std::optional<Rational> cap = std::nullopt);

/// 1/(1 - u) expanded in the direction in which it converges formally.
/// Throws NonGenericParameter for u = 1.
QSeries geometric(const Monomial& u, const Rational& order);

/// J_m = prod_{k >= 1} (1 - q^{mk}) up to `order`.
QSeries eta_J(std::int64_t m, const Rational& order);

/// Product of J_m^{e_m} for (m, e_m) pairs.
QSeries eta_quotient(const std::vector<std::pair<std::int64_t, std::int64_t>>& factors,
                     const Rational& order);

/// F_0..F_{N-1} with a = sum_k q^k F_k(q^N).
std::vector<QSeries> dissect(const QSeries& a, std::int64_t parts);
/// Inverse of dissect.
QSeries undissect(const std::vector<QSeries>& components);

/// Every exponent e becomes r*e.
QSeries substitute_q_power(const QSeries& a, const Rational& r);

struct Mismatch {
    Rational exponent;
    Cyclotomic lhs;
    Cyclotomic rhs;
};

/// First exponent below `order` where a and b differ; both must be known there.
std::optional<Mismatch> first_mismatch(const QSeries& a, const QSeries& b, const Rational& order);

/// {"D":..,"L":..,"order":..,"terms":[[exp_numerator,[c0,c1,..]],..]}.
nlohmann::json to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace qrank

#endif  // QRANK_QSERIES_HPP
