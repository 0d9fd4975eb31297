#ifndef QRANK_EXACTNUM_HPP
#define QRANK_EXACTNUM_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qrank {

using BigInt = mpz_class;
using BigRational = mpq_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InverseOfZero : public Error {
public:
    InverseOfZero() : Error("inverse of zero") {}
};

/// Raised when a chosen parameter value hits a pole or a vanishing divisor.
class NonGenericParameter : public Error {
public:
    using Error::Error;
};

/// Small exact rational with 64-bit parts, used for q-exponents and
/// root-of-unity turns. Always normalized, denominator positive.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    std::int64_t floor() const;
    std::int64_t ceil() const;
    /// Fractional part in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    Rational operator-() const { return Rational(-num_, den_); }
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const;
    /// Parses "p", "p/q" or "-p/q".
    static Rational parse(const std::string& text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);

/// Coefficients (constant term first) of the L-th cyclotomic polynomial,
/// obtained by exact division of x^L - 1 by the Phi_d with d | L, d < L.
std::vector<BigInt> cyclo_polynomial(std::int64_t L);

/// Q(zeta_L) for a normalized level L (odd or divisible by 4).
/// Instances are created once per level and never destroyed.
class CyclotomicField {
public:
    static const CyclotomicField& get(std::int64_t L);
    /// Q(zeta_{2m}) = Q(zeta_m) for odd m; levels are stored in that form.
    static std::int64_t normalize_level(std::int64_t L);

    std::int64_t level() const { return level_; }
    int degree() const { return degree_; }
    /// Phi_L as small integer coefficients, constant term first (monic).
    const std::vector<long>& modulus() const { return modulus_; }
    /// zeta_L^k reduced mod Phi_L, for any integer k.
    const std::vector<long>& power(std::int64_t k) const;

    /// Reduces an integer polynomial of degree < 2*degree()-1 in place.
    void reduce(std::vector<BigInt>& poly) const;

private:
    explicit CyclotomicField(std::int64_t L);

    std::int64_t level_;
    int degree_;
    std::vector<long> modulus_;
    std::vector<std::vector<long>> powers_;
};

/// An exact element of Q(zeta_L), stored as an integer vector over the
/// power basis with one positive common denominator in lowest terms.
class Cyclotomic {
public:
    Cyclotomic();  // zero in Q
    explicit Cyclotomic(const CyclotomicField& field);
    Cyclotomic(const BigRational& r);  // NOLINT(google-explicit-constructor)
    Cyclotomic(long n) : Cyclotomic(BigRational(n)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(const CyclotomicField& field, std::vector<BigInt> num, BigInt den);

    static Cyclotomic from_rationals(std::int64_t L, const std::vector<BigRational>& coeffs);

    const CyclotomicField& field() const { return *field_; }
    std::int64_t level() const { return field_->level(); }
    const std::vector<BigInt>& numerators() const { return num_; }
    const BigInt& denominator() const { return den_; }
    BigRational coeff(int i) const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Requires is_rational().
    BigRational rational_value() const;

    /// Image under Q(zeta_L) -> Q(zeta_L') for L | L'.
    Cyclotomic embed(std::int64_t L) const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic inv() const;
    Cyclotomic pow(std::int64_t e) const;

    /// Adds sign * zeta_L^k for this element's field (no embedding).
    void add_root_power(std::int64_t k, long sign);

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// "[c0,c1,...]@zeta<L>" with each c_i printed as p/q (or p).
    std::string str() const;

private:
    void normalize();

    const CyclotomicField* field_;
    std::vector<BigInt> num_;
    BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

/// Both operands embedded in Q(zeta_lcm).
std::int64_t common_level(std::int64_t a, std::int64_t b);

/// zeta_den^num in Q(zeta_den): the canonical branch e^{2 pi i num/den}.
Cyclotomic root_of_unity(std::int64_t num, std::int64_t den);
/// Same, from a turn t (zeta = e^{2 pi i t}).
Cyclotomic root_of_unity(const Rational& turn);

/// Normalized level that contains e^{2 pi i t}.
std::int64_t level_of_turn(const Rational& turn);

}  // namespace qrank

#endif  // QRANK_EXACTNUM_HPP
