#include "qrank/exactnum.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qrank {

// ---------------------------------------------------------------------------
// Rational

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return std::abs(a / gcd64(a, b) * b);
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = gcd64(n, d);
    num_ = g ? n / g : 0;
    den_ = g ? d / g : 1;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t l = lcm64(a.den_, b.den_);
    return {a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = gcd64(a.num_, b.den_);
    const std::int64_t g2 = gcd64(b.num_, a.den_);
    const std::int64_t n1 = g1 ? a.num_ / g1 : 0;
    const std::int64_t d2 = g1 ? b.den_ / g1 : b.den_;
    const std::int64_t n2 = g2 ? b.num_ / g2 : 0;
    const std::int64_t d1 = g2 ? a.den_ / g2 : a.den_;
    return {n1 * n2, d1 * d2};
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
    } catch (const std::logic_error&) {
        throw Error("cannot parse rational '" + text + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

namespace {

using IntPoly = std::vector<BigInt>;

// Exact division of a monic-divisor polynomial; throws if a remainder is left.
IntPoly exact_divide(IntPoly num, const IntPoly& div) {
    const std::size_t dn = div.size() - 1;
    if (num.size() < div.size()) throw Error("cyclotomic division degree mismatch");
    IntPoly quot(num.size() - dn);
    for (std::size_t i = num.size(); i-- > dn;) {
        const BigInt c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * div[j];
    }
    for (std::size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw Error("cyclotomic division left a remainder");
    return quot;
}

}  // namespace

std::vector<BigInt> cyclo_polynomial(std::int64_t L) {
    if (L < 1) throw Error("cyclotomic polynomial of non-positive order");
    static std::mutex mu;
    static std::map<std::int64_t, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(L); it != cache.end()) return it->second;
    }
    IntPoly p(static_cast<std::size_t>(L) + 1);
    p[0] = -1;
    p[L] = 1;
    for (std::int64_t d = 1; d < L; ++d)
        if (L % d == 0) p = exact_divide(std::move(p), cyclo_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(L, p);
    return p;
}

// ---------------------------------------------------------------------------
// CyclotomicField

std::int64_t CyclotomicField::normalize_level(std::int64_t L) {
    if (L < 1) throw Error("cyclotomic level must be positive");
    return (L % 4 == 2) ? L / 2 : L;
}

const CyclotomicField& CyclotomicField::get(std::int64_t L) {
    L = normalize_level(L);
    static std::mutex mu;
    static std::map<std::int64_t, std::unique_ptr<CyclotomicField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = registry[L];
    if (!slot) slot.reset(new CyclotomicField(L));
    return *slot;
}

CyclotomicField::CyclotomicField(std::int64_t L) : level_(L) {
    const IntPoly phi = cyclo_polynomial(L);
    degree_ = static_cast<int>(phi.size()) - 1;
    for (const auto& c : phi) {
        if (!c.fits_slong_p()) throw Error("cyclotomic modulus coefficient overflow");
        modulus_.push_back(c.get_si());
    }
    // zeta^k for k in [0, L): shift-and-reduce from zeta^{k-1}.
    powers_.assign(static_cast<std::size_t>(L), std::vector<long>(degree_, 0));
    powers_[0][0] = 1;
    for (std::int64_t k = 1; k < L; ++k) {
        const auto& prev = powers_[k - 1];
        auto& cur = powers_[k];
        const long top = prev[degree_ - 1];
        for (int i = degree_ - 1; i > 0; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < degree_; ++i) cur[i] -= top * modulus_[i];
    }
}

const std::vector<long>& CyclotomicField::power(std::int64_t k) const {
    k %= level_;
    if (k < 0) k += level_;
    return powers_[static_cast<std::size_t>(k)];
}

void CyclotomicField::reduce(std::vector<BigInt>& poly) const {
    const std::size_t n = static_cast<std::size_t>(degree_);
    for (std::size_t i = poly.size(); i-- > n;) {
        if (poly[i] == 0) continue;
        const BigInt c = poly[i];
        for (std::size_t j = 0; j < n; ++j) {
            const long m = modulus_[j];
            if (m == 0) continue;
            if (m == 1)
                poly[i - n + j] -= c;
            else if (m == -1)
                poly[i - n + j] += c;
            else
                poly[i - n + j] -= c * m;
        }
        poly[i] = 0;
    }
    if (poly.size() > n) poly.resize(n);
    while (poly.size() < n) poly.emplace_back(0);
}

std::int64_t common_level(std::int64_t a, std::int64_t b) {
    return CyclotomicField::normalize_level(lcm64(a, b));
}

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic() : Cyclotomic(CyclotomicField::get(1)) {}

Cyclotomic::Cyclotomic(const CyclotomicField& field)
    : field_(&field), num_(static_cast<std::size_t>(field.degree()), BigInt(0)), den_(1) {}

Cyclotomic::Cyclotomic(const BigRational& r) : Cyclotomic() {
    num_[0] = r.get_num();
    den_ = r.get_den();
}

Cyclotomic::Cyclotomic(const CyclotomicField& field, std::vector<BigInt> num, BigInt den)
    : field_(&field), num_(std::move(num)), den_(std::move(den)) {
    if (num_.size() > static_cast<std::size_t>(field.degree())) field.reduce(num_);
    num_.resize(static_cast<std::size_t>(field.degree()));
    normalize();
}

Cyclotomic Cyclotomic::from_rationals(std::int64_t L, const std::vector<BigRational>& coeffs) {
    // sum_i c_i zeta_L^i, valid for any number of coefficients.
    Cyclotomic acc(CyclotomicField::get(L));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        acc += root_of_unity(static_cast<std::int64_t>(i), L) * Cyclotomic(coeffs[i]);
    }
    return acc;
}

BigRational Cyclotomic::coeff(int i) const {
    BigRational r(num_[static_cast<std::size_t>(i)], den_);
    r.canonicalize();
    return r;
}

void Cyclotomic::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    BigInt g = den_;
    for (const auto& c : num_) {
        if (c == 0) continue;
        g = gcd(g, c);
        if (g == 1) return;
    }
    if (g == den_ && std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; })) {
        den_ = 1;
        return;
    }
    for (auto& c : num_) c /= g;
    den_ /= g;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const BigInt& c) { return c == 0; });
}

bool Cyclotomic::is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

BigRational Cyclotomic::rational_value() const {
    if (!is_rational()) throw Error("cyclotomic element is not rational");
    return coeff(0);
}

Cyclotomic Cyclotomic::embed(std::int64_t L) const {
    const auto& target = CyclotomicField::get(L);
    if (&target == field_) return *this;
    if (target.level() % field_->level() != 0) throw Error("invalid cyclotomic embedding");
    const std::int64_t step = target.level() / field_->level();
    std::vector<BigInt> out(static_cast<std::size_t>(target.degree()), BigInt(0));
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const auto& p = target.power(static_cast<std::int64_t>(i) * step);
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j] != 0) out[j] += num_[i] * p[j];
    }
    return {target, std::move(out), den_};
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (field_ != o.field_) {
        const std::int64_t L = common_level(level(), o.level());
        *this = embed(L);
        return *this += o.embed(L);
    }
    if (den_ == o.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    } else {
        const BigInt l = lcm(den_, o.den_);
        const BigInt fa = l / den_;
        const BigInt fb = l / o.den_;
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * fa + o.num_[i] * fb;
        den_ = l;
    }
    normalize();
    return *this;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    Cyclotomic r = a;
    r += b;
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    Cyclotomic r = a;
    r += -b;
    return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.field_ != b.field_) {
        const std::int64_t L = common_level(a.level(), b.level());
        return a.embed(L) * b.embed(L);
    }
    const auto& field = *a.field_;
    const std::size_t n = a.num_.size();
    if (b.is_rational()) {
        std::vector<BigInt> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = a.num_[i] * b.num_[0];
        return {field, std::move(out), a.den_ * b.den_};
    }
    if (a.is_rational()) return b * a;
    std::vector<BigInt> prod(2 * n - 1, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.num_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.num_[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
    }
    field.reduce(prod);
    return {field, std::move(prod), a.den_ * b.den_};
}

namespace {

using QPoly = std::vector<BigRational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// (quotient, remainder) of a / b over Q; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, BigRational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const BigRational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    return {q, a};
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
    QPoly r(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1), BigRational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
    trim(r);
    return r;
}

}  // namespace

Cyclotomic Cyclotomic::inv() const {
    if (is_zero()) throw InverseOfZero();
    if (is_rational()) return Cyclotomic(BigRational(den_, num_[0])).embed(level());
    // Extended Euclid in Q[x] against Phi_L.
    QPoly r0, r1, s0, s1{BigRational(1)};
    for (long c : field_->modulus()) r0.emplace_back(c);
    for (const auto& c : num_) r1.emplace_back(c);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = sub_mul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi_L is irreducible.
    const BigRational c = r0[0];
    std::vector<BigRational> coeffs;
    for (auto& s : s0) coeffs.push_back(s / c);
    BigInt den = 1;
    for (auto& s : coeffs) den = lcm(den, BigInt(s.get_den()));
    std::vector<BigInt> num;
    for (auto& s : coeffs) num.emplace_back(s.get_num() * (den / s.get_den()));
    if (num.size() < num_.size()) num.resize(num_.size(), BigInt(0));
    // Undo the stored denominator: (num/den_)^{-1} = den_ * (num)^{-1}.
    for (auto& v : num) v *= den_;
    return {*field_, std::move(num), std::move(den)};
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic result = Cyclotomic(BigRational(1)).embed(level());
    Cyclotomic base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

void Cyclotomic::add_root_power(std::int64_t k, long sign) {
    const auto& p = field_->power(k);
    if (den_ == 1) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] != 0) num_[i] += sign * p[i];
        return;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) num_[i] += den_ * (sign * p[i]);
    normalize();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.field_ != b.field_) {
        const std::int64_t L = common_level(a.level(), b.level());
        return a.embed(L) == b.embed(L);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (i) os << ',';
        os << coeff(static_cast<int>(i)).get_str();
    }
    os << "]@zeta" << level();
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

// ---------------------------------------------------------------------------
// Roots of unity

std::int64_t level_of_turn(const Rational& turn) {
    return CyclotomicField::normalize_level(turn.frac().den());
}

Cyclotomic root_of_unity(const Rational& turn) {
    const Rational t = turn.frac();
    const std::int64_t b = t.den();
    const std::int64_t a = t.num();
    const auto& field = CyclotomicField::get(b);
    Cyclotomic r(field);
    if (field.level() == b) {
        r.add_root_power(a, 1);
    } else {
        // b = 2m with m odd: zeta_b = -zeta_m^{(m+1)/2}.
        const std::int64_t m = b / 2;
        r.add_root_power(a * ((m + 1) / 2), (a % 2 == 0) ? 1 : -1);
    }
    return r;
}

Cyclotomic root_of_unity(std::int64_t num, std::int64_t den) {
    if (den < 1) throw Error("root of unity needs a positive order");
    return root_of_unity(Rational(num, den));
}

}  // namespace qrank
