#include "qrank/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qrank {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a >= QSeries::kExact || b >= QSeries::kExact) return QSeries::kExact;
    return a + b;
}

// Index bound for "exponents < order" at denominator D.
std::int64_t index_bound(const Rational& order, std::int64_t D) {
    return Rational(order.num() * D, order.den()).ceil();
}

// Sums products of cyclotomic coefficients without reducing after each term.
class ProductAccumulator {
public:
    explicit ProductAccumulator(const CyclotomicField& field)
        : field_(field), n_(static_cast<std::size_t>(field.degree())), poly_(2 * n_ - 1, BigInt(0)) {}

    void addmul(const Cyclotomic& a, const Cyclotomic& b) {
        const auto& an = a.numerators();
        const auto& bn = b.numerators();
        const bool unit = (a.denominator() == 1 && b.denominator() == 1);
        if (!unit || den_ != 1) {
            const BigInt d = a.denominator() * b.denominator();
            if (d != den_) {
                const BigInt l = lcm(den_, d);
                if (l != den_) {
                    const BigInt up = l / den_;
                    for (auto& c : poly_)
                        if (c != 0) c *= up;
                    den_ = l;
                }
                factor_ = l / d;
                scaled_ = (factor_ != 1);
            } else {
                scaled_ = false;
            }
        } else {
            scaled_ = false;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (an[i] == 0) continue;
            if (scaled_) tmp_ = an[i] * factor_;
            const mpz_srcptr ai = scaled_ ? tmp_.get_mpz_t() : an[i].get_mpz_t();
            for (std::size_t j = 0; j < n_; ++j) {
                if (bn[j] == 0) continue;
                mpz_addmul(poly_[i + j].get_mpz_t(), ai, bn[j].get_mpz_t());
            }
        }
        touched_ = true;
    }

    bool touched() const { return touched_; }

    Cyclotomic finish() {
        field_.reduce(poly_);
        Cyclotomic r(field_, std::move(poly_), den_);
        poly_.assign(2 * n_ - 1, BigInt(0));
        den_ = 1;
        touched_ = false;
        return r;
    }

private:
    const CyclotomicField& field_;
    std::size_t n_;
    std::vector<BigInt> poly_;
    BigInt den_ = 1;
    BigInt factor_ = 1;
    BigInt tmp_;
    bool scaled_ = false;
    bool touched_ = false;
};

std::pair<QSeries, QSeries> align(const QSeries& a, const QSeries& b) {
    const std::int64_t D = lcm64(a.denom(), b.denom());
    const std::int64_t L = common_level(a.level(), b.level());
    return {a.with_denom(D).embed(L), b.with_denom(D).embed(L)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Monomial

std::string Monomial::str() const {
    std::string out;
    if (turn_ == Rational(1, 2)) {
        out = "-1";
    } else if (turn_ != Rational(0)) {
        out = "zeta" + std::to_string(turn_.den()) + "^" + std::to_string(turn_.num());
    }
    if (exp_ != Rational(0)) {
        if (!out.empty()) out += "*";
        out += "q^" + exp_.str();
    }
    return out.empty() ? "1" : out;
}

Monomial Monomial::parse(const std::string& text) {
    if (text.empty()) throw Error("empty monomial");
    Monomial result;
    std::string rest = text;
    if (rest[0] == '-') {
        result = -result;
        rest = rest.substr(1);
    }
    std::stringstream ss(rest);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        if (factor == "1") continue;
        if (factor.rfind("zeta", 0) == 0) {
            const auto caret = factor.find('^');
            const std::int64_t order = std::stoll(factor.substr(4, caret == std::string::npos ? std::string::npos : caret - 4));
            const std::int64_t k = caret == std::string::npos ? 1 : std::stoll(factor.substr(caret + 1));
            if (order < 1) throw Error("root order must be positive in '" + text + "'");
            result = result * Monomial::zeta(order, k);
        } else if (factor == "q") {
            result = result * Monomial::q_power(1);
        } else if (factor.rfind("q^", 0) == 0) {
            result = result * Monomial::q_power(Rational::parse(factor.substr(2)));
        } else {
            throw Error("cannot parse monomial factor '" + factor + "'");
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// QSeries basics

QSeries::QSeries() = default;

QSeries QSeries::zero(Rational order) {
    QSeries s;
    s.denom_ = order.den();
    s.ord_ = order.num();
    s.val_ = s.ord_;
    return s;
}

QSeries QSeries::constant(const Cyclotomic& c) {
    QSeries s;
    s.level_ = c.level();
    if (!c.is_zero()) s.coeffs_.push_back(c);
    return s;
}

QSeries QSeries::monomial(const Monomial& m, const Cyclotomic& scale) {
    QSeries s;
    const Cyclotomic c = m.coeff() * scale;
    s.level_ = c.level();
    s.denom_ = m.exp().den();
    s.val_ = m.exp().num();
    if (!c.is_zero()) s.coeffs_.push_back(c);
    s.trim();
    return s;
}

QSeries QSeries::from_coefficients(std::int64_t denom, std::int64_t first,
                                   std::vector<Cyclotomic> coeffs, std::int64_t ord_index) {
    QSeries s;
    s.denom_ = denom;
    s.val_ = first;
    s.ord_ = ord_index;
    std::int64_t L = 1;
    for (const auto& c : coeffs) L = common_level(L, c.level());
    for (auto& c : coeffs) c = c.embed(L);
    s.level_ = L;
    if (ord_index < kExact && first + static_cast<std::int64_t>(coeffs.size()) > ord_index)
        coeffs.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, ord_index - first)));
    s.coeffs_ = std::move(coeffs);
    s.trim();
    return s;
}

void QSeries::trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = (ord_ == kExact) ? 0 : ord_;
        return;
    }
    while (coeffs_.back().is_zero()) coeffs_.pop_back();
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<std::int64_t>(lead);
    }
}

std::optional<Rational> QSeries::order() const {
    if (is_exact()) return std::nullopt;
    return Rational(ord_, denom_);
}

Rational QSeries::finite_order() const {
    if (is_exact()) throw Error("exact series has no finite order");
    return {ord_, denom_};
}

Rational QSeries::valuation() const {
    if (coeffs_.empty()) {
        if (is_exact()) throw Error("valuation of the exact zero series");
        return {ord_, denom_};
    }
    return {val_, denom_};
}

bool QSeries::known(const Rational& e) const {
    if (is_exact()) return true;
    return e < Rational(ord_, denom_);
}

Cyclotomic QSeries::coeff(const Rational& e) const {
    if (!known(e)) throw Error("coefficient of q^" + e.str() + " is beyond the truncation order");
    const Rational scaled = e * Rational(denom_);
    if (!scaled.is_integer()) return Cyclotomic(0).embed(level_);
    const std::int64_t i = scaled.num() - val_;
    if (i < 0 || i >= static_cast<std::int64_t>(coeffs_.size())) return Cyclotomic(0).embed(level_);
    return coeffs_[static_cast<std::size_t>(i)];
}

std::vector<std::pair<Rational, Cyclotomic>> QSeries::terms() const {
    std::vector<std::pair<Rational, Cyclotomic>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero())
            out.emplace_back(Rational(val_ + static_cast<std::int64_t>(i), denom_), coeffs_[i]);
    return out;
}

QSeries QSeries::truncate(const Rational& order) const {
    const std::int64_t D = lcm64(denom_, order.den());
    QSeries s = with_denom(D);
    const std::int64_t idx = index_bound(order, D);
    if (idx >= s.ord_) return s.normalized_denom();
    s.ord_ = idx;
    if (s.val_ + static_cast<std::int64_t>(s.coeffs_.size()) > idx)
        s.coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, idx - s.val_)));
    s.trim();
    return s.normalized_denom();
}

QSeries QSeries::with_denom(std::int64_t D) const {
    if (D == denom_) return *this;
    if (D % denom_ != 0) throw Error("denominator rescale must be a multiple");
    const std::int64_t s = D / denom_;
    QSeries r;
    r.denom_ = D;
    r.level_ = level_;
    r.ord_ = is_exact() ? kExact : ord_ * s;
    r.val_ = val_ * s;
    if (!coeffs_.empty()) {
        r.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(s) + 1, Cyclotomic(0).embed(level_));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i * static_cast<std::size_t>(s)] = coeffs_[i];
    }
    return r;
}

QSeries QSeries::embed(std::int64_t L) const {
    const std::int64_t target = CyclotomicField::get(L).level();
    if (target == level_) return *this;
    QSeries r = *this;
    r.level_ = target;
    for (auto& c : r.coeffs_) c = c.embed(target);
    return r;
}

QSeries QSeries::normalized_denom() const {
    if (denom_ == 1) return *this;
    // The order index must stay representable, so normalization never moves it.
    std::int64_t g = is_exact() ? denom_ : gcd64(denom_, ord_);
    for (std::size_t i = 0; i < coeffs_.size() && g > 1; ++i)
        if (!coeffs_[i].is_zero()) g = gcd64(g, val_ + static_cast<std::int64_t>(i));
    if (g == 1) return *this;
    QSeries r;
    r.denom_ = denom_ / g;
    r.level_ = level_;
    r.ord_ = is_exact() ? kExact : ord_ / g;
    if (coeffs_.empty()) {
        r.val_ = is_exact() ? 0 : r.ord_;
        return r;
    }
    r.val_ = val_ / g;
    for (std::size_t i = 0; i < coeffs_.size(); i += static_cast<std::size_t>(g)) r.coeffs_.push_back(coeffs_[i]);
    r.trim();
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

QSeries operator+(const QSeries& x, const QSeries& y) {
    auto [a, b] = align(x, y);
    QSeries r;
    r.denom_ = a.denom_;
    r.level_ = a.level_;
    r.ord_ = std::min(a.ord_, b.ord_);
    if (a.coeffs_.empty() && b.coeffs_.empty()) {
        r.val_ = r.is_exact() ? 0 : r.ord_;
        return r.normalized_denom();
    }
    std::int64_t lo = QSeries::kExact, hi = -QSeries::kExact;
    for (const QSeries* s : {&a, &b}) {
        if (s->coeffs_.empty()) continue;
        lo = std::min(lo, s->val_);
        hi = std::max(hi, s->val_ + static_cast<std::int64_t>(s->coeffs_.size()));
    }
    hi = std::min(hi, r.ord_);
    if (lo >= hi) {
        r.val_ = r.ord_;
        return r.normalized_denom();
    }
    r.val_ = lo;
    r.coeffs_.assign(static_cast<std::size_t>(hi - lo), Cyclotomic(0).embed(r.level_));
    for (const QSeries* s : {&a, &b}) {
        for (std::size_t i = 0; i < s->coeffs_.size(); ++i) {
            const std::int64_t idx = s->val_ + static_cast<std::int64_t>(i);
            if (idx >= hi) break;
            if (s->coeffs_[i].is_zero()) continue;
            r.coeffs_[static_cast<std::size_t>(idx - lo)] += s->coeffs_[i];
        }
    }
    r.trim();
    return r.normalized_denom();
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& x, const QSeries& y) {
    auto [a, b] = align(x, y);
    QSeries r;
    r.denom_ = a.denom_;
    r.level_ = a.level_;
    const bool a_exact_zero = a.is_exact() && a.coeffs_.empty();
    const bool b_exact_zero = b.is_exact() && b.coeffs_.empty();
    if (a_exact_zero || b_exact_zero) return QSeries().embed(r.level_);
    const std::int64_t va = a.coeffs_.empty() ? a.ord_ : a.val_;
    const std::int64_t vb = b.coeffs_.empty() ? b.ord_ : b.val_;
    r.ord_ = std::min(sat_add(a.ord_, vb), sat_add(b.ord_, va));
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        r.val_ = r.ord_;
        return r.normalized_denom();
    }
    const std::int64_t lo = va + vb;
    std::int64_t hi = va + vb + static_cast<std::int64_t>(a.coeffs_.size() + b.coeffs_.size()) - 1;
    hi = std::min(hi, r.ord_);
    if (lo >= hi) {
        r.val_ = r.ord_;
        return r.normalized_denom();
    }
    const auto& field = CyclotomicField::get(r.level_);
    const std::size_t n_out = static_cast<std::size_t>(hi - lo);
    std::vector<std::size_t> nza, nzb;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (!a.coeffs_[i].is_zero()) nza.push_back(i);
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        if (!b.coeffs_[j].is_zero()) nzb.push_back(j);

    std::vector<ProductAccumulator> acc;
    acc.reserve(n_out);
    for (std::size_t k = 0; k < n_out; ++k) acc.emplace_back(field);
    for (std::size_t i : nza) {
        if (i >= n_out) break;
        for (std::size_t j : nzb) {
            if (i + j >= n_out) break;
            acc[i + j].addmul(a.coeffs_[i], b.coeffs_[j]);
        }
    }
    r.val_ = lo;
    r.coeffs_.reserve(n_out);
    for (auto& ac : acc) r.coeffs_.push_back(ac.touched() ? ac.finish() : Cyclotomic(field));
    r.trim();
    return r.normalized_denom();
}

QSeries operator*(const QSeries& a, const Cyclotomic& c) {
    if (c.is_zero()) return QSeries();
    const std::int64_t L = common_level(a.level_, c.level());
    QSeries r = a.embed(L);
    const Cyclotomic cc = c.embed(L);
    if (cc.is_one()) return r;
    for (auto& x : r.coeffs_)
        if (!x.is_zero()) x = x * cc;
    r.trim();
    return r;
}

QSeries operator*(const QSeries& a, const Monomial& m) {
    QSeries r = a * m.coeff();
    const Rational e = m.exp();
    const std::int64_t D = lcm64(r.denom_, e.den());
    r = r.with_denom(D);
    const std::int64_t shift = e.num() * (D / e.den());
    r.val_ += shift;
    if (!r.is_exact()) r.ord_ += shift;
    return r.normalized_denom();
}

std::string QSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*q^" << e.str();
    }
    if (first) os << "0";
    if (!is_exact()) os << " + O(q^" << finite_order().str() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Inversion and powers

QSeries invert(const QSeries& a, std::optional<Rational> cap) {
    if (a.is_zero()) {
        if (a.is_exact()) throw NonGenericParameter("division by a series that vanishes identically");
        throw NonGenericParameter("division by a series that vanishes to its truncation order q^" +
                                  a.finite_order().str());
    }
    const auto& cs = a.coefficients();
    const std::int64_t D = a.denom();
    const std::int64_t v = a.first_index();
    const Cyclotomic c0_inv = cs.front().inv();
    if (a.is_exact() && cs.size() == 1) {
        return QSeries::from_coefficients(D, -v, {c0_inv}, QSeries::kExact);
    }
    std::int64_t ord_idx;
    if (a.is_exact()) {
        if (!cap) throw Error("inverting an exact multi-term series requires a truncation order");
        ord_idx = index_bound(*cap, D);
    } else {
        ord_idx = a.order_index() - 2 * v;
        if (cap) ord_idx = std::min(ord_idx, index_bound(*cap, D));
    }
    const std::int64_t len = ord_idx + v;  // coefficients from index -v up to ord_idx
    if (len <= 0) return QSeries::zero(Rational(ord_idx, D));

    const auto& field = CyclotomicField::get(a.level());
    // Normalize to leading coefficient 1.
    std::vector<Cyclotomic> an;
    an.reserve(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < cs.size() && static_cast<std::int64_t>(i) < len; ++i)
        an.push_back(cs[i].is_zero() ? cs[i] : cs[i] * c0_inv);
    std::vector<std::size_t> nz;
    for (std::size_t i = 1; i < an.size(); ++i)
        if (!an[i].is_zero()) nz.push_back(i);

    std::vector<Cyclotomic> b;
    b.reserve(static_cast<std::size_t>(len));
    b.push_back(Cyclotomic(1).embed(field.level()));
    ProductAccumulator acc(field);
    for (std::int64_t n = 1; n < len; ++n) {
        for (std::size_t k : nz) {
            if (static_cast<std::int64_t>(k) > n) break;
            if (b[static_cast<std::size_t>(n) - k].is_zero()) continue;
            acc.addmul(an[k], b[static_cast<std::size_t>(n) - k]);
        }
        b.push_back(acc.touched() ? -acc.finish() : Cyclotomic(field));
    }
    if (!c0_inv.is_one())
        for (auto& x : b)
            if (!x.is_zero()) x = x * c0_inv;
    return QSeries::from_coefficients(D, -v, std::move(b), ord_idx);
}

QSeries pow(const QSeries& a, std::int64_t e, std::optional<Rational> cap) {
    if (e < 0) return pow(invert(a, cap), -e, cap);
    QSeries result = QSeries::constant(Cyclotomic(1));
    QSeries base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
        if (cap) {
            result = result.truncate(*cap);
            base = base.truncate(*cap);
        }
    }
    return result;
}

QSeries geometric(const Monomial& u, const Rational& order) {
    const Rational s = u.exp();
    if (s == Rational(0)) {
        if (u.is_pure_power()) throw NonGenericParameter("pole: 1/(1 - u) with u = 1");
        return QSeries::constant((Cyclotomic(1) - u.coeff()).inv());
    }
    const std::int64_t D = lcm64(s.den(), order.den());
    const std::int64_t ord_idx = index_bound(order, D);
    const std::int64_t step = s.num() * (D / s.den());
    std::vector<Cyclotomic> coeffs;
    const std::int64_t L = u.level();
    if (step > 0) {
        // sum_{k >= 0} u^k
        if (ord_idx <= 0) return QSeries::zero(Rational(ord_idx, D));
        coeffs.assign(static_cast<std::size_t>(ord_idx), Cyclotomic(CyclotomicField::get(L)));
        for (std::int64_t k = 0; k * step < ord_idx; ++k)
            coeffs[static_cast<std::size_t>(k * step)] = root_of_unity(u.turn() * Rational(k)).embed(L);
        return QSeries::from_coefficients(D, 0, std::move(coeffs), ord_idx);
    }
    // -sum_{k >= 1} u^{-k}
    const std::int64_t up = -step;
    if (ord_idx <= up) return QSeries::zero(Rational(ord_idx, D));
    coeffs.assign(static_cast<std::size_t>(ord_idx - up), Cyclotomic(CyclotomicField::get(L)));
    for (std::int64_t k = 1; k * up < ord_idx; ++k)
        coeffs[static_cast<std::size_t>(k * up - up)] = -root_of_unity(-u.turn() * Rational(k)).embed(L);
    return QSeries::from_coefficients(D, up, std::move(coeffs), ord_idx);
}

// ---------------------------------------------------------------------------
// Eta products

namespace {

std::vector<BigInt> eta_integer_coeffs(const std::vector<std::pair<std::int64_t, std::int64_t>>& factors,
                                       std::int64_t n) {
    std::vector<BigInt> c(static_cast<std::size_t>(n), BigInt(0));
    if (n > 0) c[0] = 1;
    for (const auto& [m, e] : factors) {
        if (m < 1) throw Error("eta product index must be positive");
        for (std::int64_t t = m; t < n; t += m) {
            const std::size_t st = static_cast<std::size_t>(t);
            if (e > 0) {
                for (std::int64_t rep = 0; rep < e; ++rep)
                    for (std::size_t i = c.size(); i-- > st;) c[i] -= c[i - st];
            } else {
                for (std::int64_t rep = 0; rep < -e; ++rep)
                    for (std::size_t i = st; i < c.size(); ++i) c[i] += c[i - st];
            }
        }
    }
    return c;
}

QSeries integer_series(std::vector<BigInt> c, std::int64_t n) {
    std::vector<Cyclotomic> coeffs;
    coeffs.reserve(c.size());
    for (auto& x : c) coeffs.emplace_back(BigRational(x));
    return QSeries::from_coefficients(1, 0, std::move(coeffs), n);
}

}  // namespace

QSeries eta_J(std::int64_t m, const Rational& order) {
    const std::int64_t n = order.ceil();
    if (n <= 0) return QSeries::zero(Rational(n));
    return integer_series(eta_integer_coeffs({{m, 1}}, n), n);
}

QSeries eta_quotient(const std::vector<std::pair<std::int64_t, std::int64_t>>& factors,
                     const Rational& order) {
    const std::int64_t n = order.ceil();
    if (n <= 0) return QSeries::zero(Rational(n));
    return integer_series(eta_integer_coeffs(factors, n), n);
}

// ---------------------------------------------------------------------------
// Dissection and substitution

std::vector<QSeries> dissect(const QSeries& a_in, std::int64_t parts) {
    if (parts < 1) throw Error("dissection needs at least one part");
    const QSeries a = a_in.normalized_denom();
    if (a.denom() != 1) throw FractionalExponents();
    const auto floor_div = [](std::int64_t x, std::int64_t n) {
        std::int64_t q = x / n;
        if (x % n != 0 && x < 0) --q;
        return q;
    };
    std::vector<std::vector<Cyclotomic>> comps(static_cast<std::size_t>(parts));
    std::vector<std::int64_t> first(static_cast<std::size_t>(parts), 0);
    const auto& cs = a.coefficients();
    const std::int64_t v = a.first_index();
    for (std::int64_t k = 0; k < parts; ++k) {
        // exponents e = k + parts*i with e >= v
        const std::int64_t i0 = floor_div(v - k + parts - 1, parts);
        first[static_cast<std::size_t>(k)] = i0;
        for (std::int64_t e = k + parts * i0; e < v + static_cast<std::int64_t>(cs.size()); e += parts)
            comps[static_cast<std::size_t>(k)].push_back(cs[static_cast<std::size_t>(e - v)]);
    }
    std::vector<QSeries> out;
    for (std::int64_t k = 0; k < parts; ++k) {
        const std::int64_t ord = a.is_exact() ? QSeries::kExact : floor_div(a.order_index() - k + parts - 1, parts);
        out.push_back(QSeries::from_coefficients(1, first[static_cast<std::size_t>(k)],
                                                 std::move(comps[static_cast<std::size_t>(k)]), ord)
                          .embed(a.level()));
    }
    return out;
}

QSeries undissect(const std::vector<QSeries>& components) {
    const std::int64_t n = static_cast<std::int64_t>(components.size());
    QSeries total;
    for (std::int64_t k = 0; k < n; ++k)
        total += substitute_q_power(components[static_cast<std::size_t>(k)], Rational(n)) * Monomial::q_power(k);
    return total;
}

QSeries substitute_q_power(const QSeries& a, const Rational& r) {
    if (r <= Rational(0)) throw Error("q-power substitution needs a positive exponent");
    if (r == Rational(1)) return a;
    std::vector<Cyclotomic> coeffs;
    const auto& cs = a.coefficients();
    const std::int64_t p = r.num();
    const std::int64_t D = a.denom() * r.den();
    if (!cs.empty()) {
        coeffs.assign((cs.size() - 1) * static_cast<std::size_t>(p) + 1, Cyclotomic(CyclotomicField::get(a.level())));
        for (std::size_t i = 0; i < cs.size(); ++i) coeffs[i * static_cast<std::size_t>(p)] = cs[i];
    }
    const std::int64_t ord = a.is_exact() ? QSeries::kExact : a.order_index() * p;
    const std::int64_t first = cs.empty() ? ord : a.first_index() * p;
    return QSeries::from_coefficients(D, first, std::move(coeffs), ord).embed(a.level()).normalized_denom();
}

std::optional<Mismatch> first_mismatch(const QSeries& x, const QSeries& y, const Rational& order) {
    for (const QSeries* s : {&x, &y})
        if (!s->is_exact() && s->finite_order() < order)
            throw Error("series known only to q^" + s->finite_order().str() + ", comparison requested to q^" +
                        order.str());
    const QSeries diff = (x - y).truncate(order);
    if (diff.is_zero()) return std::nullopt;
    const Rational e = diff.valuation();
    return Mismatch{e, x.coeff(e), y.coeff(e)};
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const QSeries& s) {
    nlohmann::json j;
    j["D"] = s.denom();
    j["L"] = s.level();
    j["order"] = s.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(s.finite_order().str());
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.terms()) {
        nlohmann::json cv = nlohmann::json::array();
        for (int i = 0; i < c.field().degree(); ++i) cv.push_back(c.coeff(i).get_str());
        terms.push_back({(e * Rational(s.denom())).num(), cv});
    }
    j["terms"] = terms;
    return j;
}

QSeries series_from_json(const nlohmann::json& j) {
    const std::int64_t D = j.at("D").get<std::int64_t>();
    const std::int64_t L = j.at("L").get<std::int64_t>();
    const auto& field = CyclotomicField::get(L);
    std::int64_t ord = QSeries::kExact;
    if (!j.at("order").is_null()) {
        const Rational o = Rational::parse(j.at("order").get<std::string>());
        ord = index_bound(o, D);
    }
    QSeries total = QSeries::zero(Rational(ord, D)).embed(L);
    if (ord == QSeries::kExact) total = QSeries().embed(L);
    for (const auto& t : j.at("terms")) {
        const std::int64_t idx = t.at(0).get<std::int64_t>();
        std::vector<BigInt> num;
        BigInt den = 1;
        std::vector<BigRational> rs;
        for (const auto& c : t.at(1)) rs.emplace_back(c.get<std::string>());
        for (auto& r : rs) {
            r.canonicalize();
            den = lcm(den, BigInt(r.get_den()));
        }
        for (auto& r : rs) num.emplace_back(r.get_num() * (den / r.get_den()));
        const Cyclotomic c(field, std::move(num), den);
        total += QSeries::monomial(Monomial::q_power(Rational(idx, D)), c);
    }
    return total;
}

}  // namespace qrank
