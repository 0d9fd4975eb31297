#include <map>

#include "qrank/appell.hpp"
#include "qrank/harness.hpp"
#include "qrank/thetablocks.hpp"

namespace qrank {

namespace {

using Eta = std::map<std::int64_t, std::int64_t>;

Eta operator*(Eta a, const Eta& b) {
    for (const auto& [m, e] : b) a[m] += e;
    return a;
}

Eta power(const Eta& a, std::int64_t k) {
    Eta r;
    for (const auto& [m, e] : a) r[m] = e * k;
    return r;
}

ThetaQuotient tq(const Eta& eta, std::int64_t scale = 1, std::int64_t qexp = 0) {
    ThetaQuotient t{Cyclotomic(scale)};
    t.times(Monomial::q_power(qexp));
    for (const auto& [m, e] : eta)
        if (e != 0) t.J(m, e);
    return t;
}

QSeries eta(const Eta& e, const Rational& order, std::int64_t scale = 1, std::int64_t qexp = 0) {
    return tq(e, scale, qexp).expand(order);
}

Monomial qp(std::int64_t e) { return Monomial::q_power(e); }

Rational absr(const Rational& r) { return r < Rational(0) ? -r : r; }
Monomial mqp(std::int64_t e) { return -Monomial::q_power(e); }

// j(a;q^p)/j(b;q^p) with an optional q-power in front.
QSeries theta_ratio(const Monomial& a, const Monomial& b, std::int64_t p, const Rational& order, std::int64_t qexp = 0) {
    return ThetaQuotient().times(qp(qexp)).theta(a, p).theta(b, p, -1).expand(order);
}

const Eta kW = {{1, 1}, {6, 3}, {2, -1}, {3, -3}};
const Eta kWBase = {{3, 9}, {1, -12}};

QSeries series_W(int k, const Rational& N) {
    switch (k) {
        case 0:
            return eta(kWBase * power(kW, -2), N) + eta(kWBase * kW, N, 8, 1) + eta(kWBase * power(kW, 4), N, 16, 2);
        case 1:
            return eta(kWBase * power(kW, -1), N, 3) + eta(kWBase * power(kW, 2), N, 12, 1);
        default:
            return eta(kWBase, N, 9);
    }
}

QSeries series_f(int k, const Rational& N) {
    const Eta den = {{1, -1}, {2, -1}};
    ThetaQuotient t = tq(den);
    switch (k) {
        case 0:
            return t.theta(qp(7), 18).expand(N);
        case 1:
            return t.times(Cyclotomic(-1)).theta(qp(5), 18).expand(N);
        default:
            return t.times(Cyclotomic(-1)).times(qp(1)).theta(qp(1), 18).expand(N);
    }
}

QSeries series_g(int k, const Rational& N) {
    switch (k) {
        case 0:
            return eta({{1, 1}, {2, 2}, {8, 2}, {12, 2}, {4, -5}, {24, -1}}, N);
        case 1:
            return eta({{2, 7}, {3, 1}, {8, 2}, {12, 4}, {1, -2}, {4, -7}, {6, -3}, {24, -1}}, N);
        default:
            return eta({{2, 2}, {6, 2}, {8, 3}, {3, -1}, {4, -5}}, N, -2);
    }
}

QSeries series_h(int k, const Rational& N) {
    switch (k) {
        case 0:
            return eta({{4, 4}, {6, 2}, {2, -1}, {3, -1}, {8, -3}}, N);
        case 1:
            return eta({{1, 1}, {4, 1}, {6, 1}, {24, 1}, {8, -2}, {12, -1}}, N);
        default:
            return eta({{2, 5}, {3, 1}, {12, 1}, {24, 1}, {1, -2}, {4, -1}, {6, -2}, {8, -2}}, N, -1);
    }
}

QSeries series_I(int k, const Rational& N) {
    switch (k) {
        case 0:
            return eta({{2, 2}, {6, 3}, {4, -6}}, N);
        case 1:
            return eta({{2, 4}, {12, 6}, {4, -8}, {6, -3}}, N, 1, 1);
        default:
            return eta({{2, 3}, {12, 3}, {4, -7}}, N, -1);
    }
}

using Component = QSeries (*)(int, const Rational&);

// F_k(q^3) as a series in q, known below N.
QSeries at_cube(Component F, int k, const Rational& N) {
    const Rational inner = Rational((N.ceil() + 2) / 3 + 1);
    return substitute_q_power(F(k, inner), Rational(3)).truncate(N);
}

QSeries dissection_rhs(Component F, const Rational& N) {
    QSeries r = QSeries::zero(N);
    for (int k = 0; k < 3; ++k) r += at_cube(F, k, N) * qp(k);
    return r.truncate(N);
}

const std::map<int, Eta> kDissectionLhs = {
    {1, {{1, -3}}},
    {2, {{1, 1}, {6, 1}, {2, -1}, {3, -2}}},
    {3, {{2, 4}, {8, 1}, {1, -1}, {4, -3}}},
    {4, {{2, 3}, {1, -1}, {8, -1}}},
    {5, {{2, 1}, {4, -2}}},
};
const std::map<int, Component> kDissectionParts = {
    {1, series_W}, {2, series_f}, {3, series_g}, {4, series_h}, {5, series_I}};

int mod3(int n) { return ((n % 3) + 3) % 3; }

// sum over k + l (+ m) = N mod 3 of q^{k+l(+m)} X_k(q^3) W_l(q^3) (f_m(q^3)).
QSeries class_sum(Component X, bool with_f, int N, const Rational& order) {
    QSeries total = QSeries::zero(order);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            for (int m = 0; m < (with_f ? 3 : 1); ++m) {
                if (mod3(k + l + m - N) != 0) continue;
                QSeries t = at_cube(X, k, order) * at_cube(series_W, l, order);
                if (with_f) t = t * at_cube(series_f, m, order);
                total += (t * qp(k + l + m)).truncate(order);
            }
    return total;
}

QSeries constant_series(char c, const Rational& N) {
    switch (c) {
        case 'A': return ThetaQuotient().theta(mqp(12), 27).expand(N);
        case 'B': return ThetaQuotient().times(qp(1)).theta(mqp(21), 27).expand(N);
        case 'C': return ThetaQuotient().times(qp(2)).theta(mqp(3), 27).expand(N);
        case 'D': return theta_ratio(qp(60), mqp(30), 108, N);
        case 'E': return theta_ratio(qp(84), mqp(42), 108, N, 6);
        case 'F': return theta_ratio(qp(24), mqp(12), 108, N);
        default: return theta_ratio(qp(96), mqp(48), 108, N, 12);
    }
}

// Every piece of the O_3(zeta_3;q) dissection, expanded once.
struct Section5 {
    Rational N;
    std::map<char, QSeries> c;
    QSeries G[3], H[3];

    explicit Section5(const Rational& order) : N(order) {
        for (char k : std::string("ABCDEFG")) c[k] = constant_series(k, N);
        for (int r = 0; r < 3; ++r) {
            G[r] = class_sum(series_g, true, r, N);
            H[r] = class_sum(series_h, true, r, N);
        }
    }

    QSeries prod(char a, char b) const { return (c.at(a) * c.at(b)).truncate(N); }

    QSeries B(int n) const {
        const Cyclotomic two(2);
        QSeries inter = eta({{6, 3}, {9, 1}, {108, 1}, {3, -1}, {18, -1}, {36, -1}}, N, 3, 3) *
                        (at_cube(series_I, n, N) * qp(n));

        QSeries gw = eta({{3, 3}, {12, 2}, {18, 2}, {72, 1}, {108, 2}, {6, -4}, {9, -1}, {24, -1}, {36, -1},
                          {54, -1}, {216, -1}},
                         N) *
                     class_sum(series_g, false, n, N);

        QSeries gterm = (two * prod('A', 'D') - prod('A', 'E')) * G[mod3(n + 1)] -
                        (prod('B', 'D') + prod('B', 'E')) * G[mod3(n)] +
                        (two * prod('C', 'E') - prod('C', 'D')) * G[mod3(n + 2)];
        gterm = eta({{12, 2}, {108, 1}, {6, -1}, {24, -1}}, N, -2, 2) * gterm;

        QSeries hw = eta({{3, 3}, {18, 1}, {24, 1}, {36, 2}, {216, 1}, {6, -3}, {9, -1}, {12, -1}, {72, -1},
                          {108, -1}},
                         N, 1, 5) *
                     class_sum(series_h, false, n + 1, N);

        QSeries hterm = (two * prod('A', 'G') + prod('A', 'F')) * H[mod3(n + 2)] -
                        (two * prod('B', 'F') + prod('B', 'G')) * H[mod3(n + 1)] -
                        (prod('C', 'G') - prod('C', 'F')) * H[mod3(n)];
        hterm = eta({{24, 1}, {108, 1}, {12, -1}}, N, -2, 1) * hterm;

        QSeries outer = eta({{3, 2}, {6, 2}, {36, 1}, {12, -1}, {18, -2}}, N);
        return (inter + outer * (gw + gterm + hw + hterm)).truncate(N);
    }

    QSeries Bbar0() const {
        QSeries appell = appell_m(qp(-27), qp(162), Monomial::minus_one(), N + Rational(36)) * qp(-36);
        appell = appell * Cyclotomic(6);
        ThetaQuotient pre(Cyclotomic(BigRational(-3, 2)));
        pre.times(qp(-9));
        for (const auto& [m, e] : Eta{{18, 1}, {27, 1}, {108, 1}, {162, 5}, {36, -2}, {54, -1}, {81, -1}, {324, -3}})
            pre.J(m, e);
        ThetaQuotient t1 = pre, t2 = pre;
        t1.theta(qp(27), 162).theta(mqp(27), 162, -1);
        t2.theta(qp(81), 162).theta(mqp(81), 162, -1);
        return (appell + t1.expand(N) + t2.expand(N) + B(0)).truncate(N);
    }
};

using Builder = std::function<QSeries(const Rational&)>;

const std::map<std::string, Builder>& registry() {
    static const std::map<std::string, Builder> table = [] {
        std::map<std::string, Builder> t;
        t["w"] = [](const Rational& N) { return eta(kW, N); };
        const std::pair<const char*, Component> families[] = {
            {"W", series_W}, {"f", series_f}, {"g", series_g}, {"h", series_h}, {"I", series_I}};
        for (const auto& [prefix, F] : families)
            for (int k = 0; k < 3; ++k)
                t[prefix + std::to_string(k)] = [F = F, k](const Rational& N) { return F(k, N); };
        for (const auto& [n, lhs] : kDissectionLhs) {
            const std::string id = "3dis" + std::to_string(n);
            t[id + "-lhs"] = [lhs = lhs](const Rational& N) { return eta(lhs, N); };
            t[id + "-rhs"] = [F = kDissectionParts.at(n)](const Rational& N) { return dissection_rhs(F, N); };
        }
        for (char k : std::string("ABCDEFG"))
            t[std::string(1, k)] = [k](const Rational& N) { return constant_series(k, N); };
        for (int r = 0; r < 3; ++r) {
            t["G" + std::to_string(r)] = [r](const Rational& N) { return class_sum(series_g, true, r, N); };
            t["H" + std::to_string(r)] = [r](const Rational& N) { return class_sum(series_h, true, r, N); };
        }
        t["Bbar0"] = [](const Rational& N) { return Section5(N).Bbar0(); };
        for (int r = 0; r < 3; ++r) t["B" + std::to_string(r)] = [r](const Rational& N) { return Section5(N).B(r); };
        t["3dis-rhs"] = [](const Rational& N) {
            Section5 s(N);
            return (s.Bbar0() + s.B(1) + s.B(2)).truncate(N);
        };
        return t;
    }();
    return table;
}

}  // namespace

QSeries build_named_series(const std::string& name, const Rational& order) {
    const auto& t = registry();
    const auto it = t.find(name);
    if (it == t.end()) throw UnknownName(name);
    return it->second(order);
}

std::vector<std::string> named_series() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

namespace oracle {

QSeries pochhammer(const Monomial& a, const Rational& p, const Rational& order) {
    if (p <= Rational(0)) throw Error("pochhammer: base exponent must be positive");
    QSeries finite = QSeries::constant(Cyclotomic(1));
    Rational low(0);
    std::int64_t k = 0;
    for (;; ++k) {
        const Monomial f = a * Monomial::q_power(p * Rational(k));
        if (f.exp() > Rational(0)) break;
        if (f.exp() == Rational(0) && f.is_pure_power()) return QSeries();
        finite = finite * (QSeries::constant(Cyclotomic(1)) - QSeries::monomial(f));
        low += f.exp();
    }
    const Rational tail_order = order - low;
    QSeries tail = QSeries::constant(Cyclotomic(1)).truncate(tail_order);
    for (;; ++k) {
        const Monomial f = a * Monomial::q_power(p * Rational(k));
        if (f.exp() >= tail_order) break;
        tail = (tail * (QSeries::constant(Cyclotomic(1)) - QSeries::monomial(f))).truncate(tail_order);
    }
    return (finite * tail).truncate(order);
}

QSeries theta_product(const Monomial& z, const Rational& p, const Rational& order) {
    const Monomial base = Monomial::q_power(p);
    QSeries a = pochhammer(z, p, order + Rational(4) + absr(z.exp()) * Rational(2));
    if (a.is_zero() && a.is_exact()) return QSeries();
    QSeries b = pochhammer(base / z, p, order + Rational(4) + absr(z.exp()) * Rational(2));
    if (b.is_zero() && b.is_exact()) return QSeries();
    const Rational va = a.valuation(), vb = b.valuation();
    // Re-expand so that the product is known below `order`.
    a = pochhammer(z, p, order - vb);
    b = pochhammer(base / z, p, order - va);
    return (a * b * pochhammer(base, p, order - va - vb)).truncate(order);
}

QSeries theta_sum(const Monomial& z, const Rational& p, const Rational& order) {
    const Monomial base = Monomial::q_power(p);
    QSeries total = QSeries::zero(order);
    for (int dir : {1, -1}) {
        std::optional<Rational> prev;
        for (std::int64_t n = (dir > 0 ? 0 : -1);; n += dir) {
            const Monomial t = (-z).pow(n) * base.pow(n * (n - 1) / 2);
            if (t.exp() >= order && prev && t.exp() >= *prev) break;
            prev = t.exp();
            if (t.exp() < order) total += QSeries::monomial(t);
        }
    }
    return total.truncate(order);
}

QSeries bilateral_sum(const Monomial& alpha, const Monomial& beta, const Monomial& gamma, const Monomial& mu,
                      const Monomial& nu, const Rational& order) {
    QSeries total = QSeries::zero(order);
    for (int dir : {1, -1}) {
        std::optional<Rational> prev;
        for (std::int64_t n = (dir > 0 ? 0 : -1);; n += dir) {
            const Monomial t = alpha * beta.pow(n) * gamma.pow(n * (n - 1) / 2);
            const Monomial u = mu * nu.pow(n);
            const Rational v = t.exp() + (u.exp() < Rational(0) ? -u.exp() : Rational(0));
            if (v >= order && prev && v >= *prev) break;
            prev = v;
            if (v >= order) continue;
            total += QSeries::monomial(t) * geometric(u, order - t.exp());
        }
    }
    return total.truncate(order);
}

}  // namespace oracle

}  // namespace qrank
