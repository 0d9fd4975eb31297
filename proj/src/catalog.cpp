#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "qrank/appell.hpp"
#include "qrank/harness.hpp"
#include "qrank/overpartitions.hpp"
#include "qrank/thetablocks.hpp"

namespace qrank {

namespace {

Monomial mono(std::int64_t L, std::int64_t k, const Rational& e) { return {Rational(k, L), e}; }
Monomial qp(const Rational& e) { return Monomial::q_power(e); }
Monomial sign(std::int64_t n) { return Monomial::root(Rational(n, 2)); }  // (-1)^n
Cyclotomic cyc(std::int64_t n) { return Cyclotomic(n); }
Cyclotomic cyc(std::int64_t n, std::int64_t d) { return Cyclotomic(BigRational(n, d)); }

std::int64_t binom2(std::int64_t n) { return n * (n - 1) / 2; }

// Sample parameters live in Q(zeta_15) with exponents in (1/6)Z, which keeps
// every expansion small while avoiding accidental poles.
const std::vector<Monomial> kX = {mono(5, 1, Rational(1, 3)), mono(15, 4, Rational(-1, 2)), mono(5, 3, Rational(2, 3))};
const std::vector<Monomial> kY = {mono(15, 2, Rational(1, 6)), mono(5, 2, Rational(-2, 3)), mono(3, 1, Rational(1, 2))};
const std::vector<Monomial> kZ = {mono(5, 4, Rational(1, 2)), mono(15, 7, Rational(-1, 3)), mono(15, 11, Rational(1, 6))};

std::string lbl(std::initializer_list<std::pair<const char*, Monomial>> params) {
    std::string s;
    for (const auto& [k, v] : params) s += (s.empty() ? "" : ", ") + std::string(k) + "=" + v.str();
    return s;
}

std::string dam(int d, int a, int M) {
    return "d=" + std::to_string(d) + ", a=" + std::to_string(a) + ", M=" + std::to_string(M);
}

// Re-evaluates f at a growing working order until the result is known below `order`.
QSeries to_order(const std::function<QSeries(const Rational&)>& f, const Rational& order) {
    Rational slack(4);
    QSeries r;
    for (int i = 0; i < 6; ++i) {
        r = f(order + slack);
        const auto o = r.order();
        if (!o || *o >= order) break;
        slack = slack * Rational(2) + (order - *o);
    }
    return r.truncate(order);
}

struct OFactor {
    Monomial z;
    Rational p;
    std::int64_t power;
};

// c * mono * prod j(z;q^p)^power * prod (q^m;q^m)^e from triple products.
QSeries oracle_quotient(const Cyclotomic& c, const Monomial& m, const std::vector<OFactor>& thetas,
                        const std::vector<std::pair<Rational, std::int64_t>>& etas, const Rational& order) {
    return to_order(
        [&](const Rational& W) {
            QSeries r = QSeries::monomial(m, c);
            for (const auto& f : thetas) r = r * pow(oracle::theta_product(f.z, f.p, W), f.power, W);
            for (const auto& [k, e] : etas) r = r * pow(oracle::pochhammer(qp(k), k, W), e, W);
            return r;
        },
        order);
}

QSeries appell_oracle(const Monomial& x, const Rational& p, const Monomial& z, const Rational& order) {
    return to_order(
        [&](const Rational& W) {
            const Monomial b = qp(p);
            return oracle::bilateral_sum(Monomial(), -z, b, x * z / b, b, W) * invert(oracle::theta_product(z, p, W), W);
        },
        order);
}

QSeries delta_oracle(const Monomial& x, const Monomial& z1, const Monomial& z0, const Rational& p, const Rational& order) {
    return oracle_quotient(cyc(1), z0,
                           {{z1 / z0, p, 1}, {x * z0 * z1, p, 1}, {z0, p, -1}, {z1, p, -1}, {x * z0, p, -1}, {x * z1, p, -1}},
                           {{p, 3}}, order);
}

QSeries psi_oracle(std::int64_t k, std::int64_t n, const Monomial& x, const Monomial& z, const Monomial& zp,
                   const Rational& p, const Rational& order) {
    const auto b = [&](std::int64_t e) { return qp(p * Rational(e)); };
    const Rational P = p * Rational(n * n);
    const Monomial xzn = (x * z).pow(n);
    QSeries total = QSeries::zero(order);
    for (std::int64_t t = 0; t < n; ++t) {
        const Monomial m = -(x.pow(k) * z.pow(k + 1)) * b(binom2(t + 1) + k * t) * (-z).pow(t);
        total += oracle_quotient(cyc(1), m,
                                 {{z, p, -1},
                                  {zp, P, -1},
                                  {-b(binom2(n + 1) + n * k + n * t) * (-z).pow(n) / zp, P, 1},
                                  {b(n * t) * xzn * zp, P, 1},
                                  {-b(binom2(n) - n * k) * (-x).pow(n) * zp, P, -1},
                                  {b(n * t) * xzn, P, -1}},
                                 {{P, 3}}, order);
    }
    return total;
}

QSeries lambda_oracle(std::int64_t d, const Monomial& z, const Monomial& z0, const Monomial& zp, const Rational& order) {
    const Monomial pre = sign((d + 1) / 2) * qp(Rational(-(d - 1) * (d - 1), 4)) * z.pow(Rational(d - 1, d));
    const Rational inner = order - pre.exp();
    const Monomial x = z.pow(Rational(-2, d)) * qp(d);
    QSeries s = psi_oracle((d - 1) / 2, d, x, z0, zp, 2, inner);
    for (std::int64_t t = 0; t < d; ++t) {
        const Monomial zt = Monomial::zeta(d, t);
        s += delta_oracle(zt.pow(-2) * x, zt * z.root_branch(d) * qp(Rational(-(d - 1), 2)), z0, 2, inner) *
             (Monomial::zeta(d, -t).coeff() * cyc(1, d));
    }
    return (s * pre).truncate(order);
}

// sum_n c(n) q^n from integer data.
QSeries table_series(const std::function<Cyclotomic(int)>& c, const Rational& order) {
    const int maxN = static_cast<int>(order.ceil()) - 1;
    std::vector<Cyclotomic> coeffs;
    for (int n = 0; n <= maxN; ++n) coeffs.push_back(c(n));
    return QSeries::from_coefficients(1, 0, std::move(coeffs), maxN + 1).truncate(order);
}

int max_row(const Rational& order) { return std::max<int>(0, static_cast<int>(order.ceil()) - 1); }

QSeries enumerated_generating(int d, const Monomial& z, const Rational& order) {
    const RankTables t = rank_tables_by_enumeration(d, max_row(order));
    return table_series(
        [&](int n) {
            Cyclotomic s(0);
            for (int m = -n; m <= n; ++m)
                if (t.count(m, n) != 0) s = s + Cyclotomic(BigRational(t.count(m, n))) * z.pow(m).coeff();
            return s;
        },
        order);
}

QSeries enumerated_deviation(int d, int a, int M, const Rational& order) {
    const RankTables t = rank_tables_by_enumeration(d, max_row(order));
    return table_series(
        [&](int n) {
            return Cyclotomic(BigRational(t.residue_count(a, M, n)) - BigRational(t.pbar(n)) / BigRational(M));
        },
        order);
}

QSeries pair_by_definition(int d, int a, int M, const Rational& N) {
    return deviation_by_definition(d, a, M, N) + deviation_by_definition(d, a - 1, M, N);
}

QSeries s_bar_by_product(int d, const Monomial& z, const Rational& N) {
    return o_d_product_form(d, z, N) * (Cyclotomic(1) + z.coeff());
}

class CatalogBuilder {
public:
    CatalogEntry& add(std::string id, std::string summary, std::string domain, EntryKind kind, std::int64_t L = 1,
                      std::int64_t D = 1) {
        CatalogEntry e;
        e.id = std::move(id);
        e.summary = std::move(summary);
        e.parameter_domain = std::move(domain);
        e.kind = kind;
        e.level = L;
        e.denom = D;
        entries.push_back(std::move(e));
        return entries.back();
    }
    // deque: references returned by add() stay valid across later additions
    std::deque<CatalogEntry> entries;
};

void inst(CatalogEntry& e, std::string label, SeriesBuilder lhs, SeriesBuilder rhs,
          std::optional<Rational> cap = std::nullopt) {
    e.instances.push_back({std::move(label), std::move(lhs), std::move(rhs), cap});
}

SeriesBuilder zero_series() {
    return [](const Rational& N) { return QSeries::zero(N); };
}

void add_theorems(CatalogBuilder& c) {
    const struct {
        const char* id;
        const char* summary;
        std::int64_t level;  // lcm of the sampled parameter orders
        std::vector<std::array<int, 3>> cases;
    } theorems[] = {
        {"thm1.1-i", "d odd, a and M even: pair of deviations via m, Psi and Lambda", 84,
         {{1, 2, 2}, {3, 2, 4}, {1, 4, 6}, {3, 4, 4}}},
        {"thm1.1-ii", "d odd, a even, M odd", 315, {{1, 2, 3}, {3, 2, 3}, {1, 2, 5}}},
        {"thm1.1-iii", "d odd, a and M odd", 315, {{1, 1, 3}, {1, 3, 3}, {3, 3, 3}, {1, 3, 5}}},
        {"thm1.2", "d even", 21, {{2, 1, 2}, {2, 1, 3}, {2, 2, 3}, {4, 1, 3}}},
    };
    for (const auto& th : theorems) {
        auto& e = c.add(th.id, th.summary, "(d,a,M) in the stated range; generic z', z'', z0", EntryKind::Theorem,
                        th.level, 4);
        for (const auto& [d, a, M] : th.cases) {
            const FormulaParams fp = default_params(d, M);
            inst(e, dam(d, a, M) + "; " + fp.str(),
                 [d = d, a = a, M = M](const Rational& N) { return pair_by_definition(d, a, M, N); },
                 [d = d, a = a, M = M, fp](const Rational& N) { return deviation_pair_by_formula(d, a, M, fp, N); });
        }
    }

    const std::vector<Monomial> zs = {Monomial::zeta(5), Monomial::zeta(7, 2)};
    const std::vector<std::pair<Monomial, Monomial>> choices = {{Monomial::zeta(3), Monomial::zeta(3, 2)},
                                                                 {Monomial::zeta(4), Monomial::zeta(6)}};
    for (const bool odd : {true, false}) {
        auto& e = c.add(odd ? "prop2.4-odd" : "prop2.4-even",
                        odd ? "(1+z) O_d(z) through m and Lambda, d odd" : "(1+z) O_d(z) through m and Psi, d even",
                        "z in {zeta5, zeta7^2}; two generic (z0, z') choices", EntryKind::Theorem,
                        odd ? 420 : 105);
        for (const int d : odd ? std::vector<int>{1, 3} : std::vector<int>{2, 4})
            for (const auto& z : zs) {
                for (const auto& [z0, zp] : choices)
                    inst(e, "d=" + std::to_string(d) + ", " + lbl({{"z", z}, {"z0", z0}, {"z'", zp}}),
                         [d, z](const Rational& N) { return s_bar_by_product(d, z, N); },
                         [d, z, z0 = z0, zp = zp](const Rational& N) { return s_bar_d(d, z, z0, zp, N); });
                const auto& [a0, ap] = choices[0];
                const auto& [b0, bp] = choices[1];
                inst(e, "d=" + std::to_string(d) + ", z=" + z.str() + ", independence of (z0, z')",
                     [d, z, a0 = a0, ap = ap](const Rational& N) { return s_bar_d(d, z, a0, ap, N); },
                     [d, z, b0 = b0, bp = bp](const Rational& N) { return s_bar_d(d, z, b0, bp, N); });
            }
    }
}

void add_generating(CatalogBuilder& c) {
    const std::vector<Monomial> zs = {Monomial::zeta(5), Monomial::zeta(7, 2), Monomial::zeta(9, 4)};
    const Rational cap(20);

    auto& gen = c.add("gen", "O_1(z;q) is the two-variable rank generating function", "z root of unity",
                      EntryKind::Theorem, 315, 1);
    for (const auto& z : zs)
        inst(gen, "d=1, z=" + z.str(), [z](const Rational& N) { return enumerated_generating(1, z, N); },
             [z](const Rational& N) { return o_d_product_form(1, z, N); }, cap);

    auto& m2 = c.add("m2rank", "O_2(z;q) is the two-variable M2-rank generating function", "z root of unity",
                     EntryKind::Theorem, 315, 1);
    for (const auto& z : zs)
        inst(m2, "d=2, z=" + z.str(), [z](const Rational& N) { return enumerated_generating(2, z, N); },
             [z](const Rational& N) { return o_d_product_form(2, z, N); }, cap);

    auto& gen1 = c.add("gen1", "single bilateral sum form of O_d(z;q)", "z root of unity, z != +-1",
                       EntryKind::Theorem, 105, 1);
    for (int d = 1; d <= 4; ++d)
        for (const auto& z : {Monomial::zeta(5), Monomial::zeta(7, 2), Monomial::zeta(3)})
            inst(gen1, "d=" + std::to_string(d) + ", z=" + z.str(),
                 [d, z](const Rational& N) { return o_d_product_form(d, z, N); },
                 [d, z](const Rational& N) { return o_d_direct(d, z, N); });

    const std::vector<std::array<int, 2>> am = {{0, 2}, {1, 3}, {2, 5}, {3, 4}};
    for (const int d : {1, 2}) {
        auto& e = c.add(d == 1 ? "dev1" : "dev2",
                        d == 1 ? "rank deviation from enumeration" : "M2-rank deviation from enumeration", "0 <= a < M",
                        EntryKind::Theorem, 1, 1);
        for (const auto& [a, M] : am)
            inst(e, dam(d, a, M), [d, a = a, M = M](const Rational& N) { return enumerated_deviation(d, a, M, N); },
                 [d, a = a, M = M](const Rational& N) { return deviation_by_definition(d, a, M, N); }, cap);
    }

    auto& nd = c.add("nd", "residue counts as a root-of-unity average of O_d", "d >= 1, 0 <= a < M",
                     EntryKind::Theorem, 60, 1);
    for (const auto& [d, a, M] : std::vector<std::array<int, 3>>{{1, 2, 3}, {3, 1, 4}, {3, 2, 5}, {4, 0, 3}})
        inst(nd, dam(d, a, M),
             [d = d, a = a, M = M](const Rational& N) {
                 const auto t = cached_rank_tables(d, max_row(N));
                 return table_series([&](int n) { return Cyclotomic(BigRational(t->residue_count(a, M, n))); }, N);
             },
             [d = d, a = a, M = M](const Rational& N) {
                 QSeries s = QSeries::zero(N);
                 for (int k = 0; k < M; ++k)
                     s += o_d_product_form(d, Monomial::zeta(M, k), N) * Monomial::zeta(M, -k * a).coeff();
                 return s * cyc(1, M);
             });

    auto& dev = c.add("dev", "deviation generating function; residues sum to zero", "d >= 1, 0 <= a <= M",
                      EntryKind::Theorem);
    for (const auto& [d, a, M] : std::vector<std::array<int, 3>>{{1, 1, 3}, {3, 2, 4}, {4, 3, 5}})
        inst(dev, dam(d, a, M), [d = d, a = a, M = M](const Rational& N) { return deviation_by_definition(d, a, M, N); },
             [d = d, a = a, M = M](const Rational& N) {
                 const auto t = cached_rank_tables(d, max_row(N));
                 const QSeries counts =
                     table_series([&](int n) { return Cyclotomic(BigRational(t->residue_count(a, M, n))); }, N);
                 const QSeries pbar = eta_quotient({{2, 1}, {1, -2}}, N);
                 return counts - pbar * cyc(1, M);
             });
    for (int d = 1; d <= 4; ++d)
        for (int M = 2; M <= 6; ++M)
            inst(dev, "sum over residues, d=" + std::to_string(d) + ", M=" + std::to_string(M),
                 [d, M](const Rational& N) {
                     QSeries s = QSeries::zero(N);
                     for (int a = 0; a < M; ++a) s += deviation_by_definition(d, a, M, N);
                     return s;
                 },
                 zero_series());

    auto& sym = c.add("dgensymmetry", "Dbar_d(a,M) = Dbar_d(M-a,M)", "d <= 4, M <= 6", EntryKind::Theorem);
    for (int d = 1; d <= 4; ++d)
        for (int M = 2; M <= 6; ++M)
            for (int a = 0; 2 * a <= M; ++a)
                inst(sym, dam(d, a, M), [d, a, M](const Rational& N) { return deviation_by_definition(d, a, M, N); },
                     [d, a, M](const Rational& N) { return deviation_by_definition(d, M - a, M, N); });

    auto& key = c.add("overkey", "Fourier average of (1+z) O_d(z) gives a pair of deviations", "0 <= a <= M",
                      EntryKind::Theorem, 60, 1);
    for (const auto& [d, a, M] : std::vector<std::array<int, 3>>{{1, 1, 3}, {2, 2, 4}, {3, 3, 5}, {4, 1, 2}})
        inst(key, dam(d, a, M),
             [d = d, a = a, M = M](const Rational& N) {
                 QSeries s = QSeries::zero(N);
                 for (int j = 1; j < M; ++j)
                     s += s_bar_by_product(d, Monomial::zeta(M, j), N) * Monomial::zeta(M, -a * j).coeff();
                 return s * cyc(1, M);
             },
             [d = d, a = a, M = M](const Rational& N) { return pair_by_definition(d, a, M, N); });
}

void add_appell(CatalogBuilder& c) {
    auto& al = c.add("al", "m(x,q,z) against its defining bilateral sum", "generic x, z", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], z = kZ[i];
        const Rational p(static_cast<std::int64_t>(i + 1));
        inst(al, lbl({{"x", x}, {"z", z}}) + ", base q^" + p.str(),
             [=](const Rational& N) { return appell_m(x, qp(p), z, N); },
             [=](const Rational& N) { return appell_oracle(x, p, z, N); });
    }

    auto& del = c.add("delta", "Delta(x,z1,z0;q) against triple products", "generic x, z1, z0", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], z1 = kY[i], z0 = kZ[i];
        inst(del, lbl({{"x", x}, {"z1", z1}, {"z0", z0}}), [=](const Rational& N) { return delta(x, z1, z0, qp(1), N); },
             [=](const Rational& N) { return delta_oracle(x, z1, z0, 1, N); });
    }

    auto& ps = c.add("psikndef", "Psi_k^n(x,z,z';q) against triple products", "n >= 1, any k, generic x, z, z'",
                     EntryKind::Identity, 15, 6);
    const std::vector<std::array<int, 3>> kn = {{0, 1, 1}, {1, 2, 1}, {2, 3, 2}, {-1, 2, 2}};
    for (std::size_t i = 0; i < kn.size(); ++i) {
        const auto [k, n, p] = kn[i];
        const Monomial x = kX[i % 3], z = kZ[(i + 1) % 3], zp = kY[(i + 2) % 3];
        inst(ps, "k=" + std::to_string(k) + ", n=" + std::to_string(n) + ", base q^" + std::to_string(p) + ", " +
                     lbl({{"x", x}, {"z", z}, {"z'", zp}}),
             [=](const Rational& N) { return psi(k, n, x, z, zp, qp(p), N); },
             [=](const Rational& N) { return psi_oracle(k, n, x, z, zp, p, N); });
    }

    auto& lam = c.add("genlam", "Lambda(d,z,z0,z') against triple products", "d odd, generic z, z0, z'",
                      EntryKind::Identity, 420, 6);
    const std::vector<std::tuple<int, Monomial, Monomial, Monomial>> lc = {
        {1, Monomial::zeta(5), Monomial::zeta(3), Monomial::zeta(3, 2)},
        {3, Monomial::zeta(7, 2), Monomial::zeta(4), Monomial::zeta(6)},
        {3, Monomial::zeta(4), Monomial::zeta(5, 2), Monomial::minus_one()},
    };
    for (const auto& [d, z, z0, zp] : lc)
        inst(lam, "d=" + std::to_string(d) + ", " + lbl({{"z", z}, {"z0", z0}, {"z'", zp}}),
             [d = d, z = z, z0 = z0, zp = zp](const Rational& N) { return lambda(d, z, z0, zp, N); },
             [d = d, z = z, z0 = z0, zp = zp](const Rational& N) { return lambda_oracle(d, z, z0, zp, N); });

    auto& sw = c.add("switch", "m(x,q,z1) - m(x,q,z0) = Delta(x,z1,z0;q)", "generic x, z0, z1", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], z1 = kY[(i + 1) % 3], z0 = kZ[i];
        inst(sw, lbl({{"x", x}, {"z1", z1}, {"z0", z0}}),
             [=](const Rational& N) { return appell_m(x, qp(1), z1, N) - appell_m(x, qp(1), z0, N); },
             [=](const Rational& N) { return delta(x, z1, z0, qp(1), N); });
    }

    auto& orth = c.add("orthog", "sum over n-th roots of m(zeta^t x, q, z)", "n in {2,3}, 0 <= k < n",
                       EntryKind::Identity, 15, 6);
    int sample = 0;
    for (int n : {2, 3})
        for (int k = 0; k < n; ++k, ++sample) {
            const Monomial x = kX[sample % 3], z = kZ[(sample + 2) % 3], zp = kY[sample % 3];
            inst(orth, "n=" + std::to_string(n) + ", k=" + std::to_string(k) + ", " + lbl({{"x", x}, {"z", z}, {"z'", zp}}),
                 [=](const Rational& N) {
                     QSeries s = QSeries::zero(N);
                     for (int t = 0; t < n; ++t)
                         s += appell_m(Monomial::zeta(n, t) * x, qp(1), z, N) * Monomial::zeta(n, -k * t).coeff();
                     return s;
                 },
                 [=](const Rational& N) {
                     const Monomial pre = qp(-binom2(k + 1)) * (-x).pow(k);
                     const Monomial arg = -qp(binom2(n) - n * k) * (-x).pow(n);
                     QSeries r = appell_m(arg, qp(n * n), zp, N - pre.exp()) * pre;
                     r += psi(k, n, x, z, zp, qp(1), N);
                     return (r * cyc(n)).truncate(N);
                 });
        }

    auto& f1 = c.add("flip1", "m(x,q,z) = x^{-1} m(x^{-1},q,z^{-1})", "generic x, z", EntryKind::Identity, 15, 6);
    auto& f2 = c.add("flip2", "m(x,q,z) = x^{-1} - x^{-1} m(qx,q,z)", "generic x, z", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], z = kZ[(i + 2) % 3];
        inst(f1, lbl({{"x", x}, {"z", z}}), [=](const Rational& N) { return appell_m(x, qp(1), z, N); },
             [=](const Rational& N) {
                 return (appell_m(x.inv(), qp(1), z.inv(), N + x.exp()) * x.inv()).truncate(N);
             });
        inst(f2, lbl({{"x", x}, {"z", z}}), [=](const Rational& N) { return appell_m(x, qp(1), z, N); },
             [=](const Rational& N) {
                 QSeries r = QSeries::monomial(x.inv()) - appell_m(qp(1) * x, qp(1), z, N + x.exp()) * x.inv();
                 return r.truncate(N);
             });
    }

    auto& ev = c.add("eval", "m(q,q^2,-1) = 1/2", "q -> q^s", EntryKind::Identity);
    for (int s = 1; s <= 3; ++s)
        inst(ev, "s=" + std::to_string(s),
             [s](const Rational& N) { return appell_m(qp(s), qp(2 * s), Monomial::minus_one(), N); },
             [](const Rational&) { return QSeries::constant(cyc(1, 2)); });

    auto& ht = c.add("htom", "bilateral sum with j(q;q^2) as an Appell-Lerch series", "generic x", EntryKind::Identity, 15, 6);
    for (const auto& x : kX)
        inst(ht, "x=" + x.str(),
             [x](const Rational& N) {
                 return to_order(
                     [&](const Rational& W) {
                         return oracle::bilateral_sum(Monomial(), -qp(2), qp(2), x, qp(1), W) *
                                invert(oracle::theta_product(qp(1), 2, W), W);
                     },
                     N);
             },
             [x](const Rational& N) {
                 return (appell_m(x.pow(-2) * qp(1), qp(2), x, N + x.exp()) * (-x.inv())).truncate(N);
             });

    auto& sim = c.add("sim", "sum_j zeta_n^{sj} = n or 0", "2 <= n <= 6, 0 <= s <= n", EntryKind::Identity);
    for (int n = 2; n <= 6; ++n)
        for (int s = 0; s <= n; ++s)
            inst(sim, "n=" + std::to_string(n) + ", s=" + std::to_string(s),
                 [n, s](const Rational&) {
                     Cyclotomic t(0);
                     for (int j = 0; j < n; ++j) t = t + Monomial::zeta(n, s * j).coeff();
                     return QSeries::constant(t);
                 },
                 [n, s](const Rational&) { return QSeries::constant(cyc(s % n == 0 ? n : 0)); });
}

// Wrappers for one- and two-factor theta expressions.
QSeries J(const Rational& m, std::int64_t e, const Rational& N) { return ThetaQuotient().J(m, e).expand(N); }

void add_j_identities(CatalogBuilder& c) {
    const std::string P = "j-identities-";

    auto& j = c.add(P + "j", "bilateral sum equals the triple product", "generic z", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial z = kZ[i];
        const Rational p(static_cast<std::int64_t>(i + 1));
        inst(j, "z=" + z.str() + ", base q^" + p.str(), [=](const Rational& N) { return theta_j(z, p, N); },
             [=](const Rational& N) { return oracle::theta_product(z, p, N); });
    }

    auto& van = c.add(P + "jvan", "j(q^n;q) = 0", "n integer, q -> q^s", EntryKind::Identity);
    van.asserts_vanishing = true;
    for (const auto& [n, s] : std::vector<std::pair<int, int>>{{-2, 1}, {0, 1}, {1, 2}, {3, 1}})
        inst(van, "n=" + std::to_string(n) + ", s=" + std::to_string(s),
             [n = n, s = s](const Rational& N) { return oracle::theta_sum(qp(n * s), s, N); }, zero_series());

    auto& j1 = c.add(P + "j1", "j(q^n x;q) = (-1)^n q^{-n(n-1)/2} x^{-n} j(x;q)", "generic x, integer n",
                     EntryKind::Identity, 15, 6);
    const int shifts[] = {-2, 1, 3};
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i];
        const int n = shifts[i];
        inst(j1, "x=" + x.str() + ", n=" + std::to_string(n),
             [=](const Rational& N) { return theta_j(qp(n) * x, 1, N); },
             [=](const Rational& N) {
                 return ThetaQuotient().times(sign(n) * qp(-binom2(n)) * x.pow(-n)).theta(x, 1).expand(N);
             });
    }

    auto& j2 = c.add(P + "j2", "j(x;q) = j(q/x;q) = -x j(1/x;q)", "generic x", EntryKind::Identity, 15, 6);
    for (const auto& x : kX) {
        inst(j2, "x=" + x.str() + ", reflection", [x](const Rational& N) { return theta_j(x, 1, N); },
             [x](const Rational& N) { return theta_j(qp(1) / x, 1, N); });
        inst(j2, "x=" + x.str() + ", inversion", [x](const Rational& N) { return theta_j(x, 1, N); },
             [x](const Rational& N) { return ThetaQuotient().times(-x).theta(x.inv(), 1).expand(N); });
    }

    struct Closed {
        const char* name;
        Monomial z;
        std::int64_t p;
        std::int64_t scale;
        std::vector<std::pair<std::int64_t, std::int64_t>> eta;
    };
    const Closed closed[] = {
        {"q-q2", qp(1), 2, 1, {{1, 2}, {2, -1}}},
        {"q-q3", qp(1), 3, 1, {{1, 1}}},
        {"q-q6", qp(1), 6, 1, {{1, 1}, {6, 2}, {2, -1}, {3, -1}}},
        {"m1-q", Monomial::minus_one(), 1, 2, {{2, 2}, {1, -1}}},
        {"mq-q3", -qp(1), 3, 1, {{2, 1}, {3, 2}, {1, -1}, {6, -1}}},
        {"mq-q6", -qp(1), 6, 1, {{2, 2}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}}},
    };
    for (const auto& cf : closed) {
        auto& e = c.add(P + "closed-" + cf.name, "j at a special point as an eta quotient", "q -> q^s",
                        EntryKind::Identity, 2, 1);
        for (int s = 1; s <= 3; ++s)
            inst(e, "s=" + std::to_string(s),
                 [cf, s](const Rational& N) {
                     return theta_j(Monomial(cf.z.turn(), cf.z.exp() * Rational(s)), cf.p * s, N);
                 },
                 [cf, s](const Rational& N) {
                     ThetaQuotient t{cyc(cf.scale)};
                     for (const auto& [m, e] : cf.eta) t.J(m * s, e);
                     return t.expand(N);
                 });
    }

    auto& jn1 = c.add(P + "jnew1", "j(x/q;q^2) j(q^2/x;q^2) = x^2 q^{-1} j(1/x;q) J_2^2/J_1", "generic x",
                      EntryKind::Identity, 15, 6);
    for (const auto& x : kX)
        inst(jn1, "x=" + x.str(),
             [x](const Rational& N) { return ThetaQuotient().theta(x * qp(-1), 2).theta(x.inv() * qp(2), 2).expand(N); },
             [x](const Rational& N) {
                 return ThetaQuotient().times(x.pow(2) * qp(-1)).theta(x.inv(), 1).J(2, 2).J(1, -1).expand(N);
             });

    auto& jn2 = c.add(P + "jnew2", "x -> 1/x antisymmetry of j(-x)/(j(-x^2 q;q^2) j(x))", "generic x",
                      EntryKind::Identity, 15, 6);
    for (const auto& x : kX)
        inst(jn2, "x=" + x.str(),
             [x](const Rational& N) {
                 return ThetaQuotient().theta(-x, 1).theta(-x.pow(2) * qp(1), 2, -1).theta(x, 1, -1).expand(N);
             },
             [x](const Rational& N) {
                 const Monomial y = x.inv();
                 return ThetaQuotient(cyc(-1)).theta(-y, 1).theta(-y.pow(2) * qp(1), 2, -1).theta(y, 1, -1).expand(N);
             });

    auto& mh12 = c.add(P + "MH12f", "n-dissection of j(z;q)", "n in {2,3}, generic z", EntryKind::Identity, 15, 6);
    for (int n : {2, 3})
        for (const auto& z : kZ)
            inst(mh12, "n=" + std::to_string(n) + ", z=" + z.str(), [z](const Rational& N) { return theta_j(z, 1, N); },
                 [n, z](const Rational& N) {
                     QSeries s = QSeries::zero(N);
                     for (int k = 0; k < n; ++k)
                         s += ThetaQuotient()
                                  .times(sign(k) * qp(binom2(k)) * z.pow(k))
                                  .theta(sign(n + 1) * qp(binom2(n) + n * k) * z.pow(n), n * n)
                                  .expand(N);
                     return s;
                 });

    auto& a = c.add(P + "MH14a", "j(qx^3;q^3) + x j(q^2x^3;q^3) = J_1 j(x^2;q)/j(x;q)", "generic x",
                    EntryKind::Identity, 15, 6);
    for (const auto& x : kX)
        inst(a, "x=" + x.str(),
             [x](const Rational& N) {
                 return ThetaQuotient().theta(qp(1) * x.pow(3), 3).expand(N) +
                        ThetaQuotient().times(x).theta(qp(2) * x.pow(3), 3).expand(N);
             },
             [x](const Rational& N) { return ThetaQuotient().J(1).theta(x.pow(2), 1).theta(x, 1, -1).expand(N); });

    auto& b = c.add(P + "MH14b", "product of two thetas split over q^2", "generic x, y", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], y = kY[i];
        inst(b, lbl({{"x", x}, {"y", y}}), [=](const Rational& N) { return theta_j2(x, y, qp(1), N); },
             [=](const Rational& N) {
                 return theta_j2(-(x * y), -(qp(1) * y / x), qp(2), N) -
                        ThetaQuotient().times(x).theta(-(x * y * qp(1)), 2).theta(-(y / x), 2).expand(N);
             });
    }

    auto& cc = c.add(P + "MH14c", "difference of j(y)/j(-y) and j(x)/j(-x)", "generic x, y", EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], y = kY[(i + 1) % 3];
        inst(cc, lbl({{"x", x}, {"y", y}}),
             [=](const Rational& N) {
                 return ThetaQuotient().theta(y, 1).theta(-y, 1, -1).expand(N) -
                        ThetaQuotient().theta(x, 1).theta(-x, 1, -1).expand(N);
             },
             [=](const Rational& N) {
                 return ThetaQuotient(cyc(2))
                     .times(x)
                     .theta(y / x, 2)
                     .theta(qp(1) * x * y, 2)
                     .theta(-x, 1, -1)
                     .theta(-y, 1, -1)
                     .expand(N);
             });
    }

    auto& ee = c.add(P + "MH14e", "j(zx)/j(x) as a sum over n theta quotients", "n in {2,3}, generic x, z",
                     EntryKind::Identity, 15, 6);
    for (int n : {2, 3})
        for (std::size_t i = 0; i < 3; ++i) {
            const Monomial x = kX[i], z = kZ[(i + n) % 3];
            inst(ee, "n=" + std::to_string(n) + ", " + lbl({{"x", x}, {"z", z}}),
                 [=](const Rational& N) { return ThetaQuotient().theta(z * x, 1).theta(x, 1, -1).expand(N); },
                 [=](const Rational& N) {
                     QSeries s = QSeries::zero(N);
                     for (int k = 0; k < n; ++k)
                         s += ThetaQuotient()
                                  .J(n, 3)
                                  .J(1, -3)
                                  .theta(z, 1)
                                  .theta(x.pow(n), n, -1)
                                  .times(x.pow(k))
                                  .theta(z * x.pow(n) * qp(k), n)
                                  .theta(z * qp(k), n, -1)
                                  .expand(N);
                     return s;
                 });
        }

    // Identities at a primitive cube root w; instantiated at both roots and at q -> q^2.
    const std::vector<std::pair<int, int>> ws = {{1, 1}, {2, 1}, {1, 2}};
    const auto wlabel = [](int r, int s) { return "w=zeta3^" + std::to_string(r) + ", s=" + std::to_string(s); };
    const auto Q = [](int s, std::int64_t e) { return qp(e * s); };

    auto& w1 = c.add(P + "AHw1", "j(w;q) = (1-w) J_3", "w primitive cube root, q -> q^s", EntryKind::Identity, 3, 1);
    auto& w2 = c.add(P + "AHw2", "j(-w;q) = (1+w) J_1^2 J_6/(J_2 J_3)", "w primitive cube root, q -> q^s",
                     EntryKind::Identity, 3, 1);
    auto& wn = c.add(P + "AHwnew", "j(-wq;q^2) as an eta quotient", "w primitive cube root, q -> q^s",
                     EntryKind::Identity, 3, 1);
    auto& wn2 = c.add(P + "AHwnew2a", "j(-wq;q^3) through base q^9", "w primitive cube root, q -> q^s",
                      EntryKind::Identity, 3, 1);
    auto& wn3 = c.add(P + "AHwnew3a", "j(-wq;q^6) through base q^18", "w primitive cube root, q -> q^s",
                      EntryKind::Identity, 3, 1);
    for (const auto& [r, s] : ws) {
        const Monomial w = Monomial::zeta(3, r);
        inst(w1, wlabel(r, s), [=](const Rational& N) { return theta_j(w, s, N); },
             [=](const Rational& N) { return J(3 * s, 1, N) * (Cyclotomic(1) - w.coeff()); });
        inst(w2, wlabel(r, s), [=](const Rational& N) { return theta_j(-w, s, N); },
             [=](const Rational& N) {
                 return ThetaQuotient(Cyclotomic(1) + w.coeff()).J(s, 2).J(6 * s).J(2 * s, -1).J(3 * s, -1).expand(N);
             });
        inst(wn, wlabel(r, s), [=](const Rational& N) { return theta_j(-w * Q(s, 1), 2 * s, N); },
             [=](const Rational& N) {
                 return ThetaQuotient().J(s).J(4 * s).J(6 * s, 2).J(2 * s, -1).J(3 * s, -1).J(12 * s, -1).expand(N);
             });
        inst(wn2, wlabel(r, s), [=](const Rational& N) { return theta_j(-w * Q(s, 1), 3 * s, N); },
             [=](const Rational& N) {
                 return ThetaQuotient().J(9 * s).theta(Q(s, 2), 9 * s).theta(-Q(s, 1), 9 * s, -1).expand(N) -
                        ThetaQuotient(w.pow(2).coeff())
                            .times(Q(s, 1))
                            .J(9 * s)
                            .theta(Q(s, 8), 9 * s)
                            .theta(-Q(s, 4), 9 * s, -1)
                            .expand(N);
             });
        inst(wn3, wlabel(r, s), [=](const Rational& N) { return theta_j(-w * Q(s, 1), 6 * s, N); },
             [=](const Rational& N) {
                 return ThetaQuotient().J(18 * s).theta(Q(s, 10), 18 * s).theta(-Q(s, 5), 18 * s, -1).expand(N) +
                        ThetaQuotient(w.coeff())
                            .times(Q(s, 1))
                            .J(18 * s)
                            .theta(Q(s, 14), 18 * s)
                            .theta(-Q(s, 7), 18 * s, -1)
                            .expand(N);
             });
    }

    auto& pw = c.add(P + "prodw", "j(x) j(xw) j(xw^2) = J_1^3/J_3 j(x^3;q^3)", "generic x, w primitive cube root",
                     EntryKind::Identity, 15, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        const Monomial x = kX[i], w = Monomial::zeta(3, 1 + static_cast<int>(i % 2));
        inst(pw, lbl({{"x", x}, {"w", w}}),
             [=](const Rational& N) { return ThetaQuotient().theta(x, 1).theta(x * w, 1).theta(x * w.pow(2), 1).expand(N); },
             [=](const Rational& N) { return ThetaQuotient().J(1, 3).J(3, -1).theta(x.pow(3), 3).expand(N); });
    }
}

void add_dissections(CatalogBuilder& c) {
    for (int k = 1; k <= 5; ++k) {
        const std::string id = "3dis" + std::to_string(k);
        auto& e = c.add(id, "3-dissection of an eta quotient", "none", EntryKind::Dissection, 1, 1);
        inst(e, "components at q^3", [id](const Rational& N) { return build_named_series(id + "-lhs", N); },
             [id](const Rational& N) { return build_named_series(id + "-rhs", N); });
    }
}

QSeries class_part(const QSeries& s, int r) {
    return substitute_q_power(dissect(s, 3)[r], Rational(3)) * qp(r);
}

void add_application(CatalogBuilder& c) {
    const Monomial z3 = Monomial::zeta(3);
    const Monomial m1 = Monomial::minus_one();

    auto& abc = c.add("ABCDEFG", "constants A..G against triple products", "none", EntryKind::Application);
    const std::vector<std::tuple<char, int, std::vector<OFactor>>> consts = {
        {'A', 0, {{-qp(12), 27, 1}}},
        {'B', 1, {{-qp(21), 27, 1}}},
        {'C', 2, {{-qp(3), 27, 1}}},
        {'D', 0, {{qp(60), 108, 1}, {-qp(30), 108, -1}}},
        {'E', 6, {{qp(84), 108, 1}, {-qp(42), 108, -1}}},
        {'F', 0, {{qp(24), 108, 1}, {-qp(12), 108, -1}}},
        {'G', 12, {{qp(96), 108, 1}, {-qp(48), 108, -1}}},
    };
    for (const auto& [name, e, f] : consts)
        inst(abc, std::string(1, name), [name = name](const Rational& N) { return build_named_series(std::string(1, name), N); },
             [e = e, f = f](const Rational& N) { return oracle_quotient(cyc(1), qp(e), f, {}, N); });

    const auto product_classes = [](const std::string& first) {
        return [first](const Rational& N) {
            return build_named_series(first, N) * build_named_series("3dis1-lhs", N) * build_named_series("3dis2-lhs", N);
        };
    };
    auto& gn = c.add("GN", "triple sums G_N are the residue classes of g W f", "N in {0,1,2}", EntryKind::Application);
    auto& hn = c.add("HN", "triple sums H_N are the residue classes of h W f", "N in {0,1,2}", EntryKind::Application);
    for (int r = 0; r < 3; ++r) {
        const auto gprod = product_classes("3dis3-lhs");
        const auto hprod = product_classes("3dis4-lhs");
        inst(gn, "N=" + std::to_string(r), [r](const Rational& N) { return build_named_series("G" + std::to_string(r), N); },
             [r, gprod](const Rational& N) { return class_part(gprod(N), r).truncate(N); });
        inst(hn, "N=" + std::to_string(r), [r](const Rational& N) { return build_named_series("H" + std::to_string(r), N); },
             [r, hprod](const Rational& N) { return class_part(hprod(N), r).truncate(N); });
    }

    auto& thm = c.add("thm5.1", "3-dissection of O_3(zeta_3;q)", "none", EntryKind::Application, 3, 1);
    inst(thm, "Bbar0 + B1 + B2", [z3](const Rational& N) { return o_d_direct(3, z3, N); },
         [](const Rational& N) { return build_named_series("3dis-rhs", N); });

    const auto combine_lhs = [z3](const Rational& N) {
        return ThetaQuotient().theta(z3 * qp(15), 18).theta(-z3 * qp(15), 18, -1).expand(N) +
               ThetaQuotient().theta(z3 * qp(21), 18).theta(-z3 * qp(21), 18, -1).expand(N);
    };
    auto& comb = c.add("combine", "sum of two theta ratios at zeta_3 q^15, zeta_3 q^21", "none", EntryKind::Application, 3, 1);
    inst(comb, "zeta3", combine_lhs, [z3](const Rational& N) {
        const Cyclotomic w2 = z3.pow(2).coeff();
        ThetaQuotient t(Cyclotomic(-2) * w2 * (Cyclotomic(1) - w2));
        return t.times(qp(3)).J(6, 2).J(9, 2).J(36, 2).J(54, 2).J(3, -1).J(18, -6).J(27, -1).expand(N);
    });

    auto& in = c.add("inter", "first Lambda terms collapse to an eta quotient", "none", EntryKind::Application, 3, 1);
    inst(in, "zeta3",
         [z3, combine_lhs](const Rational& N) {
             ThetaQuotient pre(-(z3.coeff() - z3.pow(2).coeff()) * cyc(1, 2));
             pre.J(2).J(6).J(18, 4).J(4, -2).J(36, -2).theta(-z3 * qp(9), 18, -1);
             const QSeries p = pre.expand(N);
             return (p * combine_lhs(N - p.valuation())).truncate(N);
         },
         [](const Rational& N) {
             return ThetaQuotient(cyc(3)).times(qp(3)).J(2).J(6, 3).J(9).J(108).J(3, -1).J(4, -2).J(18, -1).J(36, -1).expand(N);
         });

    auto& st = c.add("step4", "4 Psi_2^3 - 2 Psi_1^3 at (q^9,-1,-1;q^18) as theta quotients", "none",
                     EntryKind::Application);
    inst(st, "x=q^9, z=z'=-1, base q^18",
         [m1](const Rational& N) {
             return psi(2, 3, qp(9), m1, m1, qp(18), N) * cyc(4) - psi(1, 3, qp(9), m1, m1, qp(18), N) * cyc(2);
         },
         [](const Rational& N) {
             ThetaQuotient pre(cyc(-3, 2));
             pre.times(qp(-9)).J(18).J(27).J(108).J(162, 5).J(36, -2).J(54, -1).J(81, -1).J(324, -3);
             ThetaQuotient a = pre, b = pre;
             a.theta(qp(27), 162).theta(-qp(27), 162, -1);
             b.theta(qp(81), 162).theta(-qp(81), 162, -1);
             return a.expand(N) + b.expand(N);
         });

    auto& pv = c.add("psi0-vanish", "Psi_0^3(q^9,-1,-1;q^18) = 0", "none", EntryKind::Application);
    pv.asserts_vanishing = true;
    inst(pv, "x=q^9, z=z'=-1, base q^18", [m1](const Rational& N) { return psi(0, 3, qp(9), m1, m1, qp(18), N); },
         zero_series());

    auto& rw = c.add("rewrite", "O_3(zeta_3;q) as a difference of residue counts", "none", EntryKind::Application, 63, 1);
    inst(rw, "rank tables", [z3](const Rational& N) { return o_d_direct(3, z3, N); },
         [](const Rational& N) {
             const auto t = cached_rank_tables(3, max_row(N));
             return table_series(
                 [&](int n) { return Cyclotomic(BigRational(t->residue_count(0, 3, n) - t->residue_count(2, 3, n))); }, N);
         });
    inst(rw, "pairs of deviations from the formulas", [z3](const Rational& N) { return o_d_direct(3, z3, N); },
         [](const Rational& N) {
             const FormulaParams fp = default_params(3, 3);
             return deviation_pair_by_formula(3, 3, 3, fp, N) - deviation_pair_by_formula(3, 2, 3, fp, N);
         });
}

void add_single_deviations(CatalogBuilder& c) {
    auto& m1 = c.add("meven1", "single deviation, M even, d odd", "0 <= n < M", EntryKind::Theorem, 84, 4);
    auto& m2 = c.add("meven2", "single deviation, M even, d even", "0 <= n < M", EntryKind::Theorem, 28, 4);
    for (const auto& [d, M] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {3, 4}, {2, 2}, {2, 4}, {4, 4}})
        for (int n = 0; n < M; ++n) {
            const FormulaParams fp = default_params(d, M);
            inst(d % 2 ? m1 : m2, dam(d, n, M) + "; " + fp.str(),
                 [d = d, n, M = M](const Rational& N) { return deviation_by_definition(d, n, M, N); },
                 [d = d, n, M = M, fp](const Rational& N) { return single_deviation(d, n, M, fp, N); });
        }

    auto& fa = c.add("forallm", "Dbar_d(n,M) as an average of O_d over M-th roots", "0 <= n < M", EntryKind::Theorem, 60, 1);
    for (const auto& [d, M] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 4}, {4, 5}})
        for (int n = 0; n < M; ++n)
            inst(fa, dam(d, n, M), [d = d, n, M = M](const Rational& N) { return deviation_by_definition(d, n, M, N); },
                 [d = d, n, M = M](const Rational& N) { return deviation_by_root_average(d, n, M, N); });

    auto& lf = c.add("left", "M even: k = M/2 split off, k and M-k paired", "0 <= n < M", EntryKind::Theorem, 12, 1);
    for (const auto& [d, M] : std::vector<std::pair<int, int>>{{1, 2}, {2, 4}, {3, 6}})
        for (int n = 0; n < M; ++n)
            inst(lf, dam(d, n, M), [d = d, n, M = M](const Rational& N) { return deviation_by_definition(d, n, M, N); },
                 [d = d, n, M = M](const Rational& N) { return deviation_by_paired_average(d, n, M, N); });

    // Dbar_n = sum_{i<=n} [Dbar((M+1)/2 + i) + Dbar((M-1)/2 - i)].
    const auto big_d = [](int d, int M, int n, const Rational& N) {
        QSeries s = QSeries::zero(N);
        const int h = (M + 1) / 2;
        for (int i = 0; i <= n; ++i) s += deviation_by_definition(d, h + i, M, N) + deviation_by_definition(d, h - 1 - i, M, N);
        return s;
    };
    auto& ds = c.add("dnsym", "M odd: single deviation as half a telescoping difference", "0 <= n <= (M-1)/2",
                     EntryKind::Theorem);
    auto& ds2 = c.add("dnsym2", "M odd: telescoping sums as sums of pairs from the formulas", "0 <= n <= (M-1)/2",
                      EntryKind::Theorem, 105, 4);
    for (const auto& [d, M] : std::vector<std::pair<int, int>>{{1, 3}, {2, 5}, {3, 5}})
        for (int n = 0; 2 * n <= M - 1; ++n) {
            inst(ds, "d=" + std::to_string(d) + ", M=" + std::to_string(M) + ", n=" + std::to_string(n),
                 [d = d, M = M, n](const Rational& N) { return deviation_by_definition(d, (M + 1) / 2 + n, M, N); },
                 [d = d, M = M, n, big_d](const Rational& N) {
                     QSeries r = big_d(d, M, n, N);
                     if (n > 0) r -= big_d(d, M, n - 1, N);
                     return r * cyc(1, 2);
                 });
            const FormulaParams fp = default_params(d, M);
            inst(ds2, "d=" + std::to_string(d) + ", M=" + std::to_string(M) + ", n=" + std::to_string(n) + "; " + fp.str(),
                 [d = d, M = M, n, big_d](const Rational& N) { return big_d(d, M, n, N); },
                 [d = d, M = M, n, fp](const Rational& N) {
                     QSeries s = QSeries::zero(N);
                     for (int i = 0; i <= n; ++i) s += deviation_pair_by_formula(d, (M + 1) / 2 - n + 2 * i, M, fp, N);
                     return s;
                 });
        }
}

std::vector<CatalogEntry> build_catalog() {
    CatalogBuilder c;
    add_theorems(c);
    add_generating(c);
    add_appell(c);
    add_j_identities(c);
    add_dissections(c);
    add_application(c);
    add_single_deviations(c);
    std::sort(c.entries.begin(), c.entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return {std::make_move_iterator(c.entries.begin()), std::make_move_iterator(c.entries.end())};
}

}  // namespace

const std::vector<std::string>& manifest() {
    static const std::vector<std::string> ids = {
        // deviations and generating functions
        "dev1", "dev2", "gen", "dev", "nd", "m2rank", "thm1.1-i", "thm1.1-ii", "thm1.1-iii", "thm1.2", "dgensymmetry",
        // Appell-Lerch apparatus
        "al", "delta", "psikndef", "genlam", "switch", "orthog", "flip1", "flip2", "eval", "htom", "sim", "overkey",
        "prop2.4-odd", "prop2.4-even", "gen1",
        // theta functions
        "j-identities-j", "j-identities-jvan", "j-identities-j1", "j-identities-j2", "j-identities-closed-q-q2",
        "j-identities-closed-q-q3", "j-identities-closed-q-q6", "j-identities-closed-m1-q",
        "j-identities-closed-mq-q3", "j-identities-closed-mq-q6", "j-identities-jnew1", "j-identities-jnew2",
        "j-identities-MH12f", "j-identities-MH14a", "j-identities-MH14b", "j-identities-MH14c", "j-identities-MH14e",
        "j-identities-AHw1", "j-identities-AHw2", "j-identities-AHwnew", "j-identities-AHwnew2a",
        "j-identities-AHwnew3a", "j-identities-prodw",
        // dissections
        "3dis1", "3dis2", "3dis3", "3dis4", "3dis5",
        // single deviations
        "meven1", "meven2", "forallm", "left", "dnsym", "dnsym2",
        // O_3(zeta_3;q)
        "ABCDEFG", "GN", "HN", "thm5.1", "combine", "inter", "step4", "psi0-vanish", "rewrite",
    };
    return ids;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto e = build_catalog();
        std::set<std::string> have, want(manifest().begin(), manifest().end());
        for (const auto& x : e)
            if (!have.insert(x.id).second) throw Error("duplicate catalog id: " + x.id);
        if (have != want) throw Error("catalog does not match its manifest");
        return e;
    }();
    return entries;
}

const CatalogEntry& find_entry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw UnknownName(id);
}

}  // namespace qrank
