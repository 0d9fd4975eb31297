#include "qrank/overpartitions.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <ostream>

#include "qrank/appell.hpp"

namespace qrank {

namespace {

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

// Tr_{Q(zeta_e)/Q}(zeta_e^k) for k = 0..e-1 (Ramanujan sums).
std::vector<long> trace_table(std::int64_t e) {
    std::vector<long> t(static_cast<std::size_t>(e), 0);
    for (std::int64_t k = 0; k < e; ++k) {
        const std::int64_t g = gcd64(e, k);
        long s = 0;
        for (std::int64_t div = 1; div <= g; ++div)
            if (g % div == 0) s += div * mobius(e / div);
        t[static_cast<std::size_t>(k)] = s;
    }
    return t;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

Monomial qp(const Rational& e) { return Monomial::q_power(e); }

// c * pre * m(x, base, z) with the m-expansion sized for the shift.
QSeries scaled_m(const Cyclotomic& c, const Monomial& pre, const Monomial& x, const Monomial& base,
                 const Monomial& z, const Rational& order) {
    return appell_m(x, base, z, order - pre.exp()) * pre * c;
}

QSeries scaled_psi(const Cyclotomic& c, const Monomial& pre, std::int64_t k, std::int64_t n, const Monomial& x,
                   const Monomial& z, const Monomial& zp, const Monomial& base, const Rational& order) {
    return psi(k, n, x, z, zp, base, order - pre.exp()) * pre * c;
}

Monomial sign(std::int64_t e) { return Monomial::minus_one().pow(e); }

}  // namespace

// ---------------------------------------------------------------------------
// Overpartitions

int Overpartition::size() const {
    int s = 0;
    for (const auto& p : parts) s += p.value;
    return s;
}

std::string Overpartition::str() const {
    if (parts.empty()) return "()";
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "+";
        out += (p.overlined ? "~" : "") + std::to_string(p.value);
    }
    return out;
}

std::vector<Overpartition> enumerate_overpartitions(int n) {
    std::vector<Overpartition> out;
    Overpartition cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(max_part, remaining); v >= 1; --v) {
            for (int k = 1; k * v <= remaining; ++k) {
                for (bool over : {false, true}) {
                    const std::size_t keep = cur.parts.size();
                    for (int i = 0; i < k; ++i) cur.parts.push_back({v, over && i == 0});
                    rec(remaining - k * v, v - 1);
                    cur.parts.resize(keep);
                }
            }
        }
    };
    rec(n, n);
    return out;
}

int rank(const Overpartition& p) {
    if (p.parts.empty()) return 0;
    return p.largest() - static_cast<int>(p.parts.size());
}

int m2_rank(const Overpartition& p) {
    if (p.parts.empty()) return 0;
    const int l = p.largest();
    int odd_plain = 0;
    for (const auto& part : p.parts)
        if (part.value % 2 == 1 && !part.overlined) ++odd_plain;
    const bool chi = (l % 2 == 1) && !p.parts.front().overlined;
    return (l + 1) / 2 - static_cast<int>(p.parts.size()) + odd_plain - (chi ? 1 : 0);
}

std::vector<BigInt> overpartition_counts(int maxN) {
    const QSeries gf = eta_quotient({{2, 1}, {1, -2}}, maxN + 1);
    std::vector<BigInt> out;
    for (int n = 0; n <= maxN; ++n) out.push_back(gf.coeff(n).rational_value().get_num());
    return out;
}

// ---------------------------------------------------------------------------
// Rank tables

RankTables::RankTables(int d, int maxN) : d_(d), max_n_(maxN) {
    for (int n = 0; n <= maxN; ++n) rows_.emplace_back(static_cast<std::size_t>(2 * n + 1), BigInt(0));
}

const BigInt& RankTables::count(int m, int n) const {
    static const BigInt zero = 0;
    if (n < 0 || n > max_n_) throw Error("rank table row " + std::to_string(n) + " not computed");
    if (m < -n || m > n) return zero;
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m + n)];
}

BigInt& RankTables::at(int m, int n) {
    if (n < 0 || n > max_n_ || m < -n || m > n) throw Error("rank table index out of range");
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m + n)];
}

BigInt RankTables::pbar(int n) const {
    BigInt s = 0;
    for (int m = -n; m <= n; ++m) s += count(m, n);
    return s;
}

BigInt RankTables::residue_count(int a, int M, int n) const {
    BigInt s = 0;
    for (int m = -n; m <= n; ++m)
        if (mod(m - a, M) == 0) s += count(m, n);
    return s;
}

void RankTables::write_csv(std::ostream& os) const {
    os << "d,m,n,count\n";
    for (int n = 0; n <= max_n_; ++n)
        for (int m = -n; m <= n; ++m)
            if (count(m, n) != 0) os << d_ << ',' << m << ',' << n << ',' << count(m, n).get_str() << '\n';
}

bool operator==(const RankTables& a, const RankTables& b) {
    return a.d_ == b.d_ && a.max_n_ == b.max_n_ && a.rows_ == b.rows_;
}

RankTables rank_tables(int d, int maxN) {
    const std::int64_t K = 2 * maxN + 3;
    const Rational order(maxN + 1);
    std::vector<std::vector<BigRational>> acc(static_cast<std::size_t>(maxN + 1));
    for (int n = 0; n <= maxN; ++n) acc[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(2 * n + 1), 0);

    // sum_{j mod K} O(zeta_K^j) zeta_K^{-jm} = sum_{e | K} Tr_e(O(zeta_e) zeta_e^{-m})
    for (std::int64_t e = 1; e <= K; ++e) {
        if (K % e) continue;
        const QSeries O = e == 1 ? o_d_product_form(d, Monomial::one(), order)
                                 : o_d_direct(d, Monomial::zeta(e, 1), order).embed(e);
        const auto tr = trace_table(e);
        const auto& field = CyclotomicField::get(e);
        for (int n = 0; n <= maxN; ++n) {
            const Cyclotomic c = O.coeff(n).embed(field.level());
            for (int m = -n; m <= n; ++m) {
                BigRational s = 0;
                for (int i = 0; i < field.degree(); ++i) {
                    const BigRational ci = c.coeff(i);
                    if (ci == 0) continue;
                    s += ci * tr[static_cast<std::size_t>(mod(i - m, e))];
                }
                acc[static_cast<std::size_t>(n)][static_cast<std::size_t>(m + n)] += s;
            }
        }
    }
    RankTables t(d, maxN);
    for (int n = 0; n <= maxN; ++n) {
        for (int m = -n; m <= n; ++m) {
            BigRational v = acc[static_cast<std::size_t>(n)][static_cast<std::size_t>(m + n)] / BigRational(K);
            v.canonicalize();
            if (v.get_den() != 1)
                throw Error("internal: non-integral rank count at m=" + std::to_string(m) + ", n=" + std::to_string(n));
            t.at(m, n) = v.get_num();
        }
    }
    return t;
}

RankTables rank_tables_by_enumeration(int d, int maxN) {
    if (d != 1 && d != 2) throw UnsupportedCase("combinatorial statistics exist only for d = 1 and d = 2");
    RankTables t(d, maxN);
    for (int n = 0; n <= maxN; ++n)
        for (const auto& p : enumerate_overpartitions(n)) t.at(d == 1 ? rank(p) : m2_rank(p), n) += 1;
    return t;
}

std::shared_ptr<const RankTables> cached_rank_tables(int d, int maxN) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const RankTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end() && it->second->max_n() >= maxN) return it->second;
    auto t = std::make_shared<const RankTables>(rank_tables(d, maxN));
    cache[d] = t;
    return t;
}

QSeries deviation_by_definition(int d, int a, int M, const Rational& order) {
    if (M < 1) throw Error("modulus must be positive");
    const int maxN = static_cast<int>(std::max<std::int64_t>(0, order.ceil() - 1));
    const auto t = cached_rank_tables(d, maxN);
    std::vector<Cyclotomic> coeffs;
    for (int n = 0; Rational(n) < order; ++n)
        coeffs.emplace_back(BigRational(t->residue_count(a, M, n)) - BigRational(t->pbar(n), M));
    return QSeries::from_coefficients(1, 0, std::move(coeffs), order.ceil());
}

// ---------------------------------------------------------------------------
// Theorem formulas

std::string FormulaParams::str() const { return "z'=" + zp.str() + ", z''=" + zpp.str() + ", z0=" + z0.str(); }

FormulaParams default_params(int d, int M) {
    for (std::int64_t p : {7, 11, 13}) {
        if ((static_cast<std::int64_t>(d) * M) % p == 0) continue;
        return {Monomial::zeta(p, 1), Monomial::zeta(p, 2), Monomial::zeta(p, 3)};
    }
    throw UnsupportedCase("no default parameter prime is coprime to d*M");
}

namespace {

// Normalizes a into 1..M (pairs are periodic in a with period M).
int wrap(int a, int M) { return static_cast<int>(mod(a - 1, M)) + 1; }

// (2/M) sum_j zeta_M^{-aj} (1 - zeta_M^j) Lambda(d, zeta_M^j, z0, -1), j = 1..M-1.
QSeries lambda_sum(int d, int a, int M, const Monomial& z0, const Rational& order) {
    QSeries s = QSeries::zero(order);
    for (int j = 1; j < M; ++j) {
        const Monomial zj = Monomial::zeta(M, j);
        const Cyclotomic c = Monomial::zeta(M, -a * j).coeff() * (Cyclotomic(1) - zj.coeff());
        s += lambda(d, zj, z0, Monomial::minus_one(), order) * c;
    }
    return s * Cyclotomic(BigRational(2, M));
}

QSeries pair_odd_d(int d, int a, int M, const FormulaParams& fp, const Rational& N, EvenEvenForm form) {
    const std::int64_t d2 = static_cast<std::int64_t>(d) * d;
    const Monomial m1 = Monomial::minus_one();
    QSeries out = QSeries::zero(N);
    if (a % 2 == 0 && M % 2 == 0) {
        if (a == M) out += QSeries::constant(1);
        if (form == EvenEvenForm::Printed) {
            const Monomial pre = sign(a / 2) * qp(Rational(-a * a, 4) + Rational(a * (1 - d2), 2));
            const Monomial x = sign(M / 2 + 1) * qp(Rational(M * M, 4) - Rational(a * M, 2) + Rational(M * (1 - d2), 2));
            out += scaled_m(2, pre, x, qp(Rational(M * M, 2)), fp.zp, N);
            out += scaled_psi(-2, qp(-d2), a / 2 - 1, M / 2, qp(-d2), m1, fp.zp, qp(2), N);
        } else {
            const Monomial pre = sign(a / 2) * qp(Rational(-d2 * a * a, 4));
            const Monomial x = sign(M / 2 + 1) * qp(Rational(d2 * (M * M - 2 * a * M), 4));
            out += scaled_m(2, pre, x, qp(Rational(d2 * M * M, 2)), fp.zp, N);
            out += scaled_psi(-2, qp(-d2), a / 2 - 1, M / 2, qp(-d2), m1, fp.zp, qp(2 * d2), N);
        }
    } else if (a % 2 == 0) {
        const int k1 = (2 * M - a) / 2, k2 = (M + 1 - a) / 2;
        const Monomial base = qp(2 * d2 * M * M);
        out += scaled_m(2, sign(a / 2) * qp(-d2 * k1 * k1), qp(d2 * M * (a - M)), base, fp.zp, N);
        out += scaled_m(2, sign(k2) * qp(-d2 * k2 * k2), qp(d2 * M * (a - 1)), base, fp.zpp, N);
        out += scaled_psi(-2, Monomial::one(), k1, M, qp(d2), m1, fp.zp, qp(2 * d2), N);
        out += scaled_psi(2, Monomial::one(), k2, M, qp(d2), m1, fp.zpp, qp(2 * d2), N);
    } else {
        if (a == M) out += QSeries::constant(1);
        const int k1 = (M - a) / 2, k2 = (2 * M + 1 - a) / 2;
        const Monomial base = qp(2 * d2 * M * M);
        out += scaled_m(-2, sign(k1) * qp(-d2 * k1 * k1), qp(d2 * M * a), base, fp.zp, N);
        out += scaled_m(2, sign((a + 1) / 2) * qp(-d2 * k2 * k2), qp(d2 * M * (a - M - 1)), base, fp.zpp, N);
        out += scaled_psi(-2, Monomial::one(), k1, M, qp(d2), m1, fp.zp, qp(2 * d2), N);
        out += scaled_psi(2, Monomial::one(), k2, M, qp(d2), m1, fp.zpp, qp(2 * d2), N);
    }
    out += lambda_sum(d, a, M, fp.z0, N);
    return out.truncate(N);
}

QSeries pair_even_d(int d, int a, int M, const FormulaParams& fp, const Rational& N) {
    const std::int64_t d2 = static_cast<std::int64_t>(d) * d;
    const Monomial m1 = Monomial::minus_one();
    const Monomial mbase = qp(Rational(d2 * M * M, 2));
    const Monomial msign = sign(1 + d * M / 2);
    QSeries out = QSeries::zero(N);
    if (a == 1) out += QSeries::constant(1);
    out += scaled_m(2, sign(d * a / 2) * qp(Rational(-d2 * a * a, 4)),
                    msign * qp(Rational(d2 * (M * M - 2 * M * a), 4)), mbase, fp.zp, N);
    out += scaled_m(2, sign(d * (a - 1) / 2 + 1) * qp(Rational(-d2 * (a * a - 2 * a + 1), 4)),
                    msign * qp(Rational(d2 * (M * M - 2 * M * (a - 1)), 4)), mbase, fp.zpp, N);
    const Monomial x = sign(d / 2 + 1) * qp(Rational(d2, 4));
    const Monomial pbase = qp(Rational(d2, 2));
    out += scaled_psi(2, Monomial::one(), a, M, x, m1, fp.zp, pbase, N);
    out += scaled_psi(-2, Monomial::one(), a - 1, M, x, m1, fp.zpp, pbase, N);
    const Monomial pre = sign(d / 2) * qp(Rational(-d2, 4));
    QSeries sum = QSeries::zero(N - pre.exp());
    for (int j = 1; j < M; ++j) {
        const Monomial zj = Monomial::zeta(M, j);
        const Cyclotomic c = Monomial::zeta(M, j - a * j).coeff() * (Cyclotomic(1) - zj.coeff());
        sum += psi(0, d / 2, zj.pow(Rational(2, d)) * qp(1 - d), qp(1), m1, qp(2), N - pre.exp()) * c;
    }
    out += sum * pre * Cyclotomic(BigRational(2, M));
    return out.truncate(N);
}

}  // namespace

std::string pair_case(int d, int a, int M) {
    if (d < 1 || M < 2) throw UnsupportedCase("need d >= 1 and M >= 2");
    int b = wrap(a, M);
    if (d % 2 == 1) {
        if (b == 1 || (b % 2 == 1 && M % 2 == 0)) b = M - b + 1;
        if (b % 2 == 0 && M % 2 == 0) return "thm1.1-i";
        if (b % 2 == 0) return "thm1.1-ii";
        return "thm1.1-iii";
    }
    if (b == M) b = 1;
    if (b < 1 || b > M - 1) throw UnsupportedCase("no theorem case for this residue");
    return "thm1.2";
}

QSeries deviation_pair_by_formula(int d, int a, int M, const FormulaParams& params, const Rational& order,
                                  EvenEvenForm form) {
    pair_case(d, a, M);
    int b = wrap(a, M);
    if (d % 2 == 1) {
        if (b == 1 || (b % 2 == 1 && M % 2 == 0)) b = M - b + 1;
        return pair_odd_d(d, b, M, params, order, form);
    }
    if (b == M) b = 1;
    return pair_even_d(d, b, M, params, order);
}

QSeries single_deviation(int d, int a, int M, const FormulaParams& params, const Rational& order) {
    if (M < 2) throw UnsupportedCase("single deviations need M >= 2");
    const int n0 = static_cast<int>(mod(a, M));
    if (M % 2 == 1) {
        const int h = (M + 1) / 2;
        const int b = n0 < h ? M - n0 : n0;  // symmetric residue in h..M
        const int n = b - h;
        std::map<int, QSeries> pairs;
        auto pair = [&](int c) -> const QSeries& {
            const int key = wrap(c, M);
            auto it = pairs.find(key);
            if (it == pairs.end()) it = pairs.emplace(key, deviation_pair_by_formula(d, key, M, params, order)).first;
            return it->second;
        };
        auto big_d = [&](int k) {
            QSeries s = QSeries::zero(order);
            for (int i = 0; i <= k; ++i) s += pair(h - k + 2 * i);
            return s;
        };
        QSeries diff = big_d(n);
        if (n > 0) diff -= big_d(n - 1);
        return (diff * Cyclotomic(BigRational(1, 2))).truncate(order);
    }
    // M even: (-1)^n O_d(-1)/M + (1/M) sum_k (zeta^{-kn} + zeta^{kn}) S_d(zeta^k) / (1 + zeta^k)
    QSeries out = o_d_product_form(d, Monomial::minus_one(), order) * Cyclotomic(n0 % 2 == 0 ? 1 : -1);
    for (int k = 1; k < M / 2; ++k) {
        const Monomial zk = Monomial::zeta(M, k);
        const Cyclotomic c = (Monomial::zeta(M, -k * n0).coeff() + Monomial::zeta(M, k * n0).coeff()) *
                             (Cyclotomic(1) + zk.coeff()).inv();
        out += s_bar_d(d, zk, params.z0, params.zp, order) * c;
    }
    return (out * Cyclotomic(BigRational(1, M))).truncate(order);
}

QSeries deviation_by_root_average(int d, int n, int M, const Rational& order) {
    QSeries out = QSeries::zero(order);
    for (int k = 1; k < M; ++k) {
        const Monomial zk = Monomial::zeta(M, k);
        const QSeries O = 2 * k == M ? o_d_product_form(d, zk, order) : o_d_direct(d, zk, order);
        out += O * Monomial::zeta(M, -k * n).coeff();
    }
    return (out * Cyclotomic(BigRational(1, M))).truncate(order);
}

QSeries deviation_by_paired_average(int d, int n, int M, const Rational& order) {
    if (M % 2) throw UnsupportedCase("the paired average needs M even");
    QSeries out = o_d_product_form(d, Monomial::minus_one(), order) * Cyclotomic(n % 2 == 0 ? 1 : -1);
    for (int k = 1; k < M / 2; ++k) {
        const Monomial zk = Monomial::zeta(M, k);
        const Cyclotomic c = Monomial::zeta(M, -k * n).coeff() + Monomial::zeta(M, k * n).coeff();
        out += o_d_direct(d, zk, order) * c;
    }
    return (out * Cyclotomic(BigRational(1, M))).truncate(order);
}

}  // namespace qrank
