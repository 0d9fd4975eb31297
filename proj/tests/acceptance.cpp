// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "qrank/appell.hpp"
#include "qrank/harness.hpp"
#include "qrank/overpartitions.hpp"

using namespace qrank;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (!ok) detail << "; ";
        else detail.str("");
        ok = false;
        detail << what;
    }
};

bool same(Outcome& o, const std::string& what, const QSeries& a, const QSeries& b, const Rational& order) {
    const auto m = first_mismatch(a, b, order);
    if (m) o.fail(what + ": first mismatch at q^" + m->exponent.str());
    return !m;
}

QSeries pair_by_definition(int d, int a, int M, const Rational& N) {
    return deviation_by_definition(d, a, M, N) + deviation_by_definition(d, a - 1, M, N);
}

std::string dam(int d, int a, int M) {
    return "(" + std::to_string(d) + "," + std::to_string(a) + "," + std::to_string(M) + ")";
}

void theorem_cases(Outcome& o, const std::vector<std::array<int, 3>>& cases) {
    const Rational N(30);
    for (const auto& [d, a, M] : cases)
        same(o, dam(d, a, M), pair_by_definition(d, a, M, N), deviation_pair_by_formula(d, a, M, default_params(d, M), N),
             N);
    if (o.ok) o.detail << cases.size() << " cases equal to q^30";
}

// Runs catalog entries and requires at least `min_instances` passing instances each.
void catalog_entries(Outcome& o, const std::vector<std::string>& ids, const Rational& order,
                     std::size_t min_instances = 1) {
    std::size_t n = 0;
    for (const auto& id : ids) {
        const auto reports = verify(find_entry(id), order);
        if (reports.size() < min_instances) o.fail(id + ": only " + std::to_string(reports.size()) + " instances");
        for (const auto& r : reports) {
            ++n;
            if (r.passed()) continue;
            std::string why = id + " [" + r.instantiation + "] " + to_string(r.verdict);
            if (r.mismatch) why += " at q^" + r.mismatch->exponent.str();
            o.fail(why);
        }
    }
    if (o.ok) o.detail << n << (n == 1 ? " instance passes" : " instances pass") << " to q^" << order.str();
}

Outcome criterion1() {
    Outcome o;
    const std::vector<std::array<int, 3>> cases = {{1, 2, 2}, {3, 2, 4}, {1, 4, 6}, {3, 4, 4}};
    theorem_cases(o, cases);
    // The exponents as printed only hold for d = 1; report that alongside.
    std::vector<std::string> printed_fail;
    const Rational N(30);
    for (const auto& [d, a, M] : cases) {
        const QSeries printed = deviation_pair_by_formula(d, a, M, default_params(d, M), N, EvenEvenForm::Printed);
        if (first_mismatch(pair_by_definition(d, a, M, N), printed, N)) printed_fail.push_back(dam(d, a, M));
    }
    if (!printed_fail.empty()) {
        o.detail << " with q-powers scaled by d^2; unscaled form fails at";
        for (const auto& c : printed_fail) o.detail << ' ' << c;
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    theorem_cases(o, {{1, 2, 3}, {3, 2, 3}, {1, 2, 5}});
    return o;
}

Outcome criterion3() {
    Outcome o;
    theorem_cases(o, {{1, 1, 3}, {1, 3, 3}, {3, 3, 3}, {1, 3, 5}});
    return o;
}

Outcome criterion4() {
    Outcome o;
    theorem_cases(o, {{2, 1, 2}, {2, 1, 3}, {2, 2, 3}, {4, 1, 3}});
    return o;
}

Outcome criterion5() {
    Outcome o;
    const Rational N(40);
    const std::vector<std::pair<Monomial, Monomial>> choices = {{Monomial::zeta(3), Monomial::zeta(3, 2)},
                                                                 {Monomial::zeta(4), Monomial::zeta(6)}};
    int checks = 0;
    for (int d = 1; d <= 4; ++d)
        for (const auto& z : {Monomial::zeta(5), Monomial::zeta(7, 2)}) {
            const QSeries direct = o_d_product_form(d, z, N) * (Cyclotomic(1) + z.coeff());
            std::vector<QSeries> by_choice;
            for (const auto& [z0, zp] : choices) {
                by_choice.push_back(s_bar_d(d, z, z0, zp, N));
                same(o, "d=" + std::to_string(d) + " z=" + z.str() + " z0=" + z0.str(), by_choice.back(), direct, N);
                ++checks;
            }
            same(o, "z'-independence d=" + std::to_string(d) + " z=" + z.str(), by_choice[0], by_choice[1], N);
        }
    if (o.ok) o.detail << checks << " formula evaluations equal (1+z) O_d(z;q) to q^40; choices agree";
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (int d : {1, 2})
        if (!(rank_tables_by_enumeration(d, 20) == rank_tables(d, 20)))
            o.fail("d=" + std::to_string(d) + " enumeration differs from the generating function");
    const auto counts = overpartition_counts(20);
    if (enumerate_overpartitions(4).size() != 14 || counts[4] != 14) o.fail("pbar(4) != 14");
    for (int n = 0; n <= 20; ++n)
        if (BigInt(static_cast<long>(enumerate_overpartitions(n).size())) != counts[n])
            o.fail("pbar(" + std::to_string(n) + ") enumeration mismatch");
    if (o.ok) o.detail << "Nbar_1, Nbar_2 agree for n <= 20; pbar(4) = 14, pbar(20) = " << counts[20].get_str();
    return o;
}

Outcome criterion7() {
    Outcome o;
    catalog_entries(o, {"3dis1", "3dis2", "3dis3", "3dis4", "3dis5"}, Rational(120));
    return o;
}

Outcome criterion8() {
    Outcome o;
    catalog_entries(o, {"thm5.1"}, Rational(60));
    // O_3(zeta_3;q) against Nbar_3(0,3,n) - Nbar_3(2,3,n) read off the tables.
    const int maxN = 30;
    const RankTables t = rank_tables(3, maxN);
    std::vector<Cyclotomic> coeffs;
    for (int n = 0; n <= maxN; ++n)
        coeffs.emplace_back(BigRational(t.residue_count(0, 3, n) - t.residue_count(2, 3, n)));
    const QSeries from_tables = QSeries::from_coefficients(1, 0, coeffs, maxN + 1);
    if (same(o, "rewrite", o_d_direct(3, Monomial::zeta(3), Rational(maxN + 1)), from_tables, Rational(maxN + 1)))
        o.detail << "; residue counts reproduce O_3(zeta_3;q) for n <= 30";
    return o;
}

Outcome criterion9() {
    Outcome o;
    catalog_entries(o,
                    {"flip1", "flip2", "eval", "switch", "orthog", "htom", "j-identities-j1", "j-identities-j2",
                     "j-identities-jnew1", "j-identities-jnew2", "j-identities-MH12f", "j-identities-MH14a",
                     "j-identities-MH14b", "j-identities-MH14c", "j-identities-MH14e", "j-identities-AHw1",
                     "j-identities-AHw2", "j-identities-AHwnew", "j-identities-AHwnew2a", "j-identities-AHwnew3a",
                     "j-identities-prodw"},
                    Rational(30), 3);
    const std::string first = o.detail.str();
    Outcome late;
    catalog_entries(late, {"combine", "inter", "step4"}, Rational(60));
    catalog_entries(late, {"psi0-vanish"}, Rational(100));
    if (!late.ok) o.fail(late.detail.str());
    if (o.ok) o.detail.str(first + "; combine, inter, step4 to q^60; Psi_0^3 vanishes to q^100");
    return o;
}

Outcome criterion10() {
    Outcome o;
    const Rational N(30);
    int checks = 0;
    for (int d = 1; d <= 4; ++d)
        for (int M = 2; M <= 6; ++M) {
            std::vector<QSeries> D;
            QSeries total = QSeries::zero(N);
            for (int a = 0; a < M; ++a) {
                D.push_back(deviation_by_definition(d, a, M, N));
                total += D.back();
            }
            same(o, "sum d=" + std::to_string(d) + " M=" + std::to_string(M), total, QSeries::zero(N), N);
            for (int a = 1; a < M; ++a)
                same(o, "symmetry " + dam(d, a, M), D[a], D[M - a], N);
            ++checks;
        }
    const Rational N25(25);
    int routes = 0;
    for (const auto& [d, M] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {1, 2}, {2, 2}, {3, 3}})
        for (int a = 0; a < M; ++a) {
            const QSeries def = deviation_by_definition(d, a, M, N25);
            same(o, "single " + dam(d, a, M), single_deviation(d, a, M, default_params(d, M), N25), def, N25);
            same(o, "root average " + dam(d, a, M), deviation_by_root_average(d, a, M, N25), def, N25);
            if (M % 2 == 0)
                same(o, "paired average " + dam(d, a, M), deviation_by_paired_average(d, a, M, N25), def, N25);
            ++routes;
        }
    if (o.ok)
        o.detail << checks << " (d,M) pairs: residues sum to 0 and Dbar(a) = Dbar(M-a) to q^30; " << routes
                 << " single deviations match to q^25";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("error: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.ok;
        std::cout << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail.str() << "  ("
                  << s << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
