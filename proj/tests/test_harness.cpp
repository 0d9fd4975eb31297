#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "qrank/harness.hpp"

using namespace qrank;

namespace {

Monomial qp(Rational e) { return Monomial::q_power(e); }

// J_k from the bare product, raised to e.
QSeries J(std::int64_t k, std::int64_t e, const Rational& order) {
    return pow(oracle::pochhammer(qp(k), Rational(k), order), e, order);
}

void check_equal(const QSeries& a, const QSeries& b, const Rational& order) {
    const auto m = first_mismatch(a, b, order);
    CHECK_MESSAGE(!m, "mismatch at q^" << (m ? m->exponent.str() : "") << ": " << (m ? m->lhs.str() : "") << " vs "
                                       << (m ? m->rhs.str() : ""));
}

// Terms with exponent = r mod 3.
QSeries residue_part(const QSeries& s, int r, const Rational& order) {
    QSeries out = QSeries::zero(order);
    for (const auto& [e, c] : s.terms())
        if (e.den() == 1 && ((e.num() % 3) + 3) % 3 == r) out += QSeries::monomial(qp(e), c);
    return out;
}

nlohmann::json without_times(nlohmann::json j) {
    j["run"].erase("wall_ms");
    for (auto& e : j["entries"]) e.erase("wall_ms");
    return j;
}

}  // namespace

TEST_CASE("manifest and catalog agree") {
    std::set<std::string> ids;
    for (const auto& e : catalog()) {
        CHECK(ids.insert(e.id).second);
        CHECK_FALSE(e.instances.empty());
        CHECK(e.level >= 1);
        CHECK(e.denom >= 1);
    }
    const auto& m = manifest();
    CHECK(std::set<std::string>(m.begin(), m.end()) == ids);
    CHECK(m.size() == ids.size());
    CHECK(find_entry("eval").id == "eval");
    CHECK(find_entry("eval").kind == EntryKind::Identity);
    CHECK_THROWS_AS(find_entry("no-such-entry"), UnknownName);
}

TEST_CASE("entries declare the field they work in") {
    for (const auto& e : catalog())
        for (const auto& in : e.instances) {
            const Rational N = in.max_order ? std::min(*in.max_order, Rational(6)) : Rational(6);
            for (const auto& s : {in.lhs(N), in.rhs(N)})
                for (const auto& [x, c] : s.terms()) {
                    CHECK_MESSAGE(e.level % c.level() == 0, e.id << ": coefficient at level " << c.level());
                    CHECK_MESSAGE(e.denom % x.den() == 0, e.id << ": exponent " << x.str());
                }
        }
}

TEST_CASE("named series") {
    const Rational N(40);
    SUBCASE("W2 = 9 J3^9 / J1^12") {
        check_equal(build_named_series("W2", N), QSeries::constant(Cyclotomic(9)) * J(3, 9, N) * J(1, -12, N), N);
    }
    SUBCASE("f1 = -j(q^5;q^18)/(J1 J2)") {
        const QSeries rhs = -(oracle::theta_product(qp(5), Rational(18), N) * J(1, -1, N) * J(2, -1, N));
        check_equal(build_named_series("f1", N), rhs, N);
    }
    SUBCASE("G0 is the 0 mod 3 part of g W f") {
        const Rational n9(9);
        const QSeries W = J(1, -3, n9);
        const QSeries f = J(1, 1, n9) * J(6, 1, n9) * J(2, -1, n9) * J(3, -2, n9);
        const QSeries g = J(2, 4, n9) * J(8, 1, n9) * J(1, -1, n9) * J(4, -3, n9);
        check_equal(build_named_series("G0", n9), residue_part((g * W * f).truncate(n9), 0, n9), n9);
    }
    SUBCASE("every registered name builds") {
        for (const auto& name : named_series()) CHECK_NOTHROW(build_named_series(name, Rational(6)));
    }
    CHECK_THROWS_AS(build_named_series("W3", N), UnknownName);
}

TEST_CASE("glob matching") {
    CHECK(glob_match("*", "anything"));
    CHECK(glob_match("thm1.1-*", "thm1.1-ii"));
    CHECK_FALSE(glob_match("thm1.1-*", "thm1.2"));
    CHECK(glob_match("3dis?", "3dis4"));
    CHECK_FALSE(glob_match("3dis?", "3dis"));
    CHECK(glob_match("*-i*", "thm1.1-iii"));
    CHECK_FALSE(glob_match("", "x"));
}

TEST_CASE("verify single entries") {
    for (const auto& r : verify(find_entry("eval"))) {
        CHECK(r.passed());
        CHECK(r.order == Rational(30));
    }
    for (const auto& r : verify(find_entry("3dis3"), Rational(120))) CHECK(r.passed());
}

TEST_CASE("notes in reports") {
    for (const auto& r : verify(find_entry("psi0-vanish"), Rational(20))) {
        CHECK(r.passed());
        CHECK(r.note.find("truncation-limited") != std::string::npos);
    }
    for (const auto& r : verify(find_entry("m2rank"), Rational(25))) {
        CHECK(r.passed());
        CHECK(r.order == Rational(20));
        CHECK(r.note.find("capped at 20") != std::string::npos);
    }
}

TEST_CASE("suites") {
    SUBCASE("pair formulas for d odd") {
        const auto res = run_suite({.filter = "thm1.1-*"});
        CHECK(res.reports.size() >= 11);
        CHECK(res.all_passed());
        CHECK(res.count(Verdict::Pass) == res.reports.size());
    }
    SUBCASE("j-identities") {
        const auto res = run_suite({.filter = "j-identities-*", .jobs = 4});
        CHECK(res.reports.size() >= 3 * 20);
        CHECK(res.all_passed());
    }
    SUBCASE("smoke at order 10") {
        const auto res = run_suite({.filter = "*", .order = Rational(10), .jobs = 4});
        CHECK(res.all_passed());
        CHECK(res.count(Verdict::NonGeneric) == 0);
        std::set<std::string> ids;
        for (const auto& r : res.reports) ids.insert(r.id);
        CHECK(ids.size() == manifest().size());
        CHECK(std::is_sorted(res.reports.begin(), res.reports.end(),
                             [](const auto& a, const auto& b) { return a.id < b.id; }));
    }
}

TEST_CASE("report files and determinism") {
    const auto dir = std::filesystem::temp_directory_path() / "qrank_test_harness";
    std::filesystem::create_directories(dir);
    SuiteOptions opts{.filter = "j*", .order = Rational(12), .jobs = 3};
    opts.json_path = (dir / "run.json").string();
    opts.csv_path = (dir / "run.csv").string();
    const auto res = run_suite(opts);

    std::ifstream jf(opts.json_path);
    const auto doc = nlohmann::json::parse(jf);
    CHECK(doc["run"]["filter"] == "j*");
    CHECK(doc["run"]["order_override"] == "12");
    CHECK(doc["run"]["failed"] == 0);
    CHECK(doc["entries"].size() == res.reports.size());
    CHECK(doc["entries"][0]["verdict"] == "pass");

    std::ifstream cf(opts.csv_path);
    std::string line;
    std::getline(cf, line);
    CHECK(line == "id,instantiation,order,verdict,first_mismatch,note,wall_ms");
    std::size_t rows = 0;
    while (std::getline(cf, line)) ++rows;
    CHECK(rows == res.reports.size());

    const auto again = run_suite({.filter = "j*", .order = Rational(12), .jobs = 1});
    CHECK(without_times(again.to_json(opts)) == without_times(res.to_json(opts)));

    SuiteOptions bad{.filter = "eval"};
    bad.json_path = (dir / "missing" / "x.json").string();
    CHECK_THROWS_AS(run_suite(bad), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("failures are verdicts") {
    CatalogEntry e{.id = "broken", .summary = "1 = 1 + q"};
    e.instances.push_back({"x", [](const Rational& N) { return QSeries::zero(N) + QSeries::constant(Cyclotomic(1)); },
                           [](const Rational& N) {
                               return (QSeries::constant(Cyclotomic(1)) + QSeries::monomial(Monomial::q_power(1)))
                                   .truncate(N);
                           },
                           std::nullopt});
    e.instances.push_back({"throws", [](const Rational&) -> QSeries { throw NonGenericParameter("pole"); },
                           [](const Rational& N) { return QSeries::zero(N); }, std::nullopt});
    const auto rs = verify(e, Rational(5));
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].verdict == Verdict::Fail);
    REQUIRE(rs[0].mismatch);
    CHECK(rs[0].mismatch->exponent == Rational(1));
    CHECK(rs[1].verdict == Verdict::NonGeneric);
}
