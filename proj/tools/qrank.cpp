// qrank: command-line front end for the q-series kernel and identity catalog.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "qrank/appell.hpp"
#include "qrank/harness.hpp"
#include "qrank/overpartitions.hpp"

using namespace qrank;

namespace {

// Rational coefficients are shown in Q itself rather than the working field.
std::string show(const Cyclotomic& c) { return c.is_rational() ? Cyclotomic(c.rational_value()).str() : c.str(); }

void print_series(std::ostream& os, const std::string& title, const QSeries& s) {
    os << "# " << title << " known below q^" << s.finite_order().str() << '\n';
    for (const auto& [e, c] : s.terms()) os << e.str() << '\t' << show(c) << '\n';
}

Rational order_or_default(const std::string& text, EntryKind kind) {
    return text.empty() ? default_order(kind) : Rational::parse(text);
}

int cmd_expand(const std::string& series, int d, const std::string& z, const std::string& order_text) {
    const Rational order = order_or_default(order_text, EntryKind::Theorem);
    if (series != "Od") {
        print_series(std::cout, series, build_named_series(series, order));
        return 0;
    }
    if (z.empty()) throw Error("expand --series Od needs --z");
    const Monomial zm = Monomial::parse(z);
    // The product form covers z = +-1; the bilateral sum handles z with a q-power.
    const QSeries s = zm.is_constant() ? o_d_product_form(d, zm, order) : o_d_direct(d, zm, order);
    print_series(std::cout, "O_" + std::to_string(d) + "(" + zm.str() + ";q)", s);
    return 0;
}

int cmd_deviation(int d, int a, int M, const std::string& order_text, const std::string& method) {
    const Rational order = order_or_default(order_text, EntryKind::Theorem);
    const std::string tag = std::to_string(d) + "(" + std::to_string(a) + "," + std::to_string(M) + ")";
    if (method == "definition") {
        print_series(std::cout, "Dbar_" + tag, deviation_by_definition(d, a, M, order));
        return 0;
    }
    const FormulaParams params = default_params(d, M);
    const QSeries formula = deviation_pair_by_formula(d, a, M, params, order);
    const std::string pair = "Dbar_" + tag + " + Dbar_" + std::to_string(d) + "(" + std::to_string(a - 1) + "," +
                             std::to_string(M) + ")";
    print_series(std::cout, pair + " [" + pair_case(d, a, M) + "; " + params.str() + "]", formula);
    if (method == "formula") return 0;

    const QSeries definition = deviation_by_definition(d, a, M, order) + deviation_by_definition(d, a - 1, M, order);
    const IdentityReport r = compare_series("deviation", tag, definition, formula, order);
    std::cout << "verdict " << to_string(r.verdict);
    if (r.mismatch) std::cout << " at q^" << r.mismatch->exponent.str();
    std::cout << '\n';
    return r.passed() ? 0 : 1;
}

int cmd_dissect(const std::string& series, int parts, const std::string& order_text) {
    const Rational order = order_or_default(order_text, EntryKind::Dissection);
    const auto components = dissect(build_named_series(series, order), parts);
    for (std::size_t k = 0; k < components.size(); ++k)
        print_series(std::cout, series + " component " + std::to_string(k), components[k]);
    return 0;
}

int cmd_verify(const std::string& filter, const std::string& order_text, unsigned jobs, const std::string& json,
               const std::string& csv) {
    SuiteOptions opts;
    opts.filter = filter;
    if (!order_text.empty()) opts.order = Rational::parse(order_text);
    opts.jobs = jobs;
    opts.json_path = json;
    opts.csv_path = csv;
    const SuiteResult result = run_suite(opts);
    if (result.reports.empty()) throw Error("no catalog entry matches " + filter);
    for (const auto& r : result.reports) {
        std::cout << to_string(r.verdict) << '\t' << r.id << '\t' << r.instantiation << "\tq^" << r.order.str();
        if (r.mismatch) std::cout << "\tfirst mismatch q^" << r.mismatch->exponent.str();
        if (!r.note.empty()) std::cout << "\t(" << r.note << ')';
        std::cout << '\n';
    }
    std::cout << result.count(Verdict::Pass) << " pass, " << result.count(Verdict::Fail) << " fail, "
              << result.count(Verdict::NonGeneric) << " non-generic\n";
    return result.all_passed() ? 0 : 1;
}

int cmd_tables(int d, int maxN, const std::string& csv) {
    const RankTables t = rank_tables(d, maxN);
    if (csv.empty() || csv == "-") {
        t.write_csv(std::cout);
        return 0;
    }
    std::ofstream f(csv);
    if (!f) throw Error("cannot write " + csv);
    t.write_csv(f);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-series expansions and identity checks for overpartition rank deviations"};
    app.require_subcommand(1);

    std::string series, z, order, method = "both", filter = "*", json, csv;
    int d = 1, a = 1, M = 2, parts = 3, maxN = 20;
    unsigned jobs = 1;

    auto* expand = app.add_subcommand("expand", "Print a named series or O_d(z;q)");
    expand->add_option("--series", series, "Named series, or Od")->required();
    expand->add_option("--d", d, "d for Od");
    expand->add_option("--z", z, "Root spec zeta<L>^<k>, optionally *q^<rat>");
    expand->add_option("--order", order, "Truncation order");

    auto* deviation = app.add_subcommand("deviation", "Rank deviations by definition and by formula");
    deviation->add_option("--d", d)->required();
    deviation->add_option("--a", a)->required();
    deviation->add_option("--M", M)->required()->check(CLI::PositiveNumber);
    deviation->add_option("--order", order);
    deviation->add_option("--method", method)->check(CLI::IsMember({"definition", "formula", "both"}));

    auto* dis = app.add_subcommand("dissect", "Print the components of an N-dissection");
    dis->add_option("--series", series)->required();
    dis->add_option("--parts", parts)->check(CLI::PositiveNumber);
    dis->add_option("--order", order);

    auto* ver = app.add_subcommand("verify", "Run catalog entries; exit 0 iff all pass");
    ver->add_option("--filter", filter, "Id glob");
    ver->add_option("--order", order, "Override every default order");
    ver->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    ver->add_option("--json", json, "Write the JSON report here");
    ver->add_option("--csv", csv, "Write a CSV summary here");

    auto* tables = app.add_subcommand("tables", "Export Nbar_d(m,n) as CSV");
    tables->add_option("--d", d)->required()->check(CLI::PositiveNumber);
    tables->add_option("--maxN", maxN)->check(CLI::NonNegativeNumber);
    tables->add_option("--csv", csv, "Output path, - for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*expand) return cmd_expand(series, d, z, order);
        if (*deviation) return cmd_deviation(d, a, M, order, method);
        if (*dis) return cmd_dissect(series, parts, order);
        if (*ver) return cmd_verify(filter, order, jobs, json, csv);
        if (*tables) return cmd_tables(d, maxN, csv);
    } catch (const std::exception& e) {
        std::cerr << "qrank: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
