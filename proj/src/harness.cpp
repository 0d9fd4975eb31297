#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "qrank/harness.hpp"

namespace qrank {

Rational default_order(EntryKind kind) {
    if (const char* env = std::getenv("QRANK_DEFAULT_ORDER"); env && *env) return Rational::parse(env);
    switch (kind) {
        case EntryKind::Theorem: return Rational(40);
        case EntryKind::Dissection: return Rational(120);
        case EntryKind::Application: return Rational(60);
        default: return Rational(30);
    }
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

namespace {

IdentityReport run_instance(const CatalogEntry& entry, const Instance& in, const Rational& requested) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    Rational order = requested;
    std::string note;
    if (in.max_order && *in.max_order < order) {
        order = *in.max_order;
        note = "order capped at " + order.str() + " by enumeration";
    }
    IdentityReport r;
    try {
        const QSeries lhs = in.lhs(order);
        const QSeries rhs = in.rhs(order);
        r = compare_series(entry.id, in.label, lhs, rhs, order);
    } catch (const NonGenericParameter& e) {
        r.id = entry.id;
        r.instantiation = in.label;
        r.order = order;
        r.verdict = Verdict::NonGeneric;
        r.note = e.what();
    } catch (const std::exception& e) {
        r.id = entry.id;
        r.instantiation = in.label;
        r.order = order;
        r.verdict = Verdict::Fail;
        r.note = std::string("error: ") + e.what();
    }
    if (r.passed() && entry.asserts_vanishing) note += std::string(note.empty() ? "" : "; ") + "truncation-limited";
    if (!note.empty()) r.note = r.note.empty() ? note : note + "; " + r.note;
    r.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return r;
}

}  // namespace

std::vector<IdentityReport> verify(const CatalogEntry& entry, std::optional<Rational> order) {
    const Rational N = order ? *order : default_order(entry.kind);
    std::vector<IdentityReport> out;
    for (const auto& in : entry.instances) out.push_back(run_instance(entry, in, N));
    return out;
}

bool SuiteResult::all_passed() const { return count(Verdict::Fail) == 0; }

std::size_t SuiteResult::count(Verdict v) const {
    std::size_t n = 0;
    for (const auto& r : reports) n += r.verdict == v;
    return n;
}

nlohmann::json SuiteResult::to_json(const SuiteOptions& opts) const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& r : reports) entries.push_back(qrank::to_json(r));
    return {{"run",
             {{"filter", opts.filter},
              {"order_override", opts.order ? opts.order->str() : ""},
              {"jobs", opts.jobs},
              {"passed", count(Verdict::Pass)},
              {"failed", count(Verdict::Fail)},
              {"non_generic", count(Verdict::NonGeneric)},
              {"wall_ms", wall_ms}}},
            {"entries", entries}};
}

void SuiteResult::write_csv(std::ostream& os) const {
    const auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    };
    os << "id,instantiation,order,verdict,first_mismatch,note,wall_ms\n";
    for (const auto& r : reports)
        os << r.id << ',' << quote(r.instantiation) << ',' << r.order.str() << ',' << to_string(r.verdict) << ','
           << (r.mismatch ? r.mismatch->exponent.str() : "") << ',' << quote(r.note) << ',' << r.wall_ms << '\n';
}

SuiteResult run_suite(const SuiteOptions& opts) {
    struct Task {
        const CatalogEntry* entry;
        const Instance* instance;
    };
    std::vector<Task> tasks;
    for (const auto& e : catalog())
        if (glob_match(opts.filter, e.id))
            for (const auto& in : e.instances) tasks.push_back({&e, &in});

    const auto start = std::chrono::steady_clock::now();
    std::vector<IdentityReport> reports(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto& t = tasks[i];
            const Rational N = opts.order ? *opts.order : default_order(t.entry->kind);
            reports[i] = run_instance(*t.entry, *t.instance, N);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SuiteResult result;
    result.reports = std::move(reports);
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (!opts.json_path.empty()) {
        std::ofstream f(opts.json_path);
        if (!f) throw Error("cannot write " + opts.json_path);
        f << result.to_json(opts).dump(2) << '\n';
    }
    if (!opts.csv_path.empty()) {
        std::ofstream f(opts.csv_path);
        if (!f) throw Error("cannot write " + opts.csv_path);
        result.write_csv(f);
    }
    return result;
}

}  // namespace qrank
