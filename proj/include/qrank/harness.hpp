#ifndef QRANK_HARNESS_HPP
#define QRANK_HARNESS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qrank/qseries.hpp"
#include "qrank/report.hpp"

namespace qrank {

class UnknownName : public Error {
public:
    explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};

/// Named eta/theta combinations used by the 3-dissections and the
/// 3-dissection of O_3(zeta_3;q). Components (W0, f1, ...) are series in q;
/// "3disK-lhs"/"3disK-rhs" are the two sides of a dissection, and
/// Bbar0, B1, B2 are the written right-hand sides (exponents = N mod 3).
QSeries build_named_series(const std::string& name, const Rational& order);
std::vector<std::string> named_series();

/// Independent expansions used on the oracle side of catalog entries.
namespace oracle {
/// prod_{k >= 0} (1 - a q^{pk}).
QSeries pochhammer(const Monomial& a, const Rational& p, const Rational& order);
/// j(z; q^p) from the triple product.
QSeries theta_product(const Monomial& z, const Rational& p, const Rational& order);
/// j(z; q^p) as the bilateral sum, with no vanishing shortcut.
QSeries theta_sum(const Monomial& z, const Rational& p, const Rational& order);
/// sum_n alpha beta^n gamma^{n(n-1)/2} / (1 - mu nu^n), term by term.
QSeries bilateral_sum(const Monomial& alpha, const Monomial& beta, const Monomial& gamma, const Monomial& mu,
                      const Monomial& nu, const Rational& order);
}  // namespace oracle

enum class EntryKind { Theorem, Identity, Dissection, Application };

/// Built-in default order for a kind; QRANK_DEFAULT_ORDER overrides all.
Rational default_order(EntryKind kind);

using SeriesBuilder = std::function<QSeries(const Rational&)>;

struct Instance {
    std::string label;
    SeriesBuilder lhs;
    SeriesBuilder rhs;
    /// Enumeration-backed sides cannot go arbitrarily deep.
    std::optional<Rational> max_order;
};

struct CatalogEntry {
    std::string id;
    std::string summary;
    std::string parameter_domain;
    EntryKind kind = EntryKind::Identity;
    /// Cyclotomic level and Puiseux denominator the entry works in.
    std::int64_t level = 1;
    std::int64_t denom = 1;
    /// The identity claims exact vanishing; a pass is only up to the order.
    bool asserts_vanishing = false;
    std::vector<Instance> instances;
};

const std::vector<CatalogEntry>& catalog();
/// Ids every catalog build must contain, each exactly once.
const std::vector<std::string>& manifest();
/// Throws UnknownName.
const CatalogEntry& find_entry(const std::string& id);

/// Shell-style match supporting '*' and '?'.
bool glob_match(const std::string& pattern, const std::string& text);

/// One report per instance. Failures are verdicts, never exceptions.
std::vector<IdentityReport> verify(const CatalogEntry& entry, std::optional<Rational> order = std::nullopt);

struct SuiteOptions {
    std::string filter = "*";
    std::optional<Rational> order;
    unsigned jobs = 1;
    std::string json_path;
    std::string csv_path;
};

struct SuiteResult {
    std::vector<IdentityReport> reports;
    double wall_ms = 0.0;

    bool all_passed() const;
    std::size_t count(Verdict v) const;
    nlohmann::json to_json(const SuiteOptions& opts) const;
    void write_csv(std::ostream& os) const;
};

/// Runs every matching instance on `jobs` threads; reports are ordered by
/// entry id, then instance. Writes the requested report files.
SuiteResult run_suite(const SuiteOptions& opts);

}  // namespace qrank

#endif  // QRANK_HARNESS_HPP
