#ifndef QRANK_REPORT_HPP
#define QRANK_REPORT_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "qrank/qseries.hpp"

namespace qrank {

enum class Verdict { Pass, Fail, NonGeneric };

std::string to_string(Verdict v);

/// Outcome of one coefficient-exact comparison.
struct IdentityReport {
    std::string id;
    std::string instantiation;
    Rational order{0};
    Verdict verdict = Verdict::Fail;
    std::optional<Mismatch> mismatch;
    /// Free-form remark, e.g. "truncation-limited" for vanishing claims.
    std::string note;
    double wall_ms = 0.0;

    bool passed() const { return verdict == Verdict::Pass; }
};

/// Compares lhs and rhs below `order`. A side known to a lower order is a
/// failure with an explanatory note, never a silent pass.
IdentityReport compare_series(std::string id, std::string instantiation, const QSeries& lhs,
                              const QSeries& rhs, const Rational& order);

nlohmann::json to_json(const IdentityReport& r);

}  // namespace qrank

#endif  // QRANK_REPORT_HPP
