#include "qrank/report.hpp"

namespace qrank {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NonGeneric: return "non-generic";
    }
    return "unknown";
}

IdentityReport compare_series(std::string id, std::string instantiation, const QSeries& lhs,
                              const QSeries& rhs, const Rational& order) {
    IdentityReport r;
    r.id = std::move(id);
    r.instantiation = std::move(instantiation);
    r.order = order;
    for (const QSeries* s : {&lhs, &rhs}) {
        if (!s->is_exact() && s->finite_order() < order) {
            r.verdict = Verdict::Fail;
            r.note = "insufficient precision: a side is known only below q^" + s->finite_order().str();
            return r;
        }
    }
    r.mismatch = first_mismatch(lhs, rhs, order);
    r.verdict = r.mismatch ? Verdict::Fail : Verdict::Pass;
    return r;
}

nlohmann::json to_json(const IdentityReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["instantiation"] = r.instantiation;
    j["order"] = r.order.str();
    j["verdict"] = to_string(r.verdict);
    if (r.mismatch) {
        j["first_mismatch"] = {{"exponent", r.mismatch->exponent.str()},
                               {"lhs", r.mismatch->lhs.str()},
                               {"rhs", r.mismatch->rhs.str()}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    j["note"] = r.note;
    j["wall_ms"] = r.wall_ms;
    return j;
}

}  // namespace qrank
