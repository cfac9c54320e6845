#include "minisol/detectors.hpp"

#include <algorithm>
#include <map>

#include "minisol/walk.hpp"

namespace minisol {

const char* severity_name(Severity s) {
    switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
    }
    return "warning";
}

const std::vector<std::string>& all_detector_ids() {
    static const std::vector<std::string> ids = {
        "D1-tautology-contradiction", "D2-div-by-zero",
        "D3-division-remainder",      "D4-uninitialized-variable",
        "D5-unvalidated-input",       "D6-unmatched-type",
    };
    return ids;
}

std::optional<std::string> normalize_detector_id(const std::string& id) {
    for (const auto& full : all_detector_ids()) {
        if (id == full)
            return full;
        std::string shorthand = full.substr(0, 2); // "D1".."D6"
        if (id.size() == 2 && (id[0] == 'd' || id[0] == 'D') && id[1] == shorthand[1])
            return full;
    }
    return std::nullopt;
}

namespace {

// Evidence keys prefer the rendered source operand; temps fall back to a role name.
std::string evidence_key(const std::string& rendered, const char* fallback) {
    if (rendered.empty() || rendered[0] == '%' || rendered[0] == '?')
        return fallback;
    return rendered;
}

bool always_true(const Interval& v) { return v == Interval::singleton(1); }
bool always_false(const Interval& v) { return v == Interval::singleton(0); }

void d1_tautology_contradiction(const ContractAnalysis& ca,
                                std::vector<Diagnostic>& out) {
    for (const auto& [func, cfg] : ca.cfgs) {
        const auto& res = ca.results.at(func);
        for (const auto& ev : res.events) {
            if (ev.kind != AnalysisEvent::Kind::ConditionVerdict)
                continue;
            bool checked = ev.origin == AnalysisEvent::Origin::Require ||
                           ev.origin == AnalysisEvent::Origin::Assert;
            Diagnostic d;
            d.detector = "D1-tautology-contradiction";
            d.span = ev.span;
            d.evidence = {{"verdict", render_interval(ev.a)}};
            if (always_false(ev.a)) {
                if (checked) {
                    d.severity = Severity::Error;
                    d.message = "contradiction: condition is always false, the "
                                "transaction can never complete";
                } else {
                    d.severity = Severity::Info;
                    d.message = "branch condition is always false; the true "
                                "branch is dead";
                }
            } else if (always_true(ev.a)) {
                if (checked) {
                    d.severity = Severity::Warning;
                    d.message = "tautology: condition is always true, the check "
                                "has no effect";
                } else {
                    d.severity = Severity::Info;
                    d.message = "branch condition is always true; the false "
                                "branch is dead";
                }
            } else {
                continue;
            }
            out.push_back(std::move(d));
        }
    }
}

void d2_division_by_zero(const ContractAnalysis& ca, std::vector<Diagnostic>& out) {
    for (const auto& [func, cfg] : ca.cfgs) {
        const auto& res = ca.results.at(func);
        for (const auto& ev : res.events) {
            if (ev.kind != AnalysisEvent::Kind::DivisorInterval)
                continue;
            if (ev.a.is_bottom() || !ev.a.contains_zero())
                continue;
            Diagnostic d;
            d.detector = "D2-div-by-zero";
            d.span = ev.span;
            d.evidence = {{evidence_key(ev.a_name, "divisor"), render_interval(ev.a)}};
            if (ev.a.is_singleton()) {
                d.severity = Severity::Error;
                d.message = "division by zero: the divisor is always zero";
            } else {
                d.severity = Severity::Warning;
                d.message = "possible division by zero: the divisor interval "
                            "contains zero";
            }
            out.push_back(std::move(d));
        }
    }
}

void d3_division_remainder(const ContractAnalysis& ca, std::vector<Diagnostic>& out) {
    for (const auto& [func, cfg] : ca.cfgs) {
        const auto& res = ca.results.at(func);
        for (const auto& ev : res.events) {
            if (ev.kind != AnalysisEvent::Kind::ValueTransferOfQuotient)
                continue;
            if (ev.remainder_handled)
                continue;
            const Interval& dividend = ev.a;
            const Interval& divisor = ev.b;
            if (dividend.is_bottom() || divisor.is_bottom())
                continue;
            if (divisor.contains_zero())
                continue; // a zero divisor is D2's finding, not a remainder issue
            if (divisor.contained_in(Interval::singleton(1)))
                continue; // dividing by exactly 1 is lossless
            if (dividend == Interval::singleton(0))
                continue;
            if (dividend.is_singleton() && divisor.is_singleton() &&
                dividend.lo() % divisor.lo() == 0)
                continue; // provably exact division
            Diagnostic d;
            d.detector = "D3-division-remainder";
            d.severity = Severity::Info;
            d.span = ev.span;
            d.message = "transferred amount is an integer-division quotient; the "
                        "remainder is never paid out and may stay locked";
            d.evidence = {
                {evidence_key(ev.a_name, "dividend"), render_interval(dividend)},
                {evidence_key(ev.b_name, "divisor"), render_interval(divisor)},
            };
            out.push_back(std::move(d));
        }
    }
}

const VarDecl* write_target_root(const Expr& target) {
    const Expr* e = &target;
    while (e->kind == Expr::Kind::Index || e->kind == Expr::Kind::Member)
        e = e->lhs.get();
    return e->kind == Expr::Kind::Ident ? e->decl : nullptr;
}

void d4_uninitialized_variable(const ContractAnalysis& ca,
                               std::vector<Diagnostic>& out) {
    const ContractDef& contract = *ca.contract;
    std::set<const VarDecl*> written;
    std::set<const VarDecl*> read;
    std::set<const VarDecl*> read_in_check;

    auto scan_body = [&](const Stmt& body) {
        walk_statements(body, [&](const Stmt& s) {
            if (s.kind == Stmt::Kind::Assign && s.target)
                if (const VarDecl* root = write_target_root(*s.target))
                    written.insert(root);
            if ((s.kind == Stmt::Kind::Compound || s.kind == Stmt::Kind::IncDec) &&
                s.target)
                if (const VarDecl* root = write_target_root(*s.target)) {
                    written.insert(root);
                    read.insert(root); // read-modify-write also reads
                }
            if ((s.kind == Stmt::Kind::Require || s.kind == Stmt::Kind::Assert) &&
                s.cond)
                walk_expression_tree(*s.cond, [&](const Expr& e) {
                    if (e.kind == Expr::Kind::Ident && e.decl)
                        read_in_check.insert(e.decl);
                });
        });
        walk_expressions(body, [&](const Expr& e) {
            if (e.kind == Expr::Kind::Ident && e.decl)
                read.insert(e.decl);
        });
    };
    for (const auto& f : contract.functions)
        if (f->body)
            scan_body(*f->body);
    for (const auto& m : contract.modifiers)
        if (m->body)
            scan_body(*m->body);

    // walk_expressions visits plain-assignment targets too; drop those roots
    // from the read set unless they are also read elsewhere. A conservative
    // correction is unnecessary: a written variable never fires anyway.
    for (const auto& vd : contract.state_vars) {
        if (vd->init || written.count(vd.get()))
            continue;
        bool is_read = read.count(vd.get()) || read_in_check.count(vd.get());
        if (!is_read)
            continue;
        AbstractValue def = AbstractValue::default_of(vd->declared);
        std::string default_text =
            def.kind == AbstractValue::Kind::Scalar ? render_interval(def.itv) : "[0, 0]";
        Diagnostic d;
        d.detector = "D4-uninitialized-variable";
        d.span = vd->span;
        d.evidence = {{"default", default_text}};
        if (read_in_check.count(vd.get())) {
            d.severity = Severity::Error;
            d.message = "state variable '" + vd->name +
                        "' is never assigned and is stuck at its default value; "
                        "a require/assert compares against it, so the check can "
                        "never behave as intended";
        } else {
            d.severity = Severity::Warning;
            d.message = "state variable '" + vd->name +
                        "' is never assigned and is stuck at its default value";
        }
        out.push_back(std::move(d));
    }
}

void d5_unvalidated_input(const ContractAnalysis& ca, std::vector<Diagnostic>& out) {
    for (const auto& [func, cfg] : ca.cfgs) {
        const auto& res = ca.results.at(func);
        for (const auto& ev : res.events) {
            if (ev.kind != AnalysisEvent::Kind::IndexAccess)
                continue;
            if (ev.validated || ev.a.is_bottom() || ev.b.is_bottom())
                continue;
            if (ev.a.hi() < ev.b.lo())
                continue; // provably in bounds on every execution
            Diagnostic d;
            d.detector = "D5-unvalidated-input";
            d.severity = Severity::Warning;
            d.span = ev.span;
            d.message = "array index is not validated against the array length "
                        "and may be out of bounds";
            d.evidence = {
                {evidence_key(ev.a_name, "index"), render_interval(ev.a)},
                {"length", render_interval(ev.b)},
            };
            out.push_back(std::move(d));
        }
    }
}

void d6_unmatched_type(const ContractAnalysis& ca, std::vector<Diagnostic>& out) {
    // One finding per (source expression, enum, intervals) across the whole
    // contract, reported at the earliest cast site.
    struct Finding {
        Span span;
        Diagnostic diag;
    };
    std::map<std::tuple<std::string, const EnumDecl*, std::string, std::string>, Finding>
        findings;
    for (const auto& [func, cfg] : ca.cfgs) {
        const auto& res = ca.results.at(func);
        for (const auto& ev : res.events) {
            if (ev.kind != AnalysisEvent::Kind::EnumCastSource)
                continue;
            if (ev.a.is_bottom())
                continue;
            Interval range(BigInt(0), BigInt(ev.enum_size - 1));
            if (ev.a.contained_in(range))
                continue;
            std::string src = render_interval(ev.a);
            std::string rng = render_interval(range);
            Diagnostic d;
            d.detector = "D6-unmatched-type";
            d.severity = Severity::Warning;
            d.span = ev.span;
            d.message = "value of a wider integer domain is cast to enum '" +
                        (ev.enum_decl ? ev.enum_decl->name : std::string("?")) +
                        "'; out-of-range values revert the transaction";
            d.evidence = {
                {evidence_key(ev.a_name, "value"), src},
                {"enumRange", rng},
            };
            auto key = std::make_tuple(ev.a_name, ev.enum_decl, src, rng);
            auto it = findings.find(key);
            if (it == findings.end() || ev.span.begin < it->second.span.begin)
                findings[key] = Finding{ev.span, std::move(d)};
        }
    }
    for (auto& [key, f] : findings)
        out.push_back(std::move(f.diag));
}

// Repeated loop traversals replay identical events; one finding per site.
void dedupe(std::vector<Diagnostic>& diags) {
    std::set<std::tuple<std::string, uint32_t, uint32_t>> seen;
    std::vector<Diagnostic> kept;
    for (auto& d : diags)
        if (seen.insert({d.detector, d.span.begin, d.span.end}).second)
            kept.push_back(std::move(d));
    diags = std::move(kept);
}

} // namespace

std::vector<Diagnostic> run_detectors(const std::vector<ContractAnalysis>& analyses,
                                      const DetectorConfig& config) {
    std::vector<Diagnostic> out;
    for (const auto& ca : analyses) {
        if (config.is_enabled("D1-tautology-contradiction"))
            d1_tautology_contradiction(ca, out);
        if (config.is_enabled("D2-div-by-zero"))
            d2_division_by_zero(ca, out);
        if (config.is_enabled("D3-division-remainder"))
            d3_division_remainder(ca, out);
        if (config.is_enabled("D4-uninitialized-variable"))
            d4_uninitialized_variable(ca, out);
        if (config.is_enabled("D5-unvalidated-input"))
            d5_unvalidated_input(ca, out);
        if (config.is_enabled("D6-unmatched-type"))
            d6_unmatched_type(ca, out);
    }
    dedupe(out);
    return out;
}

} // namespace minisol
