#pragma once

// The property suite run by `xmod verify`: every check yields a named
// pass / fail / skipped line with a short detail.

#include <cstddef>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "xmod/cohomology.hpp"
#include "xmod/crossed_module.hpp"
#include "xmod/transgression.hpp"

namespace xmod {

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct VerifyOptions {
    std::size_t pmax = 4;
    int window = kDefaultWindow;
    std::size_t max_cells = kDefaultMaxCells;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail)
            return false;
    return true;
}

inline const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "FAIL";
    case CheckStatus::skipped:
        return "skipped";
    }
    return "?";
}

inline void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
    std::size_t width = 0;
    for (const auto& c : checks)
        width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        os << std::left << std::setw(static_cast<int>(width)) << c.name << "  ";
        if (c.detail.empty())
            os << status_name(c.status);
        else
            os << std::setw(7) << status_name(c.status) << "  " << c.detail;
        os << "\n";
    }
}

namespace detail {

inline CheckResult from_report(const std::string& name, const ValidationReport& r,
                               const std::string& ok_detail = "") {
    if (r.ok())
        return {name, CheckStatus::pass, ok_detail};
    const Violation& v = r.violations().front();
    std::string d = v.property + ": " + v.witness;
    if (v.count > 1)
        d += " (+" + std::to_string(v.count - 1) + " more)";
    if (r.violations().size() > 1)
        d += "; " + std::to_string(r.violations().size() - 1) + " other properties fail";
    return {name, CheckStatus::fail, d};
}

// Runs fn, turning a library exception into a failed check.
inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& fn) {
    try {
        return fn();
    } catch (const ResourceLimit&) {
        throw;
    } catch (const Error& e) {
        return {name, CheckStatus::fail, std::string("error: ") + e.what()};
    }
}

inline ValidationReport check_dd_zero(const Nerve& nerve) {
    ValidationReport r;
    for (std::size_t p = 0; p + 2 <= nerve.pmax(); ++p)
        if (!(coboundary_matrix(nerve, p + 1) * coboundary_matrix(nerve, p)).is_zero())
            r.add("d d = 0", "level " + std::to_string(p));
    return r;
}

inline ValidationReport check_flatten_round_trip(const TransgressionContext& ctx) {
    ValidationReport r;
    const auto& cm = ctx.module();
    const auto& cp = ctx.product();
    const Nerve& nerve = ctx.product_nerve();
    for (std::size_t p = 0; p <= nerve.pmax(); ++p) {
        const NerveLevel& lv = nerve.level(p);
        for (std::size_t idx = 0; idx < lv.size(); ++idx) {
            const NerveTuple t = lv.tuple(idx);
            const FlatTuple f = flatten(cm, cp, t);
            if (f.level() != p || !(unflatten(cm, cp, f) == t))
                r.add("unflatten(flatten(t)) = t", format_tuple(cp.groupoid(), t));
        }
    }
    return r;
}

inline std::string sign_levels(const SignReport& s) {
    std::string out;
    for (std::size_t p = 0; p < s.per_level.size(); ++p) {
        if (!out.empty())
            out += " ";
        const auto& v = s.per_level[p];
        out += !v ? "?" : *v > 0 ? "+" : *v < 0 ? "-" : "0";
    }
    return out;
}

} // namespace detail

// Coboundaries go to coboundaries: T1(d e_b) is exact for every basis
// cochain e_b of G_{p-1}, 1 <= p <= pmax.
inline ValidationReport check_well_defined(const TransgressionContext& ctx, std::size_t pmax,
                                           Convention conv = Convention::tilde) {
    ValidationReport r;
    for (std::size_t p = 1; p <= pmax; ++p) {
        const SparseIntMatrix m =
            ctx.matrix(p, conv) * coboundary_matrix(ctx.base_nerve(), p - 1);
        std::vector<IntCochain> images(m.cols(), IntCochain::zero(p - 1, m.rows()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (const auto& [j, v] : m.row(i))
                images[j].values[i] = v;
        const std::vector<bool> exact = are_coboundaries(ctx.product_nerve(), p - 1, images);
        const NerveLevel& lv = ctx.base_nerve().level(p - 1);
        for (std::size_t b = 0; b < exact.size(); ++b)
            if (!exact[b])
                r.add("T1 d maps into coboundaries",
                      "p=" + std::to_string(p) + " d e_" +
                          format_tuple(ctx.module().base, lv.tuple(b)));
    }
    return r;
}

inline std::vector<CheckResult> verify_groupoid(const FiniteGroupoid& g,
                                                const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(detail::from_report("groupoid axioms", validate_groupoid(g)));
    if (out.back().status == CheckStatus::fail) {
        for (const char* n : {"simplicial identities", "d d = 0", "inertia groupoid axioms",
                              "Hom(Z, G) functors", "inertia arrows natural", "Z-action witness"})
            out.push_back({n, CheckStatus::skipped, "groupoid axioms failed"});
        return out;
    }
    out.push_back(detail::guarded("simplicial identities", [&] {
        return detail::from_report("simplicial identities",
                                   check_simplicial_identities(g, opt.pmax, opt.max_cells),
                                   "levels 0.." + std::to_string(opt.pmax));
    }));
    out.push_back(detail::guarded("d d = 0", [&] {
        return detail::from_report("d d = 0",
                                   detail::check_dd_zero(Nerve(g, opt.pmax, opt.max_cells)));
    }));
    const InertiaGroupoid inertia = inertia_groupoid(g);
    out.push_back(detail::from_report("inertia groupoid axioms",
                                      validate_groupoid(inertia.groupoid()),
                                      std::to_string(inertia.groupoid().num_arrows()) +
                                          " arrows"));
    if (opt.window == 0) {
        for (const char* n : {"Hom(Z, G) functors", "inertia arrows natural", "Z-action witness"})
            out.push_back({n, CheckStatus::skipped, "window = 0"});
        return out;
    }
    ValidationReport functors;
    for (const auto& f : hom_z_objects(g))
        functors.merge("", check_z_functor(g, f, opt.window));
    out.push_back(detail::from_report("Hom(Z, G) functors", functors));
    ValidationReport natural;
    const FiniteGroupoid& lg = inertia.groupoid();
    for (std::size_t a = 0; a < lg.num_arrows(); ++a)
        if (!is_natural(g, as_natural_transformation(g, inertia, static_cast<ArrowIndex>(a)),
                        opt.window))
            natural.add("eta alpha = beta eta", lg.arrow_id(static_cast<ArrowIndex>(a)));
    out.push_back(detail::from_report("inertia arrows natural", natural));
    // Informational: whether Z acts on the inertia groupoid by automorphisms.
    const auto w = find_z_action_witness(g, inertia, opt.window);
    out.push_back({"Z-action witness", CheckStatus::pass,
                   w ? "not by automorphisms: k=" + std::to_string(w->k) + " on (" +
                           lg.arrow_id(w->first) + ", " + lg.arrow_id(w->second) + ")"
                     : "none in window (action is by automorphisms there)"});
    return out;
}

inline std::vector<CheckResult> verify_crossed_module(const CrossedModule& cm,
                                                      const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(detail::from_report("crossed-module axioms", validate_crossed_module(cm)));
    const char* later[] = {"crossed product axioms",
                           "simplicial identities G",
                           "simplicial identities N x| G",
                           "d d = 0",
                           "flatten round trip",
                           "rho homomorphism window",
                           "pi homomorphism",
                           "pipeline = closed formula",
                           "index shift f~_{i-1} = f_i",
                           "convention sign f vs tilde",
                           "convention sign shuffle vs tilde",
                           "cochain map",
                           "well-definedness"};
    if (out.back().status == CheckStatus::fail) {
        for (const char* n : later)
            out.push_back({n, CheckStatus::skipped, "crossed-module axioms failed"});
        return out;
    }
    const TransgressionContext ctx(cm, opt.pmax, opt.max_cells);
    const auto& cp = ctx.product();
    const std::string levels = "p <= " + std::to_string(opt.pmax);

    out.push_back(detail::from_report("crossed product axioms", validate_groupoid(cp.groupoid()),
                                      std::to_string(cp.groupoid().num_arrows()) + " arrows"));
    out.push_back(detail::guarded("simplicial identities G", [&] {
        return detail::from_report("simplicial identities G",
                                   check_simplicial_identities(cm.base, opt.pmax, opt.max_cells),
                                   levels);
    }));
    out.push_back(detail::guarded("simplicial identities N x| G", [&] {
        return detail::from_report(
            "simplicial identities N x| G",
            check_simplicial_identities(cp.groupoid(), opt.pmax, opt.max_cells), levels);
    }));
    out.push_back(detail::guarded("d d = 0", [&] {
        ValidationReport r;
        r.merge("G: ", detail::check_dd_zero(ctx.base_nerve()));
        r.merge("N x| G: ", detail::check_dd_zero(ctx.product_nerve()));
        return detail::from_report("d d = 0", r);
    }));
    out.push_back(detail::guarded("flatten round trip", [&] {
        return detail::from_report("flatten round trip", detail::check_flatten_round_trip(ctx));
    }));
    if (opt.window == 0)
        out.push_back({"rho homomorphism window", CheckStatus::skipped, "window = 0"});
    else
        out.push_back(detail::guarded("rho homomorphism window", [&] {
            return detail::from_report("rho homomorphism window", check_rho(cm, cp, opt.window),
                                       "k, l in [-" + std::to_string(opt.window) + ", " +
                                           std::to_string(opt.window) + "]");
        }));
    out.push_back(detail::guarded("pi homomorphism", [&] {
        return detail::from_report("pi homomorphism",
                                   validate_homomorphism(pi_homomorphism(cm, cp)));
    }));
    out.push_back(detail::guarded("pipeline = closed formula", [&] {
        return detail::from_report("pipeline = closed formula",
                                   check_pipeline_vs_formula(ctx, opt.pmax), levels);
    }));
    out.push_back(detail::guarded("index shift f~_{i-1} = f_i", [&] {
        return detail::from_report("index shift f~_{i-1} = f_i",
                                   check_index_shift(ctx, opt.pmax), levels);
    }));

    auto sign_check = [&](const std::string& name, Convention a, Convention b) {
        return detail::guarded(name, [&] {
            const SignReport s = measure_convention_sign(ctx, opt.pmax, a, b);
            if (!s.consistent)
                return detail::from_report(name, s.violations);
            const std::string rel =
                s.global ? sign_relation_text(convention_name(a), convention_name(b), *s.global)
                         : std::string("both zero at every level");
            return CheckResult{name, CheckStatus::pass,
                               rel + " (levels 1.." + std::to_string(opt.pmax) + ")"};
        });
    };
    out.push_back(sign_check("convention sign f vs tilde", Convention::f, Convention::tilde));
    out.push_back(
        sign_check("convention sign shuffle vs tilde", Convention::shuffle, Convention::tilde));

    out.push_back(detail::guarded("cochain map", [&] {
        const SignReport s = cochain_map_check(ctx, opt.pmax);
        if (!s.consistent)
            return detail::from_report("cochain map", s.violations);
        std::string d = s.global ? std::string(*s.global < 0 ? "T1 d = -d T1" : "T1 d = d T1")
                                 : std::string("both sides zero");
        return CheckResult{"cochain map", CheckStatus::pass,
                           d + " (per level: " + detail::sign_levels(s) + ")"};
    }));
    out.push_back(detail::guarded("well-definedness", [&] {
        return detail::from_report("well-definedness", check_well_defined(ctx, opt.pmax),
                                   levels);
    }));
    return out;
}

} // namespace xmod
