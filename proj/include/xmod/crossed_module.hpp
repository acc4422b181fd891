#pragma once

// Crossed modules of groupoids N -> G, the crossed product N x| G, the
// flat description of its nerve, and the maps rho and pi.

#include <string>
#include <vector>

#include "xmod/groupoid.hpp"
#include "xmod/nerve.hpp"

namespace xmod {

// N is stored as a groupoid on the same objects (same ids, same order) as G.
// action is an |N| x |G| table: action[x * |G| + g] = x^g, defined iff
// tgt(x) == tgt(g).
struct CrossedModule {
    FiniteGroupoid base;
    FiniteGroupoid bundle;
    std::vector<ArrowIndex> phi;
    std::vector<ArrowIndex> action;

    ArrowIndex act(ArrowIndex x, ArrowIndex g) const {
        const ArrowIndex y = raw_act(x, g);
        if (y == kNone)
            throw DomainError("action undefined at (" + bundle.arrow_id(x) + ", " +
                              base.arrow_id(g) + ")");
        return y;
    }
    ArrowIndex raw_act(ArrowIndex x, ArrowIndex g) const {
        return action.at(static_cast<std::size_t>(x) * base.num_arrows() + g);
    }

    // The action as a RightAction on the arrow set of N; refers to this->base.
    RightAction right_action() const {
        RightAction a;
        a.groupoid = &base;
        for (std::size_t x = 0; x < bundle.num_arrows(); ++x) {
            a.carrier.push_back(bundle.arrow_id(static_cast<ArrowIndex>(x)));
            a.momentum.push_back(bundle.tgt(static_cast<ArrowIndex>(x)));
        }
        a.table = action;
        return a;
    }
};

// Subgroupoid of g on all objects with the given loops as arrows.
inline FiniteGroupoid loop_subgroupoid(const FiniteGroupoid& g,
                                       const std::vector<ArrowIndex>& loops) {
    GroupoidBuilder b;
    for (const auto& o : g.object_ids())
        b.add_object(o);
    std::vector<int> position(g.num_arrows(), kNone);
    for (std::size_t i = 0; i < loops.size(); ++i) {
        position[loops[i]] = static_cast<int>(i);
        b.add_arrow(g.arrow_id(loops[i]), g.src(loops[i]), g.tgt(loops[i]));
    }
    for (std::size_t i = 0; i < loops.size(); ++i)
        for (std::size_t j = 0; j < loops.size(); ++j)
            if (g.composable(loops[i], loops[j])) {
                const int c = position[g.compose(loops[i], loops[j])];
                if (c == kNone)
                    throw DomainError("loop set is not closed under composition");
                b.set_compose(static_cast<int>(i), static_cast<int>(j), c);
            }
    return std::move(b).build();
}

namespace detail {

inline CrossedModule conjugation_crossed_module(const FiniteGroupoid& g,
                                                const std::vector<ArrowIndex>& loops) {
    CrossedModule cm;
    cm.base = g;
    cm.bundle = loop_subgroupoid(g, loops);
    std::vector<int> position(g.num_arrows(), kNone);
    for (std::size_t i = 0; i < loops.size(); ++i)
        position[loops[i]] = static_cast<int>(i);
    cm.phi = loops;
    cm.action.assign(loops.size() * g.num_arrows(), kNone);
    for (std::size_t i = 0; i < loops.size(); ++i)
        for (ArrowIndex h : g.arrows_into(g.tgt(loops[i])))
            cm.action[i * g.num_arrows() + h] = position[g.conjugate(loops[i], h)];
    return cm;
}

} // namespace detail

// G -> G with conjugation; G must be a bundle of groups (e.g. a group).
inline CrossedModule identity_crossed_module(const FiniteGroupoid& g) {
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        if (!g.is_loop(static_cast<ArrowIndex>(a)))
            throw DomainError("identity crossed module needs a bundle of groups; arrow " +
                              g.arrow_id(static_cast<ArrowIndex>(a)) + " is not a loop");
    return detail::conjugation_crossed_module(g, loop_space(g));
}

// SG -> G, inclusion of the closed loops with conjugation.
inline CrossedModule inertia_crossed_module(const FiniteGroupoid& g) {
    return detail::conjugation_crossed_module(g, loop_space(g));
}

// Units -> G; unit(o)^g = unit(src(g)).
inline CrossedModule trivial_crossed_module(const FiniteGroupoid& g) {
    std::vector<ArrowIndex> units;
    for (std::size_t o = 0; o < g.num_objects(); ++o)
        units.push_back(g.unit(static_cast<ObjectIndex>(o)));
    return detail::conjugation_crossed_module(g, units);
}

// Every violated crossed-module axiom with a witness.
inline ValidationReport validate_crossed_module(const CrossedModule& cm) {
    ValidationReport r;
    const FiniteGroupoid& g = cm.base;
    const FiniteGroupoid& n = cm.bundle;
    r.merge("G: ", validate_groupoid(g));
    r.merge("N: ", validate_groupoid(n));
    if (n.object_ids() != g.object_ids())
        r.add("N and G share objects", "object lists differ");
    if (cm.phi.size() != n.num_arrows() || cm.action.size() != n.num_arrows() * g.num_arrows())
        r.add("table sizes", "phi or action table has the wrong size");
    if (!r.ok())
        return r;

    auto guarded = [&](const std::string& name, const std::string& w, auto&& fn) {
        try {
            if (!fn())
                r.add(name, w);
        } catch (const Error&) {
            r.add(name, w);
        }
    };
    const int nn = static_cast<int>(n.num_arrows());
    for (int x = 0; x < nn; ++x)
        if (!n.is_loop(x))
            r.add("bundle of groups", n.arrow_id(x));
    for (int x = 0; x < nn; ++x) {
        const ArrowIndex fx = cm.phi[x];
        if (fx < 0 || fx >= static_cast<int>(g.num_arrows())) {
            r.add("phi defined", n.arrow_id(x));
            continue;
        }
        if (g.src(fx) != n.src(x) || g.tgt(fx) != n.tgt(x))
            r.add("phi covers identity on objects", n.arrow_id(x));
        for (ArrowIndex y : n.arrows_into(n.src(x)))
            guarded("phi homomorphism", "(" + n.arrow_id(x) + ", " + n.arrow_id(y) + ")", [&] {
                return cm.phi[n.compose(x, y)] == g.compose(fx, cm.phi[y]);
            });
    }
    if (!r.ok())
        return r;

    const RightAction ra = cm.right_action();
    r.merge("action: ", validate_action(ra));
    if (!r.ok())
        return r;

    for (int x = 0; x < nn; ++x) {
        for (ArrowIndex h : g.arrows_into(n.tgt(x))) {
            const std::string w = "(" + n.arrow_id(x) + ", " + g.arrow_id(h) + ")";
            guarded("equivariance: phi(x^g) = phi(x)^g", w, [&] {
                return cm.phi[cm.act(x, h)] == g.conjugate(cm.phi[x], h);
            });
            for (ArrowIndex y : n.arrows_into(n.src(x)))
                guarded("by automorphisms: x^g y^g = (xy)^g",
                        w + " with " + n.arrow_id(y), [&] {
                            return n.compose(cm.act(x, h), cm.act(y, h)) ==
                                   cm.act(n.compose(x, y), h);
                        });
        }
        for (ArrowIndex y : n.arrows_into(n.src(x))) {
            guarded("Peiffer: x^phi(y) = y^-1 x y",
                    "(" + n.arrow_id(x) + ", " + n.arrow_id(y) + ")",
                    [&] { return cm.act(x, cm.phi[y]) == n.conjugate(x, y); });
        }
    }
    return r;
}

// Crossed product N x| G; object x is the N-arrow x.
struct CrossedProduct {
    ActionGroupoid action;

    const FiniteGroupoid& groupoid() const { return action.groupoid; }
    ArrowIndex arrow(ArrowIndex x, ArrowIndex g) const { return action.arrow(x, g); }
    ArrowIndex point(ArrowIndex a) const { return action.point(a); }
    ArrowIndex acting(ArrowIndex a) const { return action.acting(a); }
};

inline CrossedProduct crossed_product(const CrossedModule& cm) {
    return {action_groupoid(cm.right_action())};
}

// (x, g_1, ..., g_l) with J(x) = tgt(g_1) and g_1 ... g_l composable.
struct FlatTuple {
    ArrowIndex x = kNone;
    std::vector<ArrowIndex> g;

    std::size_t level() const { return g.size(); }
    friend bool operator==(const FlatTuple&, const FlatTuple&) = default;
};

inline std::string format_flat(const CrossedModule& cm, const FlatTuple& f) {
    std::string s = "(" + cm.bundle.arrow_id(f.x);
    for (ArrowIndex a : f.g)
        s += ", " + cm.base.arrow_id(a);
    return s + ")";
}

inline FlatTuple flatten(const CrossedModule& cm, const CrossedProduct& cp, const NerveTuple& t) {
    if (t.level() == 0)
        return {t.object, {}};
    FlatTuple out{cp.point(t.arrows[0]), {}};
    ArrowIndex x = out.x;
    for (ArrowIndex a : t.arrows) {
        if (cp.point(a) != x)
            throw DomainError("malformed crossed-product chain");
        out.g.push_back(cp.acting(a));
        x = cm.act(x, cp.acting(a));
    }
    return out;
}

inline NerveTuple unflatten(const CrossedModule& cm, const CrossedProduct& cp,
                            const FlatTuple& f) {
    if (f.g.empty())
        return NerveTuple::of_object(f.x);
    NerveTuple out;
    ArrowIndex x = f.x;
    for (std::size_t j = 0; j < f.g.size(); ++j) {
        if (cm.bundle.tgt(x) != cm.base.tgt(f.g[j]) ||
            (j > 0 && !cm.base.composable(f.g[j - 1], f.g[j])))
            throw DomainError("malformed flat tuple");
        out.arrows.push_back(cp.arrow(x, f.g[j]));
        x = cm.act(x, f.g[j]);
    }
    return out;
}

// rho(k, (x, g)) = (x, phi(x^k) g).
inline ArrowIndex rho(const CrossedModule& cm, const CrossedProduct& cp, const Int& k,
                      ArrowIndex arrow) {
    const ArrowIndex x = cp.point(arrow);
    const ArrowIndex g = cp.acting(arrow);
    return cp.arrow(x, cm.base.compose(cm.phi[power(cm.bundle, x, k)], g));
}

// pi(x, g) = g.
inline ArrowIndex pi(const CrossedProduct& cp, ArrowIndex arrow) { return cp.acting(arrow); }

// pi as a groupoid homomorphism N x| G -> G; objects go to their base object.
inline GroupoidHomomorphism pi_homomorphism(const CrossedModule& cm, const CrossedProduct& cp) {
    GroupoidHomomorphism f;
    f.source = &cp.groupoid();
    f.target = &cm.base;
    for (std::size_t x = 0; x < cm.bundle.num_arrows(); ++x)
        f.on_objects.push_back(cm.bundle.tgt(static_cast<ArrowIndex>(x)));
    for (std::size_t a = 0; a < cp.groupoid().num_arrows(); ++a)
        f.on_arrows.push_back(pi(cp, static_cast<ArrowIndex>(a)));
    return f;
}

// rho is a homomorphism Z x (N x| G) -> N x| G over the identity on objects,
// rho(0, -) is the identity, and pi(rho(k, (x, g))) = phi(x)^k g; all checked
// for k, l in [-window, window].
inline ValidationReport check_rho(const CrossedModule& cm, const CrossedProduct& cp, int window) {
    ValidationReport r;
    const FiniteGroupoid& h = cp.groupoid();
    const ProductGroupoid zh(h);
    for (std::size_t ai = 0; ai < h.num_arrows(); ++ai) {
        const ArrowIndex a = static_cast<ArrowIndex>(ai);
        const std::string wa = h.arrow_id(a);
        if (rho(cm, cp, Int(0), a) != a)
            r.add("rho(0, -) = id", wa);
        for (int k = -window; k <= window; ++k) {
            const Int kk(k);
            const ArrowIndex ra = rho(cm, cp, kk, a);
            if (h.src(ra) != h.src(a) || h.tgt(ra) != h.tgt(a))
                r.add("rho preserves endpoints", wa + " k=" + std::to_string(k));
            const ArrowIndex fx = cm.phi[cp.point(a)];
            if (pi(cp, ra) != cm.base.compose(power(cm.base, fx, kk), cp.acting(a)))
                r.add("pi rho exponent law", wa + " k=" + std::to_string(k));
            for (ArrowIndex b : h.arrows_into(h.src(a))) {
                for (int l = -window; l <= window; ++l) {
                    const Int ll(l);
                    const ProductElement prod = zh.compose({kk, a}, {ll, b});
                    const ArrowIndex lhs = rho(cm, cp, prod.k, prod.arrow);
                    const ArrowIndex rb = rho(cm, cp, ll, b);
                    if (!h.composable(ra, rb) || h.compose(ra, rb) != lhs)
                        r.add("rho homomorphism",
                              "(" + std::to_string(k) + "," + wa + ")(" + std::to_string(l) +
                                  "," + h.arrow_id(b) + ")");
                }
            }
        }
    }
    return r;
}

} // namespace xmod
