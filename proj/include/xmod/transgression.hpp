#pragma once

// Chain-level transgression for a crossed module N -> G.
//
// Two routes from (N x| G)_{p-1} to G_p:
//  * closed formulas: f_i (1 <= i <= p) inserts phi(x)^{g_1...g_{i-1}} at slot i,
//    f~_i (0 <= i <= p-1) inserts phi(x)^{g_1...g_i} after g_i;
//  * the staged pipeline pi . rho . phi_i . iota, where phi_i is the summand
//    of the (1, p-1) Eilenberg-MacLane map for the shuffle with mu(1) = i,
//    built from degeneracy operators of the two nerve factors.
// The cochain maps are T1 = sum_i (-1)^i f~_i^* ("tilde"),
// Phi = sum_i (-1)^i f_i^* ("f") and sum_i sign(mu_i) (pi rho phi_i iota)^*
// with permutation-parity signs ("shuffle").

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xmod/cochain.hpp"
#include "xmod/crossed_module.hpp"

namespace xmod {

// (1, p-1)-shuffle determined by mu(1) = i.
struct Shuffle {
    std::size_t p = 0;
    std::size_t i = 0;
    int sign = 1;
    std::vector<std::size_t> permutation; // mu(1..p), 1-based values
};

inline Shuffle make_shuffle(std::size_t p, std::size_t i) {
    if (i < 1 || i > p)
        throw DomainError("shuffle index " + std::to_string(i) + " out of range for p=" +
                          std::to_string(p));
    Shuffle s{p, i, 1, {i}};
    for (std::size_t v = 1; v <= p; ++v)
        if (v != i)
            s.permutation.push_back(v);
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a + 1; b < p; ++b)
            if (s.permutation[a] > s.permutation[b])
                ++inversions;
    s.sign = inversions % 2 == 0 ? 1 : -1;
    return s;
}

inline std::vector<Shuffle> shuffles(std::size_t p) {
    std::vector<Shuffle> out;
    for (std::size_t i = 1; i <= p; ++i)
        out.push_back(make_shuffle(p, i));
    return out;
}

// Element of Z_1 x (N x| G)_{p-1}.
struct TaggedTuple {
    Int k;
    NerveTuple chain;
};

// Element of (Z x (N x| G))_p, stored componentwise.
struct ProductTuple {
    std::vector<Int> z;
    NerveTuple chain;
};

inline TaggedTuple iota(const NerveTuple& chain) { return {Int(1), chain}; }

inline const NerveTuple& untag(const TaggedTuple& t) { return t.chain; }

// Degeneracy j on the nerve of Z: inserts the unit 0.
inline std::vector<Int> z_degeneracy(std::vector<Int> z, std::size_t j) {
    if (j > z.size())
        throw DomainError("degeneracy index out of range on the integers nerve");
    z.insert(z.begin() + static_cast<std::ptrdiff_t>(j), Int(0));
    return z;
}

// phi_i(k, chain): the Z-factor receives the degeneracies of the complement
// block of the shuffle in increasing order; the chain receives degeneracy i-1.
inline ProductTuple em_summand(const FiniteGroupoid& h, std::size_t i, const TaggedTuple& t) {
    const std::size_t p = t.chain.level() + 1;
    if (i < 1 || i > p)
        throw DomainError("summand index " + std::to_string(i) + " out of range for p=" +
                          std::to_string(p));
    std::vector<Int> z{t.k};
    for (std::size_t j = 0; j < p; ++j)
        if (j != i - 1)
            z = z_degeneracy(std::move(z), j);
    return {std::move(z), degeneracy(h, t.chain, i - 1)};
}

struct SignedProductTuple {
    int sign = 1;
    ProductTuple tuple;
};

inline std::vector<SignedProductTuple> em_map(const FiniteGroupoid& h, const TaggedTuple& t) {
    const std::size_t p = t.chain.level() + 1;
    std::vector<SignedProductTuple> out;
    for (const Shuffle& s : shuffles(p))
        out.push_back({s.sign, em_summand(h, s.i, t)});
    return out;
}

// rho applied levelwise to a tuple of (Z x (N x| G))_p.
inline NerveTuple rho_tuple(const CrossedModule& cm, const CrossedProduct& cp,
                            const ProductTuple& t) {
    if (t.z.size() != t.chain.level())
        throw DomainError("product tuple components have different levels");
    NerveTuple out;
    for (std::size_t j = 0; j < t.z.size(); ++j)
        out.arrows.push_back(rho(cm, cp, t.z[j], t.chain.arrows[j]));
    return out;
}

inline NerveTuple pi_tuple(const CrossedProduct& cp, const NerveTuple& t) {
    NerveTuple out;
    for (ArrowIndex a : t.arrows)
        out.arrows.push_back(pi(cp, a));
    return out;
}

struct PipelineTrace {
    FlatTuple input;
    TaggedTuple tagged;
    ProductTuple summand;
    NerveTuple rho_image;
    NerveTuple pi_image;
};

inline PipelineTrace pipeline(const CrossedModule& cm, const CrossedProduct& cp, std::size_t i,
                              const FlatTuple& flat) {
    PipelineTrace tr;
    tr.input = flat;
    tr.tagged = iota(unflatten(cm, cp, flat));
    tr.summand = em_summand(cp.groupoid(), i, tr.tagged);
    tr.rho_image = rho_tuple(cm, cp, tr.summand);
    tr.pi_image = pi_tuple(cp, tr.rho_image);
    return tr;
}

namespace detail {

inline ArrowIndex conjugated_phi(const CrossedModule& cm, const FlatTuple& flat,
                                 std::size_t prefix) {
    ArrowIndex v = cm.phi.at(flat.x);
    if (prefix == 0)
        return v;
    ArrowIndex prod = flat.g[0];
    for (std::size_t j = 1; j < prefix; ++j)
        prod = cm.base.compose(prod, flat.g[j]);
    return cm.base.conjugate(v, prod);
}

inline NerveTuple insert_at(const FlatTuple& flat, std::size_t slot, ArrowIndex a) {
    NerveTuple out;
    out.arrows.assign(flat.g.begin(), flat.g.begin() + static_cast<std::ptrdiff_t>(slot));
    out.arrows.push_back(a);
    out.arrows.insert(out.arrows.end(), flat.g.begin() + static_cast<std::ptrdiff_t>(slot),
                      flat.g.end());
    return out;
}

} // namespace detail

// f_i(x, g_1..g_{p-1}) = (g_1, .., g_{i-1}, phi(x)^{g_1...g_{i-1}}, g_i, .., g_{p-1}).
inline NerveTuple f_i(const CrossedModule& cm, std::size_t i, const FlatTuple& flat) {
    const std::size_t p = flat.level() + 1;
    if (i < 1 || i > p)
        throw DomainError("f_i index " + std::to_string(i) + " out of range for p=" +
                          std::to_string(p));
    return detail::insert_at(flat, i - 1, detail::conjugated_phi(cm, flat, i - 1));
}

// f~_i(x, g_1..g_{p-1}) = (g_1, .., g_i, phi(x)^{g_1...g_i}, g_{i+1}, .., g_{p-1}).
inline NerveTuple f_tilde_i(const CrossedModule& cm, std::size_t i, const FlatTuple& flat) {
    const std::size_t p = flat.level() + 1;
    if (i > p - 1)
        throw DomainError("f~_i index " + std::to_string(i) + " out of range for p=" +
                          std::to_string(p));
    return detail::insert_at(flat, i, detail::conjugated_phi(cm, flat, i));
}

enum class Convention { tilde, f, shuffle };

inline const char* convention_name(Convention c) {
    switch (c) {
    case Convention::tilde:
        return "tilde";
    case Convention::f:
        return "f";
    case Convention::shuffle:
        return "shuffle";
    }
    return "?";
}

inline std::optional<Convention> parse_convention(const std::string& s) {
    if (s == "tilde")
        return Convention::tilde;
    if (s == "f")
        return Convention::f;
    if (s == "shuffle")
        return Convention::shuffle;
    return std::nullopt;
}

// The map C(G_p) -> C((N x| G)_{p-1}) as a matrix: rows index (N x| G)_{p-1},
// columns index G_p, both in canonical nerve order.
inline SparseIntMatrix transgression_matrix(const CrossedModule& cm, const CrossedProduct& cp,
                                            const Nerve& base_nerve, const Nerve& cp_nerve,
                                            std::size_t p, Convention conv) {
    if (p < 1)
        throw DomainError("transgression needs p >= 1");
    const NerveLevel& rows = cp_nerve.level(p - 1);
    const NerveLevel& cols = base_nerve.level(p);
    SparseIntMatrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const NerveTuple chain = rows.tuple(r);
        const FlatTuple flat = flatten(cm, cp, chain);
        switch (conv) {
        case Convention::tilde:
            for (std::size_t i = 0; i < p; ++i)
                m.add(r, cols.require_index(f_tilde_i(cm, i, flat)), Int(i % 2 == 0 ? 1 : -1));
            break;
        case Convention::f:
            for (std::size_t i = 1; i <= p; ++i)
                m.add(r, cols.require_index(f_i(cm, i, flat)), Int(i % 2 == 0 ? 1 : -1));
            break;
        case Convention::shuffle:
            for (const auto& term : em_map(cp.groupoid(), iota(chain)))
                m.add(r, cols.require_index(pi_tuple(cp, rho_tuple(cm, cp, term.tuple))),
                      Int(term.sign));
            break;
        }
    }
    m.normalize();
    return m;
}

// Bundles a crossed module with its crossed product and both nerves.
class TransgressionContext {
  public:
    TransgressionContext(const CrossedModule& cm, std::size_t pmax,
                         std::size_t max_cells = kDefaultMaxCells)
        : cm_(&cm), cp_(crossed_product(cm)), base_nerve_(cm.base, pmax, max_cells),
          cp_nerve_(cp_.groupoid(), pmax, max_cells) {}

    TransgressionContext(const TransgressionContext&) = delete;
    TransgressionContext& operator=(const TransgressionContext&) = delete;

    const CrossedModule& module() const { return *cm_; }
    const CrossedProduct& product() const { return cp_; }
    const Nerve& base_nerve() const { return base_nerve_; }
    const Nerve& product_nerve() const { return cp_nerve_; }

    SparseIntMatrix matrix(std::size_t p, Convention conv) const {
        return transgression_matrix(*cm_, cp_, base_nerve_, cp_nerve_, p, conv);
    }

  private:
    const CrossedModule* cm_;
    CrossedProduct cp_;
    Nerve base_nerve_;
    Nerve cp_nerve_;
};

// (T c)(t) = sum_i sign_i c(insertion_i(flat t)) for the chosen convention.
inline IntCochain T1_cochain(const TransgressionContext& ctx, const IntCochain& c,
                             Convention conv = Convention::tilde) {
    if (c.level < 1)
        throw DomainError("transgression needs a cochain of level >= 1");
    if (c.values.size() != ctx.base_nerve().level(c.level).size())
        throw DomainError("cochain length does not match G_" + std::to_string(c.level));
    return apply(ctx.matrix(c.level, conv), c, c.level - 1);
}

// s with A = s B, if any; nullopt when no sign works, 0 when both are zero.
inline std::optional<int> sign_between(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    const bool plus = a == b;
    const bool minus = a == b.scaled(Int(-1));
    if (plus && minus)
        return 0;
    if (plus)
        return 1;
    if (minus)
        return -1;
    return std::nullopt;
}

inline std::string sign_relation_text(const std::string& lhs, const std::string& rhs, int s) {
    return lhs + (s < 0 ? " = −(" : " = +(") + rhs + ")";
}

// ---------------------------------------------------------------------------
// Property checks

// pi(rho(em_summand(i, iota(t)))) == f_i(t) on every tuple of (N x| G)_{p-1},
// 1 <= p <= pmax; also checks the shape of each summand.
inline ValidationReport check_pipeline_vs_formula(const TransgressionContext& ctx,
                                                  std::size_t pmax) {
    ValidationReport r;
    const auto& cm = ctx.module();
    const auto& cp = ctx.product();
    for (std::size_t p = 1; p <= pmax; ++p) {
        const NerveLevel& lv = ctx.product_nerve().level(p - 1);
        for (std::size_t idx = 0; idx < lv.size(); ++idx) {
            const FlatTuple flat = flatten(cm, cp, lv.tuple(idx));
            for (std::size_t i = 1; i <= p; ++i) {
                const PipelineTrace tr = pipeline(cm, cp, i, flat);
                const NerveTuple closed = f_i(cm, i, flat);
                const std::string w = "p=" + std::to_string(p) + " i=" + std::to_string(i) +
                                      " " + format_flat(cm, flat);
                for (std::size_t j = 0; j < p; ++j)
                    if (tr.summand.z[j] != (j + 1 == i ? 1 : 0))
                        r.add("summand integer pattern", w);
                if (!is_composable(cp.groupoid(), tr.summand.chain))
                    r.add("summand composable", w);
                if (!is_composable(cm.base, closed))
                    r.add("f_i composable", w);
                if (!(tr.pi_image == closed))
                    r.add("pipeline = closed formula", w);
            }
        }
    }
    return r;
}

// f~_{i-1} == f_i pointwise, 1 <= i <= p <= pmax.
inline ValidationReport check_index_shift(const TransgressionContext& ctx, std::size_t pmax) {
    ValidationReport r;
    const auto& cm = ctx.module();
    for (std::size_t p = 1; p <= pmax; ++p) {
        const NerveLevel& lv = ctx.product_nerve().level(p - 1);
        for (std::size_t idx = 0; idx < lv.size(); ++idx) {
            const FlatTuple flat = flatten(cm, ctx.product(), lv.tuple(idx));
            for (std::size_t i = 1; i <= p; ++i)
                if (!(f_tilde_i(cm, i - 1, flat) == f_i(cm, i, flat)))
                    r.add("f~_{i-1} = f_i", "p=" + std::to_string(p) + " i=" +
                                                std::to_string(i) + " " + format_flat(cm, flat));
        }
    }
    return r;
}

struct SignReport {
    std::vector<std::optional<int>> per_level; // index p; entry 0 = p=0 unused
    std::optional<int> global;                 // nullopt if inconsistent or undetermined
    bool consistent = true;
    ValidationReport violations;
};

// Measures s with T_a = s T_b at every level 1..pmax.
inline SignReport measure_convention_sign(const TransgressionContext& ctx, std::size_t pmax,
                                          Convention a, Convention b) {
    SignReport rep;
    rep.per_level.assign(pmax + 1, std::nullopt);
    for (std::size_t p = 1; p <= pmax; ++p) {
        const auto s = sign_between(ctx.matrix(p, a), ctx.matrix(p, b));
        rep.per_level[p] = s;
        if (!s) {
            rep.consistent = false;
            rep.violations.add(std::string("single sign ") + convention_name(a) + " vs " +
                                   convention_name(b),
                               "p=" + std::to_string(p));
            continue;
        }
        if (*s == 0)
            continue;
        if (rep.global && *rep.global != *s) {
            rep.consistent = false;
            rep.violations.add("sign constant across levels", "p=" + std::to_string(p));
        }
        if (!rep.global)
            rep.global = *s;
    }
    if (!rep.consistent)
        rep.global.reset();
    return rep;
}

// T1 . d = s . d . T1 on every basis cochain of G_p for 0 <= p < pmax.
// At p = 0 the right side is zero (no level -1), so only T1 . d = 0 is checked.
inline SignReport cochain_map_check(const TransgressionContext& ctx, std::size_t pmax,
                                    Convention conv = Convention::tilde) {
    SignReport rep;
    rep.per_level.assign(pmax, std::nullopt);
    for (std::size_t p = 0; p < pmax; ++p) {
        const SparseIntMatrix lhs =
            ctx.matrix(p + 1, conv) * coboundary_matrix(ctx.base_nerve(), p);
        std::optional<int> s;
        if (p == 0) {
            s = lhs.is_zero() ? std::optional<int>(0) : std::nullopt;
        } else {
            const SparseIntMatrix rhs =
                coboundary_matrix(ctx.product_nerve(), p - 1) * ctx.matrix(p, conv);
            s = sign_between(lhs, rhs);
        }
        rep.per_level[p] = s;
        if (!s) {
            rep.consistent = false;
            rep.violations.add("T1 d = s d T1", "p=" + std::to_string(p));
            continue;
        }
        if (*s == 0)
            continue;
        if (rep.global && *rep.global != *s) {
            rep.consistent = false;
            rep.violations.add("sign constant across levels", "p=" + std::to_string(p));
        }
        if (!rep.global)
            rep.global = *s;
    }
    if (!rep.consistent)
        rep.global.reset();
    return rep;
}

} // namespace xmod
