#pragma once

// Finite groupoids, their actions, products with the integers groupoid, and
// the inertia groupoid.
//
// Composition convention: compose(a, b) is "a after b". It is defined exactly
// when src(a) == tgt(b); the result runs from src(b) to tgt(a). A p-tuple
// (g_1, ..., g_p) is composable when src(g_i) == tgt(g_{i+1}).

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xmod/error.hpp"
#include "xmod/integer.hpp"

namespace xmod {

using ObjectIndex = int;
using ArrowIndex = int;
inline constexpr int kNone = -1;

// Radius of the integer window [-W, W] used for statements quantified over Z.
inline constexpr int kDefaultWindow = 4;

// ---------------------------------------------------------------------------
// Validation reports

struct Violation {
    std::string property;
    std::string witness; // first witness found
    std::size_t count = 0;
};

class ValidationReport {
  public:
    void add(const std::string& property, const std::string& witness) {
        for (auto& v : violations_) {
            if (v.property == property) {
                ++v.count;
                return;
            }
        }
        violations_.push_back({property, witness, 1});
    }

    void merge(const std::string& prefix, const ValidationReport& other) {
        for (const auto& v : other.violations_) {
            for (std::size_t i = 0; i < v.count; ++i)
                add(prefix + v.property, v.witness);
        }
    }

    bool ok() const { return violations_.empty(); }
    const std::vector<Violation>& violations() const { return violations_; }

    bool has(const std::string& property) const {
        return std::any_of(violations_.begin(), violations_.end(),
                           [&](const Violation& v) { return v.property == property; });
    }

    std::string str() const {
        std::ostringstream os;
        for (const auto& v : violations_)
            os << "violation: " << v.property << " (" << v.count << "x), witness " << v.witness
               << "\n";
        return os.str();
    }

  private:
    std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// FiniteGroupoid

struct ArrowRecord {
    std::string id;
    ObjectIndex src = kNone;
    ObjectIndex tgt = kNone;
};

// Immutable table-backed groupoid. The tables are stored as given; use
// validate_groupoid to check the axioms. Units and inverses that were not
// supplied explicitly are derived from the composition table when possible.
class FiniteGroupoid {
  public:
    FiniteGroupoid() = default;

    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }

    const std::string& object_id(ObjectIndex o) const { return objects_.at(o); }
    const std::string& arrow_id(ArrowIndex a) const { return arrows_.at(a).id; }
    const std::vector<std::string>& object_ids() const { return objects_; }

    std::optional<ObjectIndex> find_object(const std::string& id) const {
        auto it = object_index_.find(id);
        if (it == object_index_.end())
            return std::nullopt;
        return it->second;
    }
    std::optional<ArrowIndex> find_arrow(const std::string& id) const {
        auto it = arrow_index_.find(id);
        if (it == arrow_index_.end())
            return std::nullopt;
        return it->second;
    }

    ObjectIndex src(ArrowIndex a) const { return arrows_.at(a).src; }
    ObjectIndex tgt(ArrowIndex a) const { return arrows_.at(a).tgt; }
    bool is_loop(ArrowIndex a) const { return src(a) == tgt(a); }
    bool composable(ArrowIndex a, ArrowIndex b) const { return src(a) == tgt(b); }

    // Raw table lookup; kNone when the table has no entry.
    ArrowIndex table(ArrowIndex a, ArrowIndex b) const {
        return compose_[static_cast<std::size_t>(a) * arrows_.size() + b];
    }

    ArrowIndex compose(ArrowIndex a, ArrowIndex b) const {
        ArrowIndex c = table(a, b);
        if (!composable(a, b) || c == kNone)
            throw DomainError("incomposable pair (" + arrow_id(a) + ", " + arrow_id(b) + ")");
        return c;
    }

    ArrowIndex unit(ObjectIndex o) const {
        ArrowIndex u = units_.at(o);
        if (u == kNone)
            throw DomainError("object " + object_id(o) + " has no unit");
        return u;
    }
    ArrowIndex inverse(ArrowIndex a) const {
        ArrowIndex i = inverses_.at(a);
        if (i == kNone)
            throw DomainError("arrow " + arrow_id(a) + " has no inverse");
        return i;
    }
    ArrowIndex raw_unit(ObjectIndex o) const { return units_.at(o); }
    ArrowIndex raw_inverse(ArrowIndex a) const { return inverses_.at(a); }

    // Arrows with the given target, in index order.
    const std::vector<ArrowIndex>& arrows_into(ObjectIndex o) const { return into_.at(o); }

    // g^{-1} a g for a loop a at tgt(g).
    ArrowIndex conjugate(ArrowIndex a, ArrowIndex g) const {
        return compose(compose(inverse(g), a), g);
    }

  private:
    friend class GroupoidBuilder;

    std::vector<std::string> objects_;
    std::vector<ArrowRecord> arrows_;
    std::vector<ArrowIndex> compose_;
    std::vector<ArrowIndex> units_;
    std::vector<ArrowIndex> inverses_;
    std::vector<std::vector<ArrowIndex>> into_;
    std::unordered_map<std::string, ObjectIndex> object_index_;
    std::unordered_map<std::string, ArrowIndex> arrow_index_;
};

class GroupoidBuilder {
  public:
    ObjectIndex add_object(const std::string& id) {
        if (g_.object_index_.count(id))
            throw DomainError("duplicate object id '" + id + "'");
        ObjectIndex o = static_cast<ObjectIndex>(g_.objects_.size());
        g_.objects_.push_back(id);
        g_.object_index_.emplace(id, o);
        return o;
    }

    ArrowIndex add_arrow(const std::string& id, ObjectIndex src, ObjectIndex tgt) {
        if (g_.arrow_index_.count(id))
            throw DomainError("duplicate arrow id '" + id + "'");
        if (src < 0 || tgt < 0 || src >= static_cast<int>(g_.objects_.size()) ||
            tgt >= static_cast<int>(g_.objects_.size()))
            throw DomainError("arrow '" + id + "' references an unknown object");
        ArrowIndex a = static_cast<ArrowIndex>(g_.arrows_.size());
        g_.arrows_.push_back({id, src, tgt});
        g_.arrow_index_.emplace(id, a);
        return a;
    }

    // Entries are recorded even when src(a) != tgt(b); the validator reports them.
    void set_compose(ArrowIndex a, ArrowIndex b, ArrowIndex c) { entries_.push_back({a, b, c}); }
    void set_unit(ObjectIndex o, ArrowIndex u) { units_.emplace_back(o, u); }
    void set_inverse(ArrowIndex a, ArrowIndex i) { inverses_.emplace_back(a, i); }

    std::optional<ObjectIndex> find_object(const std::string& id) const {
        auto it = g_.object_index_.find(id);
        if (it == g_.object_index_.end())
            return std::nullopt;
        return it->second;
    }
    std::optional<ArrowIndex> find_arrow(const std::string& id) const {
        auto it = g_.arrow_index_.find(id);
        if (it == g_.arrow_index_.end())
            return std::nullopt;
        return it->second;
    }

    FiniteGroupoid build() && {
        const std::size_t n = g_.arrows_.size();
        const std::size_t m = g_.objects_.size();
        g_.compose_.assign(n * n, kNone);
        for (const auto& e : entries_) {
            check_arrow(e[0]);
            check_arrow(e[1]);
            check_arrow(e[2]);
            g_.compose_[static_cast<std::size_t>(e[0]) * n + e[1]] = e[2];
        }
        g_.into_.assign(m, {});
        for (std::size_t a = 0; a < n; ++a)
            g_.into_[g_.arrows_[a].tgt].push_back(static_cast<ArrowIndex>(a));

        g_.units_.assign(m, kNone);
        if (units_.empty()) {
            // The unit at o is the unique idempotent loop at o.
            for (std::size_t o = 0; o < m; ++o) {
                for (ArrowIndex a : g_.into_[o]) {
                    if (g_.arrows_[a].src == static_cast<int>(o) && g_.table(a, a) == a) {
                        g_.units_[o] = a;
                        break;
                    }
                }
            }
        } else {
            for (auto [o, u] : units_) {
                check_arrow(u);
                g_.units_.at(o) = u;
            }
        }

        g_.inverses_.assign(n, kNone);
        if (inverses_.empty()) {
            for (std::size_t a = 0; a < n; ++a) {
                const ObjectIndex s = g_.arrows_[a].src, t = g_.arrows_[a].tgt;
                if (g_.units_[s] == kNone || g_.units_[t] == kNone)
                    continue;
                for (ArrowIndex b : g_.into_[s]) {
                    if (g_.arrows_[b].src != t)
                        continue;
                    if (g_.table(static_cast<ArrowIndex>(a), b) == g_.units_[t] &&
                        g_.table(b, static_cast<ArrowIndex>(a)) == g_.units_[s]) {
                        g_.inverses_[a] = b;
                        break;
                    }
                }
            }
        } else {
            for (auto [a, i] : inverses_) {
                check_arrow(a);
                check_arrow(i);
                g_.inverses_[a] = i;
            }
        }
        return std::move(g_);
    }

  private:
    void check_arrow(ArrowIndex a) const {
        if (a < 0 || a >= static_cast<int>(g_.arrows_.size()))
            throw DomainError("arrow index out of range");
    }

    FiniteGroupoid g_;
    std::vector<std::array<ArrowIndex, 3>> entries_;
    std::vector<std::pair<ObjectIndex, ArrowIndex>> units_;
    std::vector<std::pair<ArrowIndex, ArrowIndex>> inverses_;
};

// Every violated groupoid axiom, each with its first witness.
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
    ValidationReport r;
    const int n = static_cast<int>(g.num_arrows());
    const int m = static_cast<int>(g.num_objects());
    auto id = [&](ArrowIndex a) { return g.arrow_id(a); };

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const ArrowIndex c = g.table(a, b);
            const bool expect = g.composable(a, b);
            if ((c != kNone) != expect) {
                r.add("composability domain", "(" + id(a) + ", " + id(b) + ")");
                continue;
            }
            if (c == kNone)
                continue;
            if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a))
                r.add("composite endpoints", "(" + id(a) + ", " + id(b) + ") -> " + id(c));
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b : g.arrows_into(g.src(a))) {
            const ArrowIndex ab = g.table(a, b);
            if (ab == kNone)
                continue;
            for (int c : g.arrows_into(g.src(b))) {
                const ArrowIndex bc = g.table(b, c);
                if (bc == kNone)
                    continue;
                const ArrowIndex lhs = g.table(ab, c);
                const ArrowIndex rhs = g.table(a, bc);
                if (lhs == kNone || lhs != rhs)
                    r.add("associativity", "(" + id(a) + ", " + id(b) + ", " + id(c) + ")");
            }
        }
    }
    for (int o = 0; o < m; ++o) {
        const ArrowIndex u = g.raw_unit(o);
        if (u == kNone) {
            r.add("unit exists", g.object_id(o));
            continue;
        }
        if (g.src(u) != o || g.tgt(u) != o)
            r.add("unit endpoints", g.object_id(o));
    }
    for (int a = 0; a < n; ++a) {
        const ArrowIndex ut = g.raw_unit(g.tgt(a)), us = g.raw_unit(g.src(a));
        if (ut != kNone && us != kNone &&
            (g.table(ut, a) != a || g.table(a, us) != a))
            r.add("unit law", id(a));
        const ArrowIndex inv = g.raw_inverse(a);
        if (inv == kNone) {
            r.add("inverse exists", id(a));
            continue;
        }
        if (g.src(inv) != g.tgt(a) || g.tgt(inv) != g.src(a) || g.table(a, inv) != ut ||
            g.table(inv, a) != us)
            r.add("inverse law", id(a));
    }
    return r;
}

// Order of a loop a: least n > 0 with a^n = unit.
inline Int loop_order(const FiniteGroupoid& g, ArrowIndex a) {
    if (!g.is_loop(a))
        throw DomainError("arrow " + g.arrow_id(a) + " is not a loop");
    const ArrowIndex e = g.unit(g.src(a));
    ArrowIndex cur = a;
    long n = 1;
    while (cur != e) {
        cur = g.compose(cur, a);
        if (++n > static_cast<long>(g.num_arrows()) + 1)
            throw DomainError("loop " + g.arrow_id(a) + " has no finite order");
    }
    return Int(n);
}

// a^k for a loop a, with a^0 the unit and negative k through the inverse.
inline ArrowIndex power(const FiniteGroupoid& g, ArrowIndex a, const Int& k) {
    const Int r = floor_mod(k, loop_order(g, a));
    ArrowIndex out = g.unit(g.src(a));
    for (Int i = 0; i < r; ++i)
        out = g.compose(out, a);
    return out;
}

// Connected component label for each object.
inline std::vector<int> connected_components(const FiniteGroupoid& g, int* count = nullptr) {
    std::vector<int> parent(g.num_objects());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        parent[find(g.src(static_cast<int>(a)))] = find(g.tgt(static_cast<int>(a)));
    std::vector<int> label(parent.size(), -1);
    int next = 0;
    std::vector<int> root_label(parent.size(), -1);
    for (std::size_t o = 0; o < parent.size(); ++o) {
        int r = find(static_cast<int>(o));
        if (root_label[r] < 0)
            root_label[r] = next++;
        label[o] = root_label[r];
    }
    if (count)
        *count = next;
    return label;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupoidHomomorphism {
    const FiniteGroupoid* source = nullptr;
    const FiniteGroupoid* target = nullptr;
    std::vector<ObjectIndex> on_objects;
    std::vector<ArrowIndex> on_arrows;
};

inline ValidationReport validate_homomorphism(const GroupoidHomomorphism& f) {
    ValidationReport r;
    const FiniteGroupoid& s = *f.source;
    const FiniteGroupoid& t = *f.target;
    if (f.on_objects.size() != s.num_objects() || f.on_arrows.size() != s.num_arrows()) {
        r.add("map sizes", "object/arrow map does not cover the source");
        return r;
    }
    for (std::size_t ai = 0; ai < s.num_arrows(); ++ai) {
        const ArrowIndex a = static_cast<ArrowIndex>(ai);
        const ArrowIndex fa = f.on_arrows[a];
        if (t.src(fa) != f.on_objects[s.src(a)] || t.tgt(fa) != f.on_objects[s.tgt(a)])
            r.add("preserves endpoints", s.arrow_id(a));
        for (ArrowIndex b : s.arrows_into(s.src(a))) {
            const ArrowIndex lhs = f.on_arrows[s.compose(a, b)];
            const ArrowIndex fb = f.on_arrows[b];
            if (!t.composable(fa, fb) || t.compose(fa, fb) != lhs)
                r.add("preserves composition", "(" + s.arrow_id(a) + ", " + s.arrow_id(b) + ")");
        }
    }
    for (std::size_t o = 0; o < s.num_objects(); ++o) {
        if (f.on_arrows[s.unit(static_cast<int>(o))] != t.unit(f.on_objects[o]))
            r.add("preserves units", s.object_id(static_cast<int>(o)));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Right actions and action groupoids

// Right action of `groupoid` on a finite carrier with momentum map J.
// act(x, g) = x^g is defined iff J(x) == tgt(g).
struct RightAction {
    const FiniteGroupoid* groupoid = nullptr;
    std::vector<std::string> carrier;
    std::vector<ObjectIndex> momentum;
    std::vector<int> table; // carrier.size() x num_arrows, kNone where undefined

    int act(int x, ArrowIndex g) const {
        const int y = table[static_cast<std::size_t>(x) * groupoid->num_arrows() + g];
        if (y == kNone)
            throw DomainError("action undefined at (" + carrier.at(x) + ", " +
                              groupoid->arrow_id(g) + ")");
        return y;
    }
    int raw(int x, ArrowIndex g) const {
        return table[static_cast<std::size_t>(x) * groupoid->num_arrows() + g];
    }
};

inline ValidationReport validate_action(const RightAction& act) {
    ValidationReport r;
    const FiniteGroupoid& g = *act.groupoid;
    const int nx = static_cast<int>(act.carrier.size());
    for (int x = 0; x < nx; ++x) {
        for (std::size_t ai = 0; ai < g.num_arrows(); ++ai) {
            const ArrowIndex a = static_cast<ArrowIndex>(ai);
            const int y = act.raw(x, a);
            const bool expect = act.momentum[x] == g.tgt(a);
            const std::string w = "(" + act.carrier[x] + ", " + g.arrow_id(a) + ")";
            if ((y != kNone) != expect) {
                r.add("action domain", w);
                continue;
            }
            if (y == kNone)
                continue;
            if (act.momentum[y] != g.src(a))
                r.add("momentum equivariance", w);
            for (ArrowIndex b : g.arrows_into(g.src(a))) {
                const int lhs = act.raw(x, g.compose(a, b));
                const int rhs = act.raw(y, b);
                if (lhs == kNone || lhs != rhs)
                    r.add("action composition", w + " then " + g.arrow_id(b));
            }
        }
        if (act.raw(x, g.unit(act.momentum[x])) != x)
            r.add("action unit", act.carrier[x]);
    }
    return r;
}

// Transformation groupoid X x| G: objects X, arrows (x, g) with J(x) = tgt(g),
// src(x,g) = x^g, tgt(x,g) = x, (x,g)(x^g,h) = (x,gh).
struct ActionGroupoid {
    FiniteGroupoid groupoid;
    std::vector<std::pair<int, ArrowIndex>> pairs; // arrow -> (x, g)
    std::vector<ArrowIndex> lookup;                // x * |G| + g -> arrow or kNone
    std::size_t base_arrows = 0;

    ArrowIndex arrow(int x, ArrowIndex g) const {
        const ArrowIndex a = lookup.at(static_cast<std::size_t>(x) * base_arrows + g);
        if (a == kNone)
            throw DomainError("no action-groupoid arrow at this pair");
        return a;
    }
    int point(ArrowIndex a) const { return pairs.at(a).first; }
    ArrowIndex acting(ArrowIndex a) const { return pairs.at(a).second; }
};

inline std::string pair_id(const std::string& x, const std::string& g) {
    return "(" + x + "," + g + ")";
}

inline ActionGroupoid action_groupoid(const RightAction& act) {
    const FiniteGroupoid& g = *act.groupoid;
    ActionGroupoid out;
    out.base_arrows = g.num_arrows();
    out.lookup.assign(act.carrier.size() * g.num_arrows(), kNone);
    GroupoidBuilder b;
    for (const auto& x : act.carrier)
        b.add_object(x);
    for (std::size_t x = 0; x < act.carrier.size(); ++x) {
        for (ArrowIndex a : g.arrows_into(act.momentum[x])) {
            const int y = act.act(static_cast<int>(x), a);
            const ArrowIndex id = b.add_arrow(pair_id(act.carrier[x], g.arrow_id(a)), y,
                                              static_cast<int>(x));
            out.pairs.emplace_back(static_cast<int>(x), a);
            out.lookup[x * g.num_arrows() + a] = id;
        }
    }
    for (std::size_t i = 0; i < out.pairs.size(); ++i) {
        const auto [x, a] = out.pairs[i];
        const int y = act.act(x, a);
        for (ArrowIndex h : g.arrows_into(g.src(a))) {
            b.set_compose(static_cast<ArrowIndex>(i), out.lookup[y * g.num_arrows() + h],
                          out.lookup[x * g.num_arrows() + g.compose(a, h)]);
        }
    }
    for (std::size_t x = 0; x < act.carrier.size(); ++x)
        b.set_unit(static_cast<int>(x), out.lookup[x * g.num_arrows() + g.unit(act.momentum[x])]);
    for (std::size_t i = 0; i < out.pairs.size(); ++i) {
        const auto [x, a] = out.pairs[i];
        b.set_inverse(static_cast<ArrowIndex>(i),
                      out.lookup[act.act(x, a) * g.num_arrows() + g.inverse(a)]);
    }
    out.groupoid = std::move(b).build();
    return out;
}

// ---------------------------------------------------------------------------
// The integers groupoid Z => * and the product Z x H.
// Z is symbolic; statements quantified over Z are tested on a window.

struct ProductElement {
    Int k;
    ArrowIndex arrow = kNone;

    friend bool operator==(const ProductElement& a, const ProductElement& b) {
        return a.k == b.k && a.arrow == b.arrow;
    }
};

class ProductGroupoid {
  public:
    explicit ProductGroupoid(const FiniteGroupoid& h) : h_(&h) {}

    const FiniteGroupoid& factor() const { return *h_; }
    ObjectIndex src(const ProductElement& e) const { return h_->src(e.arrow); }
    ObjectIndex tgt(const ProductElement& e) const { return h_->tgt(e.arrow); }
    bool composable(const ProductElement& a, const ProductElement& b) const {
        return h_->composable(a.arrow, b.arrow);
    }
    ProductElement compose(const ProductElement& a, const ProductElement& b) const {
        return {a.k + b.k, h_->compose(a.arrow, b.arrow)};
    }
    ProductElement unit(ObjectIndex o) const { return {Int(0), h_->unit(o)}; }
    ProductElement inverse(const ProductElement& a) const {
        return {Int(-a.k), h_->inverse(a.arrow)};
    }

  private:
    const FiniteGroupoid* h_;
};

// ---------------------------------------------------------------------------
// Loops, inertia groupoid, Hom(Z, G)

// SG: arrows with src == tgt, in index order.
inline std::vector<ArrowIndex> loop_space(const FiniteGroupoid& g) {
    std::vector<ArrowIndex> out;
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        if (g.is_loop(static_cast<ArrowIndex>(a)))
            out.push_back(static_cast<ArrowIndex>(a));
    return out;
}

// Conjugation action of G on its loops: a^g = g^{-1} a g, momentum a -> src(a).
inline RightAction conjugation_action(const FiniteGroupoid& g) {
    const auto loops = loop_space(g);
    std::vector<int> position(g.num_arrows(), kNone);
    for (std::size_t i = 0; i < loops.size(); ++i)
        position[loops[i]] = static_cast<int>(i);
    RightAction act;
    act.groupoid = &g;
    act.table.assign(loops.size() * g.num_arrows(), kNone);
    for (std::size_t i = 0; i < loops.size(); ++i) {
        act.carrier.push_back(g.arrow_id(loops[i]));
        act.momentum.push_back(g.src(loops[i]));
        for (ArrowIndex h : g.arrows_into(g.src(loops[i])))
            act.table[i * g.num_arrows() + h] = position[g.conjugate(loops[i], h)];
    }
    return act;
}

// Inertia groupoid SG x| G. Object x of the result corresponds to loops[x].
struct InertiaGroupoid {
    std::vector<ArrowIndex> loops;
    ActionGroupoid action;

    const FiniteGroupoid& groupoid() const { return action.groupoid; }
    ArrowIndex loop_of(ArrowIndex inertia_arrow) const {
        return loops.at(action.point(inertia_arrow));
    }
};

inline InertiaGroupoid inertia_groupoid(const FiniteGroupoid& g) {
    InertiaGroupoid out;
    out.loops = loop_space(g);
    out.action = action_groupoid(conjugation_action(g));
    return out;
}

// A functor Z -> G, determined by the image of 1.
struct ZFunctor {
    ArrowIndex generator = kNone;

    ArrowIndex at(const FiniteGroupoid& g, const Int& n) const { return power(g, generator, n); }
};

// One functor per loop, in the order of loop_space(g).
inline std::vector<ZFunctor> hom_z_objects(const FiniteGroupoid& g) {
    std::vector<ZFunctor> out;
    for (ArrowIndex a : loop_space(g))
        out.push_back({a});
    return out;
}

inline ZFunctor functor_of_loop(const FiniteGroupoid& g, ArrowIndex a) {
    if (!g.is_loop(a))
        throw DomainError("arrow " + g.arrow_id(a) + " is not a loop");
    return {a};
}

inline ArrowIndex loop_of_functor(const FiniteGroupoid& g, const ZFunctor& f) {
    return f.at(g, Int(1));
}

// Checks that n -> alpha(n) respects addition and units on [-window, window].
inline ValidationReport check_z_functor(const FiniteGroupoid& g, const ZFunctor& f, int window) {
    ValidationReport r;
    const ArrowIndex e = g.unit(g.src(f.generator));
    if (f.at(g, Int(0)) != e)
        r.add("functor unit", g.arrow_id(f.generator));
    for (int m = -window; m <= window; ++m)
        for (int n = -window; n <= window; ++n)
            if (f.at(g, Int(m + n)) != g.compose(f.at(g, Int(m)), f.at(g, Int(n))))
                r.add("functor composition",
                      g.arrow_id(f.generator) + " at (" + std::to_string(m) + ", " +
                          std::to_string(n) + ")");
    return r;
}

// Arrow (a, g) of the inertia groupoid read as a natural transformation
// eta : beta <= alpha with beta(1) = a, alpha(1) = g^{-1} a g, eta_* = g.
struct NaturalTransformation {
    ZFunctor target;
    ZFunctor source;
    ArrowIndex component = kNone;
};

inline NaturalTransformation as_natural_transformation(const FiniteGroupoid& g,
                                                       const InertiaGroupoid& inertia,
                                                       ArrowIndex arrow) {
    const ArrowIndex a = inertia.loop_of(arrow);
    const ArrowIndex h = inertia.action.acting(arrow);
    return {ZFunctor{a}, ZFunctor{g.conjugate(a, h)}, h};
}

// eta alpha(n) = beta(n) eta for n in the window.
inline bool is_natural(const FiniteGroupoid& g, const NaturalTransformation& eta, int window) {
    for (int n = -window; n <= window; ++n) {
        const Int k(n);
        if (g.compose(eta.component, eta.source.at(g, k)) !=
            g.compose(eta.target.at(g, k), eta.component))
            return false;
    }
    return true;
}

// k . (a, g) = (a, a^k g).
inline ArrowIndex z_action_on_inertia_arrow(const FiniteGroupoid& g,
                                            const InertiaGroupoid& inertia, const Int& k,
                                            ArrowIndex arrow) {
    const int x = inertia.action.point(arrow);
    const ArrowIndex a = inertia.loops[x];
    const ArrowIndex h = inertia.action.acting(arrow);
    return inertia.action.arrow(x, g.compose(power(g, a, k), h));
}

// A composable pair of inertia arrows and an exponent for which
// (k.x)(k.y) != k.(xy), i.e. the Z-action is not by automorphisms.
struct ZActionWitness {
    ArrowIndex first = kNone;
    ArrowIndex second = kNone;
    int k = 0;
};

inline std::optional<ZActionWitness> find_z_action_witness(const FiniteGroupoid& g,
                                                          const InertiaGroupoid& inertia,
                                                          int window) {
    const FiniteGroupoid& lg = inertia.groupoid();
    // Exponents in the order 1, -1, 2, -2, ...; k = 0 always acts trivially.
    for (int step = 0; step < 2 * window; ++step) {
        const int k = step % 2 == 0 ? step / 2 + 1 : -(step / 2 + 1);
        const Int kk(k);
        for (std::size_t xi = 0; xi < lg.num_arrows(); ++xi) {
            const ArrowIndex x = static_cast<ArrowIndex>(xi);
            for (ArrowIndex y : lg.arrows_into(lg.src(x))) {
                const ArrowIndex kx = z_action_on_inertia_arrow(g, inertia, kk, x);
                const ArrowIndex ky = z_action_on_inertia_arrow(g, inertia, kk, y);
                const ArrowIndex rhs = z_action_on_inertia_arrow(g, inertia, kk, lg.compose(x, y));
                if (!lg.composable(kx, ky) || lg.compose(kx, ky) != rhs)
                    return ZActionWitness{x, y, k};
            }
        }
    }
    return std::nullopt;
}

} // namespace xmod
