#pragma once

// Nerve of a finite groupoid: level p holds the composable p-tuples
// (g_1, ..., g_p), src(g_i) == tgt(g_{i+1}); level 0 holds the objects.
//
// Vertex k of a tuple is tgt(g_1) for k = 0 and src(g_k) otherwise. Face i
// deletes vertex i and degeneracy i repeats it, so
//   face_0 drops g_1, face_p drops g_p, face_i composes g_i g_{i+1};
//   face_0(g) = src(g), face_1(g) = tgt(g) at level 1;
//   degeneracy_0 prepends unit(tgt(g_1)), degeneracy_i inserts unit(src(g_i))
//   after g_i.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xmod/groupoid.hpp"

namespace xmod {

inline constexpr std::size_t kDefaultMaxCells = 1'000'000;

struct NerveTuple {
    std::vector<ArrowIndex> arrows;
    ObjectIndex object = kNone; // used only at level 0

    std::size_t level() const { return arrows.size(); }

    static NerveTuple of_object(ObjectIndex o) { return {{}, o}; }
    static NerveTuple of_arrows(std::vector<ArrowIndex> a) { return {std::move(a), kNone}; }

    friend bool operator==(const NerveTuple& a, const NerveTuple& b) {
        return a.arrows == b.arrows && (!a.arrows.empty() || a.object == b.object);
    }
};

inline bool is_composable(const FiniteGroupoid& g, const NerveTuple& t) {
    if (t.level() == 0)
        return t.object >= 0 && t.object < static_cast<int>(g.num_objects());
    for (std::size_t i = 0; i + 1 < t.arrows.size(); ++i)
        if (!g.composable(t.arrows[i], t.arrows[i + 1]))
            return false;
    return true;
}

inline std::string format_tuple(const FiniteGroupoid& g, const NerveTuple& t) {
    if (t.level() == 0)
        return "[" + g.object_id(t.object) + "]";
    std::string s = "(";
    for (std::size_t i = 0; i < t.arrows.size(); ++i) {
        if (i)
            s += ", ";
        s += g.arrow_id(t.arrows[i]);
    }
    return s + ")";
}

inline NerveTuple face(const FiniteGroupoid& g, const NerveTuple& t, std::size_t i) {
    const std::size_t p = t.level();
    if (p == 0 || i > p)
        throw DomainError("face index " + std::to_string(i) + " out of range at level " +
                          std::to_string(p));
    if (p == 1)
        return NerveTuple::of_object(i == 0 ? g.src(t.arrows[0]) : g.tgt(t.arrows[0]));
    NerveTuple out;
    out.arrows.reserve(p - 1);
    if (i == 0) {
        out.arrows.assign(t.arrows.begin() + 1, t.arrows.end());
    } else if (i == p) {
        out.arrows.assign(t.arrows.begin(), t.arrows.end() - 1);
    } else {
        out.arrows.assign(t.arrows.begin(), t.arrows.begin() + (i - 1));
        out.arrows.push_back(g.compose(t.arrows[i - 1], t.arrows[i]));
        out.arrows.insert(out.arrows.end(), t.arrows.begin() + (i + 1), t.arrows.end());
    }
    return out;
}

inline NerveTuple degeneracy(const FiniteGroupoid& g, const NerveTuple& t, std::size_t i) {
    const std::size_t p = t.level();
    if (i > p)
        throw DomainError("degeneracy index " + std::to_string(i) + " out of range at level " +
                          std::to_string(p));
    if (p == 0)
        return NerveTuple::of_arrows({g.unit(t.object)});
    NerveTuple out;
    out.arrows.reserve(p + 1);
    if (i == 0) {
        out.arrows.push_back(g.unit(g.tgt(t.arrows[0])));
        out.arrows.insert(out.arrows.end(), t.arrows.begin(), t.arrows.end());
    } else {
        out.arrows.assign(t.arrows.begin(), t.arrows.begin() + i);
        out.arrows.push_back(g.unit(g.src(t.arrows[i - 1])));
        out.arrows.insert(out.arrows.end(), t.arrows.begin() + i, t.arrows.end());
    }
    return out;
}

// One materialized nerve level, sorted lexicographically by arrow index.
// The position of a tuple in this list is its canonical basis index.
class NerveLevel {
  public:
    NerveLevel() = default;
    NerveLevel(std::size_t p, std::vector<int> data, std::size_t count)
        : p_(p), data_(std::move(data)), count_(count) {}

    std::size_t level() const { return p_; }
    std::size_t size() const { return count_; }

    NerveTuple tuple(std::size_t idx) const {
        if (p_ == 0)
            return NerveTuple::of_object(static_cast<ObjectIndex>(idx));
        auto first = data_.begin() + static_cast<std::ptrdiff_t>(idx * p_);
        return NerveTuple::of_arrows(std::vector<ArrowIndex>(first, first + p_));
    }

    std::span<const int> entries(std::size_t idx) const {
        return {data_.data() + idx * p_, p_};
    }

    // Canonical index, or -1 when the tuple is not in this level.
    std::int64_t index_of(const NerveTuple& t) const {
        if (t.level() != p_)
            return -1;
        if (p_ == 0)
            return (t.object >= 0 && static_cast<std::size_t>(t.object) < count_) ? t.object : -1;
        std::size_t lo = 0, hi = count_;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            auto e = entries(mid);
            if (std::lexicographical_compare(e.begin(), e.end(), t.arrows.begin(), t.arrows.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < count_) {
            auto e = entries(lo);
            if (std::equal(e.begin(), e.end(), t.arrows.begin()))
                return static_cast<std::int64_t>(lo);
        }
        return -1;
    }

    std::size_t require_index(const NerveTuple& t) const {
        const auto i = index_of(t);
        if (i < 0)
            throw DomainError("tuple is not a nerve element at level " + std::to_string(p_));
        return static_cast<std::size_t>(i);
    }

  private:
    std::size_t p_ = 0;
    std::vector<int> data_;
    std::size_t count_ = 0;
};

// Nerve levels 0..pmax of a groupoid. Holds a reference to the groupoid,
// which must outlive it.
class Nerve {
  public:
    Nerve(const FiniteGroupoid&&, std::size_t, std::size_t = kDefaultMaxCells) = delete;
    Nerve(const FiniteGroupoid& g, std::size_t pmax, std::size_t max_cells = kDefaultMaxCells)
        : g_(&g) {
        levels_.emplace_back(0, std::vector<int>{}, g.num_objects());
        std::vector<int> prev;
        std::size_t prev_count = g.num_objects();
        for (std::size_t p = 1; p <= pmax; ++p) {
            // Count first so oversized levels are refused before allocation.
            std::size_t count = 0;
            for (std::size_t i = 0; i < prev_count; ++i) {
                const ObjectIndex end =
                    p == 1 ? static_cast<ObjectIndex>(i) : g.src(prev[i * (p - 1) + p - 2]);
                count += g.arrows_into(end).size();
                if (count > max_cells)
                    throw ResourceLimit("nerve level " + std::to_string(p) + " exceeds " +
                                        std::to_string(max_cells) +
                                        " cells; raise --max-cells or lower --pmax");
            }
            std::vector<int> data;
            data.reserve(count * p);
            if (p == 1) {
                // Level 1 is every arrow, in index order.
                for (std::size_t a = 0; a < g.num_arrows(); ++a)
                    data.push_back(static_cast<int>(a));
            } else {
                for (std::size_t i = 0; i < prev_count; ++i) {
                    const ObjectIndex end = g.src(prev[i * (p - 1) + p - 2]);
                    for (ArrowIndex a : g.arrows_into(end)) {
                        data.insert(data.end(), prev.begin() + i * (p - 1),
                                    prev.begin() + (i + 1) * (p - 1));
                        data.push_back(a);
                    }
                }
            }
            levels_.emplace_back(p, data, count);
            prev = std::move(data);
            prev_count = count;
        }
    }

    const FiniteGroupoid& groupoid() const { return *g_; }
    std::size_t pmax() const { return levels_.size() - 1; }
    const NerveLevel& level(std::size_t p) const {
        if (p >= levels_.size())
            throw DomainError("nerve level " + std::to_string(p) + " not materialized");
        return levels_[p];
    }

  private:
    const FiniteGroupoid* g_;
    std::vector<NerveLevel> levels_;
};

inline std::vector<NerveTuple> nerve_level(const FiniteGroupoid& g, std::size_t p,
                                           std::size_t max_cells = kDefaultMaxCells) {
    Nerve n(g, p, max_cells);
    const auto& lv = n.level(p);
    std::vector<NerveTuple> out;
    out.reserve(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i)
        out.push_back(lv.tuple(i));
    return out;
}

// Exhaustive check of the face/degeneracy commutation relations
//   d_i d_j = d_{j-1} d_i            (i < j)
//   s_i s_j = s_{j+1} s_i            (i <= j)
//   d_i s_j = s_{j-1} d_i (i < j), id (i in {j, j+1}), s_j d_{i-1} (i > j+1)
// on every nerve tuple up to level pmax. Exceptions thrown by a corrupted
// table are reported as violations.
inline ValidationReport check_simplicial_identities(const FiniteGroupoid& g, std::size_t pmax,
                                                    std::size_t max_cells = kDefaultMaxCells) {
    ValidationReport r;
    Nerve nerve(g, pmax, max_cells);
    for (std::size_t p = 0; p <= pmax; ++p) {
        const auto& lv = nerve.level(p);
        for (std::size_t idx = 0; idx < lv.size(); ++idx) {
            const NerveTuple t = lv.tuple(idx);
            const std::string w = format_tuple(g, t);
            auto guarded = [&](const std::string& name, auto&& fn) {
                try {
                    if (!fn())
                        r.add(name, w);
                } catch (const Error&) {
                    r.add(name, w);
                }
            };
            guarded("composable tuple", [&] { return is_composable(g, t); });
            for (std::size_t j = 0; j <= p && p >= 2; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    guarded("face-face", [&] {
                        return face(g, face(g, t, j), i) == face(g, face(g, t, i), j - 1);
                    });
            for (std::size_t j = 0; j <= p; ++j)
                for (std::size_t i = 0; i <= j; ++i)
                    guarded("degeneracy-degeneracy", [&] {
                        return degeneracy(g, degeneracy(g, t, j), i) ==
                               degeneracy(g, degeneracy(g, t, i), j + 1);
                    });
            for (std::size_t j = 0; j <= p; ++j) {
                for (std::size_t i = 0; i <= p + 1; ++i) {
                    guarded("face-degeneracy", [&] {
                        const NerveTuple s = degeneracy(g, t, j);
                        if (!is_composable(g, s))
                            return false;
                        const NerveTuple lhs = face(g, s, i);
                        if (i < j)
                            return lhs == degeneracy(g, face(g, t, i), j - 1);
                        if (i == j || i == j + 1)
                            return lhs == t;
                        return lhs == degeneracy(g, face(g, t, i - 1), j);
                    });
                }
            }
        }
    }
    return r;
}

} // namespace xmod
