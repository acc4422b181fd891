#pragma once

// Named groupoid families used by the file-format shorthands and the tests.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "xmod/groupoid.hpp"

namespace xmod {

// Z/n as a one-object groupoid; arrow "k" is the residue k.
inline FiniteGroupoid cyclic_group(int n) {
    if (n < 1)
        throw DomainError("cyclic order must be positive");
    GroupoidBuilder b;
    const ObjectIndex o = b.add_object("*");
    for (int k = 0; k < n; ++k)
        b.add_arrow(std::to_string(k), o, o);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.set_compose(i, j, (i + j) % n);
    return std::move(b).build();
}

// S_n as a one-object groupoid. Arrows are named by one-line notation
// (images of 1..n); compose(a, b) applies b first. The identity is arrow 0.
inline FiniteGroupoid symmetric_group(int n) {
    if (n < 1 || n > 9)
        throw DomainError("symmetric degree must be in [1, 9]");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    auto name = [](const std::vector<int>& q) {
        std::string s;
        for (int v : q)
            s += static_cast<char>('1' + v);
        return s;
    };
    GroupoidBuilder b;
    const ObjectIndex o = b.add_object("*");
    for (const auto& q : perms)
        b.add_arrow(name(q), o, o);
    auto index_of = [&](const std::vector<int>& q) {
        return static_cast<ArrowIndex>(std::lower_bound(perms.begin(), perms.end(), q) -
                                       perms.begin());
    };
    std::vector<int> c(n);
    for (std::size_t i = 0; i < perms.size(); ++i) {
        for (std::size_t j = 0; j < perms.size(); ++j) {
            for (int k = 0; k < n; ++k)
                c[k] = perms[i][perms[j][k]];
            b.set_compose(static_cast<ArrowIndex>(i), static_cast<ArrowIndex>(j), index_of(c));
        }
    }
    return std::move(b).build();
}

// Pair groupoid on n objects: one arrow "i<-j" from j to i for every (i, j).
inline FiniteGroupoid pair_groupoid(int n) {
    if (n < 1)
        throw DomainError("pair groupoid needs at least one object");
    GroupoidBuilder b;
    for (int i = 0; i < n; ++i)
        b.add_object(std::to_string(i));
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.add_arrow(std::to_string(i) + "<-" + std::to_string(j), j, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                b.set_compose(idx(i, j), idx(j, k), idx(i, k));
    return std::move(b).build();
}

// Disjoint union; ids of part k are prefixed with "k:".
inline FiniteGroupoid disjoint_union(const std::vector<FiniteGroupoid>& parts) {
    GroupoidBuilder b;
    std::vector<int> obj_offset, arr_offset;
    int objs = 0, arrs = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const std::string prefix = std::to_string(k) + ":";
        obj_offset.push_back(objs);
        arr_offset.push_back(arrs);
        for (const auto& o : parts[k].object_ids())
            b.add_object(prefix + o);
        for (std::size_t a = 0; a < parts[k].num_arrows(); ++a) {
            const ArrowIndex ai = static_cast<ArrowIndex>(a);
            b.add_arrow(prefix + parts[k].arrow_id(ai), objs + parts[k].src(ai),
                        objs + parts[k].tgt(ai));
        }
        objs += static_cast<int>(parts[k].num_objects());
        arrs += static_cast<int>(parts[k].num_arrows());
    }
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& g = parts[k];
        const int off = arr_offset[k];
        for (std::size_t a = 0; a < g.num_arrows(); ++a)
            for (std::size_t c = 0; c < g.num_arrows(); ++c) {
                const ArrowIndex r = g.table(static_cast<int>(a), static_cast<int>(c));
                if (r != kNone)
                    b.set_compose(off + static_cast<int>(a), off + static_cast<int>(c), off + r);
            }
    }
    return std::move(b).build();
}

// Product of a group (one-object groupoid) with a pair groupoid: n objects,
// arrows "(i<-j;h)". Connected with isotropy h.
inline FiniteGroupoid group_times_pair(const FiniteGroupoid& group, int n) {
    if (group.num_objects() != 1)
        throw DomainError("group_times_pair expects a one-object groupoid");
    const int m = static_cast<int>(group.num_arrows());
    GroupoidBuilder b;
    for (int i = 0; i < n; ++i)
        b.add_object(std::to_string(i));
    auto idx = [n, m](int i, int j, int h) { return (i * n + j) * m + h; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < m; ++h)
                b.add_arrow("(" + std::to_string(i) + "<-" + std::to_string(j) + ";" +
                                group.arrow_id(h) + ")",
                            j, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int h = 0; h < m; ++h)
                    for (int l = 0; l < m; ++l)
                        b.set_compose(idx(i, j, h), idx(j, k, l), idx(i, k, group.compose(h, l)));
    return std::move(b).build();
}

} // namespace xmod
