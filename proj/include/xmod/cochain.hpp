#pragma once

// Integer cochains on nerve levels and the simplicial coboundary
//   (d c)(t) = sum_{j=0}^{p+1} (-1)^j c(face_j t),   t in level p+1,
// the dual of the alternating face sum.

#include <cstddef>
#include <string>
#include <vector>

#include "xmod/matrix.hpp"
#include "xmod/nerve.hpp"

namespace xmod {

// Values indexed by the canonical ordering of a nerve level.
struct IntCochain {
    std::size_t level = 0;
    std::vector<Int> values;

    static IntCochain zero(std::size_t level, std::size_t size) {
        return {level, std::vector<Int>(size)};
    }
    static IntCochain basis(std::size_t level, std::size_t size, std::size_t index) {
        IntCochain c = zero(level, size);
        c.values.at(index) = 1;
        return c;
    }

    bool is_zero() const {
        for (const auto& v : values)
            if (v != 0)
                return false;
        return true;
    }

    friend bool operator==(const IntCochain&, const IntCochain&) = default;
};

// Matrix of d: C(level p) -> C(level p+1); rows index level p+1.
inline SparseIntMatrix coboundary_matrix(const Nerve& nerve, std::size_t p) {
    const FiniteGroupoid& g = nerve.groupoid();
    const NerveLevel& hi = nerve.level(p + 1);
    const NerveLevel& lo = nerve.level(p);
    SparseIntMatrix d(hi.size(), lo.size());
    for (std::size_t r = 0; r < hi.size(); ++r) {
        const NerveTuple t = hi.tuple(r);
        for (std::size_t j = 0; j <= p + 1; ++j)
            d.add(r, lo.require_index(face(g, t, j)), Int(j % 2 == 0 ? 1 : -1));
    }
    d.normalize();
    return d;
}

inline IntCochain apply(const SparseIntMatrix& m, const IntCochain& c, std::size_t out_level) {
    return {out_level, m.apply(c.values)};
}

inline IntCochain coboundary(const Nerve& nerve, const IntCochain& c) {
    if (c.values.size() != nerve.level(c.level).size())
        throw DomainError("cochain length does not match nerve level " + std::to_string(c.level));
    return apply(coboundary_matrix(nerve, c.level), c, c.level + 1);
}

} // namespace xmod
