#pragma once

// Independent reference for H^*(Z/n; Z). Shares no code with the library:
// the bar complex is built from modular arithmetic on base-n digit strings,
// and groups come from a naive int64 diagonalization whose diagonal is
// normalized through prime-power decomposition.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<std::int64_t>>;

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// Bar coboundary C^p(Z/n) -> C^{p+1}(Z/n); tuple index = base-n number with
// g_1 as the most significant digit.
//   (dc)(g_1..g_{p+1}) = c(g_2..) + sum_i (-1)^i c(.., g_i + g_{i+1}, ..)
//                        + (-1)^{p+1} c(g_1..g_p)
inline Dense bar_coboundary(int n, int p) {
    const std::int64_t rows = ipow(n, p + 1), cols = ipow(n, p);
    Dense d(static_cast<std::size_t>(rows), std::vector<std::int64_t>(cols, 0));
    for (std::int64_t r = 0; r < rows; ++r) {
        std::vector<int> g(p + 1);
        std::int64_t v = r;
        for (int k = p; k >= 0; --k) {
            g[k] = static_cast<int>(v % n);
            v /= n;
        }
        auto index = [&](const std::vector<int>& t) {
            std::int64_t idx = 0;
            for (int x : t)
                idx = idx * n + x;
            return idx;
        };
        for (int i = 0; i <= p + 1; ++i) {
            std::vector<int> t;
            if (i == 0) {
                t.assign(g.begin() + 1, g.end());
            } else if (i == p + 1) {
                t.assign(g.begin(), g.end() - 1);
            } else {
                for (int k = 0; k <= p; ++k) {
                    if (k == i - 1)
                        t.push_back((g[k] + g[k + 1]) % n);
                    else if (k != i)
                        t.push_back(g[k]);
                }
            }
            d[r][index(t)] += (i % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

inline std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("oracle reduction overflowed int64");
    return static_cast<std::int64_t>(v);
}

// Diagonalizes by row and column operations: repeatedly move the smallest
// nonzero entry of the remaining block to the pivot and reduce its row and
// column. Returns the nonzero diagonal entries (absolute values, unsorted,
// not yet in divisibility form).
inline std::vector<std::int64_t> naive_diagonal(Dense a) {
    const std::size_t m = a.size(), k = m ? a[0].size() : 0;
    std::vector<std::int64_t> diag;
    std::size_t t = 0;
    while (t < m && t < k) {
        std::size_t pr = m, pc = k;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < k; ++j)
                if (a[i][j] != 0 && (pr == m || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == m)
            break;
        std::swap(a[t], a[pr]);
        for (auto& row : a)
            std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0)
                    continue;
                const std::int64_t q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < k; ++j)
                    a[i][j] = checked(static_cast<__int128>(a[i][j]) - static_cast<__int128>(q) * a[t][j]);
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                if (a[t][j] == 0)
                    continue;
                const std::int64_t q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i)
                    a[i][j] = checked(static_cast<__int128>(a[i][j]) - static_cast<__int128>(q) * a[i][t]);
                if (a[t][j] != 0) {
                    for (auto& row : a)
                        std::swap(row[t], row[j]);
                    clean = false;
                }
            }
        }
        diag.push_back(std::llabs(a[t][t]));
        ++t;
    }
    return diag;
}

// Any diagonal presents the same group as its invariant factors; split each
// entry into prime powers and regroup them into a divisibility chain.
inline std::vector<std::int64_t> invariant_factors_of_diagonal(const std::vector<std::int64_t>& d) {
    std::map<std::int64_t, std::vector<std::int64_t>> powers; // prime -> prime powers
    for (std::int64_t v : d) {
        for (std::int64_t q = 2; q * q <= v; ++q) {
            std::int64_t pw = 1;
            while (v % q == 0) {
                v /= q;
                pw *= q;
            }
            if (pw > 1)
                powers[q].push_back(pw);
        }
        if (v > 1)
            powers[v].push_back(v);
    }
    std::size_t len = 0;
    for (auto& [q, list] : powers) {
        std::sort(list.begin(), list.end(), std::greater<>());
        len = std::max(len, list.size());
    }
    // The largest factor takes the largest power of every prime, and so on.
    std::vector<std::int64_t> out(len, 1);
    for (const auto& [q, list] : powers)
        for (std::size_t i = 0; i < list.size(); ++i)
            out[len - 1 - i] *= list[i];
    return out;
}

struct Group {
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;
    friend bool operator==(const Group&, const Group&) = default;
};

inline std::string describe(const Group& g) {
    std::string s = "Z^" + std::to_string(g.free_rank);
    for (auto t : g.torsion)
        s += " + Z/" + std::to_string(t);
    return s;
}

// H^p = ker d_p / im d_{p-1}: free rank from the ranks, torsion from the
// cokernel of d_{p-1}.
inline Group cohomology_of_cyclic(int n, int p) {
    const std::size_t dim = static_cast<std::size_t>(ipow(n, p));
    const auto out_diag = naive_diagonal(bar_coboundary(n, p));
    std::vector<std::int64_t> in_diag;
    if (p > 0)
        in_diag = naive_diagonal(bar_coboundary(n, p - 1));
    Group g;
    g.free_rank = dim - out_diag.size() - in_diag.size();
    g.torsion = invariant_factors_of_diagonal(in_diag);
    return g;
}

} // namespace oracle
