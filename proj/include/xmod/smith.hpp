#pragma once

// Smith normal form over the integers, exact throughout.
//
// smith_normal_form returns U, V with U * A * V = diag(d_1, ..., d_r, 0, ...),
// d_1 | d_2 | ... | d_r, d_i > 0, and optionally U^-1, V^-1.
// invariant_factors is the transform-free path for large sparse matrices.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <set>
#include <vector>

#include "xmod/matrix.hpp"

namespace xmod {

struct SNFOptions {
    bool left = true;      // compute U
    bool right = true;     // compute V
    bool inverses = false; // also compute U^-1 / V^-1 for the requested sides
};

struct SNFResult {
    std::vector<Int> divisors; // nonzero diagonal entries, d_1 | d_2 | ...
    std::size_t rank = 0;
    IntMatrix diagonal;
    IntMatrix U, V, U_inv, V_inv; // empty unless requested
};

namespace detail {

class SnfWorker {
  public:
    SnfWorker(const IntMatrix& a, const SNFOptions& opt)
        : a_(a), m_(a.rows()), n_(a.cols()), opt_(opt) {
        if (opt.left) {
            u_ = IntMatrix::identity(m_);
            if (opt.inverses)
                ui_ = IntMatrix::identity(m_);
        }
        if (opt.right) {
            v_ = IntMatrix::identity(n_);
            if (opt.inverses)
                vi_ = IntMatrix::identity(n_);
        }
    }

    SNFResult run() {
        std::size_t t = 0;
        const std::size_t lim = std::min(m_, n_);
        while (t < lim) {
            std::size_t pi = 0, pj = 0;
            if (!find_min(t, pi, pj))
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t i = t + 1; i < m_; ++i) {
                    if (a_(i, t) == 0)
                        continue;
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
                    add_row(i, t, -q);
                    if (a_(i, t) != 0) {
                        swap_rows(i, t);
                        changed = true;
                    }
                }
                for (std::size_t j = t + 1; j < n_; ++j) {
                    if (a_(t, j) == 0)
                        continue;
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
                    add_col(j, t, -q);
                    if (a_(t, j) != 0) {
                        swap_cols(j, t);
                        changed = true;
                    }
                }
                if (changed)
                    continue;
                // Pivot must divide the remaining block.
                for (std::size_t i = t + 1; i < m_ && !changed; ++i)
                    for (std::size_t j = t + 1; j < n_; ++j)
                        if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                            add_row(t, i, Int(1));
                            changed = true;
                            break;
                        }
            }
            if (a_(t, t) < 0)
                negate_row(t);
            ++t;
        }
        SNFResult r;
        r.rank = t;
        for (std::size_t i = 0; i < t; ++i)
            r.divisors.push_back(a_(i, i));
        r.diagonal = std::move(a_);
        r.U = std::move(u_);
        r.V = std::move(v_);
        r.U_inv = std::move(ui_);
        r.V_inv = std::move(vi_);
        return r;
    }

  private:
    bool find_min(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        for (std::size_t i = t; i < m_; ++i)
            for (std::size_t j = t; j < n_; ++j) {
                const Int& v = a_(i, j);
                if (v == 0)
                    continue;
                if (!found || mpz_cmpabs(v.get_mpz_t(), a_(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                    found = true;
                    if (v == 1 || v == -1)
                        return true;
                }
            }
        return found;
    }

    // row_i += c * row_k
    void add_row(std::size_t i, std::size_t k, const Int& c) {
        for (std::size_t j = 0; j < n_; ++j)
            if (a_(k, j) != 0)
                a_(i, j) += c * a_(k, j);
        if (opt_.left) {
            for (std::size_t j = 0; j < m_; ++j)
                if (u_(k, j) != 0)
                    u_(i, j) += c * u_(k, j);
            if (opt_.inverses)
                for (std::size_t j = 0; j < m_; ++j)
                    if (ui_(j, i) != 0)
                        ui_(j, k) -= c * ui_(j, i);
        }
    }

    // col_j += c * col_k
    void add_col(std::size_t j, std::size_t k, const Int& c) {
        for (std::size_t i = 0; i < m_; ++i)
            if (a_(i, k) != 0)
                a_(i, j) += c * a_(i, k);
        if (opt_.right) {
            for (std::size_t i = 0; i < n_; ++i)
                if (v_(i, k) != 0)
                    v_(i, j) += c * v_(i, k);
            if (opt_.inverses)
                for (std::size_t i = 0; i < n_; ++i)
                    if (vi_(j, i) != 0)
                        vi_(k, i) -= c * vi_(j, i);
        }
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k)
            return;
        for (std::size_t j = 0; j < n_; ++j)
            std::swap(a_(i, j), a_(k, j));
        if (opt_.left) {
            for (std::size_t j = 0; j < m_; ++j)
                std::swap(u_(i, j), u_(k, j));
            if (opt_.inverses)
                for (std::size_t j = 0; j < m_; ++j)
                    std::swap(ui_(j, i), ui_(j, k));
        }
    }

    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k)
            return;
        for (std::size_t i = 0; i < m_; ++i)
            std::swap(a_(i, j), a_(i, k));
        if (opt_.right) {
            for (std::size_t i = 0; i < n_; ++i)
                std::swap(v_(i, j), v_(i, k));
            if (opt_.inverses)
                for (std::size_t i = 0; i < n_; ++i)
                    std::swap(vi_(j, i), vi_(k, i));
        }
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < n_; ++j)
            a_(i, j) = -a_(i, j);
        if (opt_.left) {
            for (std::size_t j = 0; j < m_; ++j)
                u_(i, j) = -u_(i, j);
            if (opt_.inverses)
                for (std::size_t j = 0; j < m_; ++j)
                    ui_(j, i) = -ui_(j, i);
        }
    }

    IntMatrix a_;
    std::size_t m_, n_;
    SNFOptions opt_;
    IntMatrix u_, v_, ui_, vi_;
};

} // namespace detail

inline SNFResult smith_normal_form(const IntMatrix& a, SNFOptions opt = {}) {
    return detail::SnfWorker(a, opt).run();
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw DomainError("determinant of a non-square matrix");
    if (n == 0)
        return Int(1);
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0)
                ++r;
            if (r == n)
                return Int(0);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// Checks U A V = D, the divisibility chain and, when inverses were computed,
// U U^-1 = I and V V^-1 = I (which makes U and V unimodular).
inline bool verify_snf(const IntMatrix& a, const SNFResult& r) {
    for (std::size_t i = 0; i < r.divisors.size(); ++i) {
        if (r.divisors[i] <= 0)
            return false;
        if (i > 0 && !mpz_divisible_p(r.divisors[i].get_mpz_t(), r.divisors[i - 1].get_mpz_t()))
            return false;
    }
    IntMatrix d(a.rows(), a.cols());
    for (std::size_t i = 0; i < r.divisors.size(); ++i)
        d(i, i) = r.divisors[i];
    if (!(r.diagonal == d))
        return false;
    if (r.U.rows() == a.rows() && r.V.rows() == a.cols()) {
        if (!(r.U * a * r.V == d))
            return false;
    }
    if (r.U_inv.rows() == a.rows() && !(r.U * r.U_inv == IntMatrix::identity(a.rows())))
        return false;
    if (r.V_inv.rows() == a.cols() && !(r.V * r.V_inv == IntMatrix::identity(a.cols())))
        return false;
    return true;
}

namespace detail {

// Result of eliminating +-1 pivots from a sparse matrix by unimodular row
// operations. Each pivot removes one row and one column; rows that become
// zero are kept apart from the dense residual.
struct SparseReduction {
    std::size_t unit_pivots = 0;
    IntMatrix residual;
    std::vector<std::size_t> residual_rows;
    std::vector<std::size_t> zero_rows;
};

// Row operations are mirrored on every vector in rhs (each of length rows).
inline SparseReduction sparse_unit_reduce(const SparseIntMatrix& a,
                                          std::vector<std::vector<Int>>* rhs = nullptr) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::map<std::size_t, Int>> rows(m);
    std::vector<std::set<std::size_t>> cols(n);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [j, v] : a.row(i)) {
            rows[i][j] = v;
            cols[j].insert(i);
        }
    std::vector<char> row_alive(m, 1);
    SparseReduction out;

    for (;;) {
        std::size_t best_r = m, best_c = n, best_cost = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < m && best_cost != 0; ++i) {
            if (!row_alive[i] || rows[i].empty())
                continue;
            for (const auto& [j, v] : rows[i]) {
                if (v != 1 && v != -1)
                    continue;
                const std::size_t cost = (rows[i].size() - 1) * (cols[j].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_r = i;
                    best_c = j;
                    if (cost == 0)
                        break;
                }
            }
        }
        if (best_r == m)
            break;
        const Int pivot = rows[best_r][best_c];
        const std::vector<std::size_t> targets(cols[best_c].begin(), cols[best_c].end());
        for (std::size_t r : targets) {
            if (r == best_r)
                continue;
            const Int f = rows[r][best_c] * pivot; // pivot is its own inverse
            for (const auto& [j, v] : rows[best_r]) {
                auto it = rows[r].find(j);
                if (it == rows[r].end()) {
                    rows[r].emplace(j, -f * v);
                    cols[j].insert(r);
                } else {
                    it->second -= f * v;
                    if (it->second == 0) {
                        rows[r].erase(it);
                        cols[j].erase(r);
                    }
                }
            }
            if (rhs)
                for (auto& b : *rhs)
                    b[r] -= f * b[best_r];
        }
        for (const auto& [j, v] : rows[best_r])
            cols[j].erase(best_r);
        rows[best_r].clear();
        row_alive[best_r] = 0;
        ++out.unit_pivots;
    }

    std::vector<std::size_t> live_cols;
    std::vector<std::size_t> col_pos(n, static_cast<std::size_t>(-1));
    for (std::size_t j = 0; j < n; ++j)
        if (!cols[j].empty()) {
            col_pos[j] = live_cols.size();
            live_cols.push_back(j);
        }
    for (std::size_t i = 0; i < m; ++i) {
        if (!row_alive[i])
            continue;
        (rows[i].empty() ? out.zero_rows : out.residual_rows).push_back(i);
    }
    out.residual = IntMatrix(out.residual_rows.size(), live_cols.size());
    for (std::size_t r = 0; r < out.residual_rows.size(); ++r)
        for (const auto& [j, v] : rows[out.residual_rows[r]])
            out.residual(r, col_pos[j]) = v;
    return out;
}

} // namespace detail

// Invariant factors (nonzero SNF diagonal) of a sparse matrix. Unit pivots
// are eliminated sparsely first; the residual block goes through the dense
// reduction.
inline std::vector<Int> invariant_factors(const SparseIntMatrix& a) {
    const detail::SparseReduction red = detail::sparse_unit_reduce(a);
    std::vector<Int> out(red.unit_pivots, Int(1));
    if (red.residual.rows() > 0) {
        SNFResult s = smith_normal_form(red.residual, {false, false, false});
        out.insert(out.end(), s.divisors.begin(), s.divisors.end());
    }
    return out;
}

// For each b in targets: does a x = b have an integer solution?
inline std::vector<bool> in_image(const SparseIntMatrix& a, std::vector<std::vector<Int>> targets) {
    for (const auto& b : targets)
        if (b.size() != a.rows())
            throw DomainError("target length does not match matrix rows");
    const detail::SparseReduction red = detail::sparse_unit_reduce(a, &targets);
    SNFResult s;
    if (red.residual.rows() > 0)
        s = smith_normal_form(red.residual, {true, false, false});
    std::vector<bool> out;
    for (const auto& b : targets) {
        bool ok = std::all_of(red.zero_rows.begin(), red.zero_rows.end(),
                              [&](std::size_t r) { return b[r] == 0; });
        if (ok && red.residual.rows() > 0) {
            std::vector<Int> rest;
            for (std::size_t r : red.residual_rows)
                rest.push_back(b[r]);
            const std::vector<Int> y = s.U.apply(rest);
            for (std::size_t j = 0; j < y.size() && ok; ++j) {
                if (j < s.rank)
                    ok = mpz_divisible_p(y[j].get_mpz_t(), s.divisors[j].get_mpz_t()) != 0;
                else
                    ok = y[j] == 0;
            }
        }
        out.push_back(ok);
    }
    return out;
}

} // namespace xmod
