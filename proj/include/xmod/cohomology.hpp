#pragma once

// Integral cohomology of groupoid nerves. For a finite (discrete) groupoid
// every singular simplex into a nerve level is constant, so the cochain
// complex is C(G_0) -> C(G_1) -> ... with the simplicial coboundary.

#include <cstddef>
#include <string>
#include <vector>

#include "xmod/cochain.hpp"
#include "xmod/smith.hpp"
#include "xmod/transgression.hpp"

namespace xmod {

struct CohomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion; // invariant factors > 1, each dividing the next

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    std::string str() const {
        if (is_trivial())
            return "0";
        std::string s;
        if (free_rank == 1)
            s = "Z";
        else if (free_rank > 1)
            s = "Z^" + std::to_string(free_rank);
        for (const auto& d : torsion) {
            if (!s.empty())
                s += " ⊕ ";
            s += "Z/" + d.get_str();
        }
        return s;
    }

    friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

namespace detail {

inline CohomologyGroup group_from(std::size_t dim, const std::vector<Int>& incoming,
                                  std::size_t outgoing_rank) {
    CohomologyGroup h;
    h.free_rank = dim - incoming.size() - outgoing_rank;
    for (const auto& d : incoming)
        if (d > 1)
            h.torsion.push_back(d);
    return h;
}

inline IntMatrix sparse_times_dense(const SparseIntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& [k, v] : a.row(i))
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0)
                    c(i, j) += v * b(k, j);
    return c;
}

} // namespace detail

// H^p from a nerve materialized up to level p + 1.
inline CohomologyGroup cohomology(const Nerve& nerve, std::size_t p) {
    const std::size_t dim = nerve.level(p).size();
    std::vector<Int> incoming;
    if (p > 0)
        incoming = invariant_factors(coboundary_matrix(nerve, p - 1));
    const std::size_t out_rank = invariant_factors(coboundary_matrix(nerve, p)).size();
    return detail::group_from(dim, incoming, out_rank);
}

inline CohomologyGroup cohomology(const FiniteGroupoid& g, std::size_t p,
                                  std::size_t max_cells = kDefaultMaxCells) {
    Nerve nerve(g, p + 1, max_cells);
    return cohomology(nerve, p);
}

// H^0 .. H^pmax, reusing each coboundary's invariant factors.
inline std::vector<CohomologyGroup> cohomology_table(const FiniteGroupoid& g, std::size_t pmax,
                                                     std::size_t max_cells = kDefaultMaxCells) {
    Nerve nerve(g, pmax + 1, max_cells);
    std::vector<std::vector<Int>> factors;
    for (std::size_t p = 0; p <= pmax; ++p)
        factors.push_back(invariant_factors(coboundary_matrix(nerve, p)));
    std::vector<CohomologyGroup> out;
    for (std::size_t p = 0; p <= pmax; ++p)
        out.push_back(detail::group_from(nerve.level(p).size(),
                                         p > 0 ? factors[p - 1] : std::vector<Int>{},
                                         factors[p].size()));
    return out;
}

struct ClassCoordinates {
    std::vector<Int> free;    // coefficients on the free generators
    std::vector<Int> torsion; // residues modulo each torsion divisor

    bool is_zero() const {
        for (const auto& v : free)
            if (v != 0)
                return false;
        for (const auto& v : torsion)
            if (v != 0)
                return false;
        return true;
    }

    std::string str() const {
        std::string s = "free[";
        for (std::size_t i = 0; i < free.size(); ++i)
            s += (i ? " " : "") + free[i].get_str();
        s += "] torsion[";
        for (std::size_t i = 0; i < torsion.size(); ++i)
            s += (i ? " " : "") + torsion[i].get_str();
        return s + "]";
    }
};

// SNF-derived basis of H^q. With A = d_{q-1} and U A V = diag(d_j):
// the torsion generators are U^-1 e_j for d_j > 1, and the free generators
// are U^-1 (0, w) for w running over a basis of the kernel of the tail of
// d_q U^-1 (from a second SNF).
class CohomologyBasis {
  public:
    CohomologyBasis(const Nerve& nerve, std::size_t q) : q_(q) {
        const std::size_t m = nerve.level(q).size();
        IntMatrix a = q > 0 ? coboundary_matrix(nerve, q - 1).to_dense() : IntMatrix(m, 0);
        outgoing_ = coboundary_matrix(nerve, q);
        SNFResult sa = smith_normal_form(a, {true, false, true});
        rank_in_ = sa.rank;
        divisors_ = sa.divisors;
        u_ = std::move(sa.U);
        u_inv_ = std::move(sa.U_inv);

        const IntMatrix bu = detail::sparse_times_dense(outgoing_, u_inv_);
        IntMatrix tail(bu.rows(), m - rank_in_);
        for (std::size_t i = 0; i < bu.rows(); ++i)
            for (std::size_t j = rank_in_; j < m; ++j)
                tail(i, j - rank_in_) = bu(i, j);
        SNFResult sb = smith_normal_form(tail, {false, true, true});
        rank_tail_ = sb.rank;
        v_tail_ = std::move(sb.V);
        v_tail_inv_ = std::move(sb.V_inv);

        group_.free_rank = (m - rank_in_) - rank_tail_;
        for (std::size_t j = 0; j < rank_in_; ++j)
            if (divisors_[j] > 1) {
                group_.torsion.push_back(divisors_[j]);
                torsion_slots_.push_back(j);
            }
        for (std::size_t j : torsion_slots_) {
            std::vector<Int> e(m);
            e[j] = 1;
            generators_.push_back({q, u_inv_.apply(e)});
        }
        for (std::size_t j = rank_tail_; j < m - rank_in_; ++j) {
            std::vector<Int> y(m);
            for (std::size_t i = 0; i < m - rank_in_; ++i)
                y[rank_in_ + i] = v_tail_(i, j);
            generators_.push_back({q, u_inv_.apply(y)});
        }
        // generators_: torsion generators first, then free generators.
        std::rotate(generators_.begin(), generators_.begin() + torsion_slots_.size(),
                    generators_.end());
    }

    std::size_t degree() const { return q_; }
    const CohomologyGroup& group() const { return group_; }

    // Free generators first, then torsion generators.
    const std::vector<IntCochain>& generators() const { return generators_; }

    bool is_cocycle(const IntCochain& z) const {
        check(z);
        for (const auto& v : outgoing_.apply(z.values))
            if (v != 0)
                return false;
        return true;
    }

    bool is_coboundary(const IntCochain& z) const {
        check(z);
        const std::vector<Int> y = u_.apply(z.values);
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (j < rank_in_) {
                if (!mpz_divisible_p(y[j].get_mpz_t(), divisors_[j].get_mpz_t()))
                    return false;
            } else if (y[j] != 0) {
                return false;
            }
        }
        return true;
    }

    ClassCoordinates coordinates(const IntCochain& z) const {
        if (!is_cocycle(z))
            throw NotACocycle("cochain of level " + std::to_string(q_) + " is not a cocycle");
        const std::vector<Int> y = u_.apply(z.values);
        ClassCoordinates c;
        std::vector<Int> w(y.begin() + static_cast<std::ptrdiff_t>(rank_in_), y.end());
        const std::vector<Int> cw = v_tail_inv_.apply(w);
        for (std::size_t j = 0; j < rank_tail_; ++j)
            if (cw[j] != 0)
                throw Error("internal: cocycle has a component outside the kernel lattice");
        c.free.assign(cw.begin() + static_cast<std::ptrdiff_t>(rank_tail_), cw.end());
        for (std::size_t j : torsion_slots_)
            c.torsion.push_back(floor_mod(y[j], divisors_[j]));
        return c;
    }

  private:
    void check(const IntCochain& z) const {
        if (z.level != q_ || z.values.size() != u_.rows())
            throw DomainError("cochain does not live on level " + std::to_string(q_));
    }

    std::size_t q_;
    SparseIntMatrix outgoing_;
    std::size_t rank_in_ = 0;
    std::vector<Int> divisors_;
    IntMatrix u_, u_inv_;
    std::size_t rank_tail_ = 0;
    IntMatrix v_tail_, v_tail_inv_;
    CohomologyGroup group_;
    std::vector<std::size_t> torsion_slots_;
    std::vector<IntCochain> generators_;
};

// Coboundary test for many cochains of level q at once, without building a
// full basis; scales to larger levels than CohomologyBasis.
inline std::vector<bool> are_coboundaries(const Nerve& nerve, std::size_t q,
                                          const std::vector<IntCochain>& zs) {
    for (const auto& z : zs)
        if (z.level != q || z.values.size() != nerve.level(q).size())
            throw DomainError("cochain does not live on level " + std::to_string(q));
    if (q == 0) {
        std::vector<bool> out;
        for (const auto& z : zs)
            out.push_back(z.is_zero());
        return out;
    }
    std::vector<std::vector<Int>> targets;
    for (const auto& z : zs)
        targets.push_back(z.values);
    return in_image(coboundary_matrix(nerve, q - 1), std::move(targets));
}

struct TransgressionResult {
    IntCochain image;
    bool image_is_cocycle = false;
    bool image_is_coboundary = false;
    CohomologyGroup target_group;
    ClassCoordinates coordinates;
};

// Transgresses a p-cocycle on G to a (p-1)-cocycle on N x| G and expresses
// its class in the SNF basis of H^{p-1}. ctx must be built with pmax >= p + 1.
inline TransgressionResult transgress_class(const TransgressionContext& ctx, std::size_t p,
                                            const IntCochain& cocycle,
                                            Convention conv = Convention::tilde) {
    if (cocycle.level != p)
        throw DomainError("cochain level " + std::to_string(cocycle.level) +
                          " does not match p=" + std::to_string(p));
    if (!coboundary(ctx.base_nerve(), cocycle).is_zero())
        throw NotACocycle("input cochain on G_" + std::to_string(p) + " is not a cocycle");
    TransgressionResult r;
    r.image = T1_cochain(ctx, cocycle, conv);
    const CohomologyBasis basis(ctx.product_nerve(), p - 1);
    r.image_is_cocycle = basis.is_cocycle(r.image);
    r.target_group = basis.group();
    if (r.image_is_cocycle) {
        r.image_is_coboundary = basis.is_coboundary(r.image);
        r.coordinates = basis.coordinates(r.image);
    }
    return r;
}

} // namespace xmod
