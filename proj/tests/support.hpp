#pragma once

// Shared helpers for the test binaries.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "xmod/xmod.hpp"

namespace testing_support {

using namespace xmod;

inline std::filesystem::path data_path(const std::string& rel) {
    return std::filesystem::path(XMOD_DATA_DIR) / rel;
}

inline CrossedModule load_cm(const std::string& rel) {
    return std::get<CrossedModule>(load_document(data_path(rel)));
}

inline FiniteGroupoid load_gpd(const std::string& rel) {
    return std::get<FiniteGroupoid>(load_document(data_path(rel)));
}

// The bundled crossed-module fleet.
inline const std::vector<std::string>& fleet_files() {
    static const std::vector<std::string> files = {
        "crossed/z2-identity.xm",      "crossed/z3-identity.xm",      "crossed/z4-identity.xm",
        "crossed/z5-identity.xm",      "crossed/s3-identity.xm",      "crossed/z2-pair2-inertia.xm",
        "crossed/z2-pair2-trivial.xm", "crossed/z4-to-z2.xm",         "crossed/z3-inversion.xm"};
    return files;
}

// Copy of g whose composition table entries are passed through edit(a, b, c).
inline FiniteGroupoid rebuild(const FiniteGroupoid& g,
                              const std::function<ArrowIndex(ArrowIndex, ArrowIndex, ArrowIndex)>&
                                  edit) {
    GroupoidBuilder b;
    for (const auto& o : g.object_ids())
        b.add_object(o);
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        b.add_arrow(g.arrow_id(static_cast<int>(a)), g.src(static_cast<int>(a)),
                    g.tgt(static_cast<int>(a)));
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        for (std::size_t c = 0; c < g.num_arrows(); ++c) {
            const ArrowIndex r = g.table(static_cast<int>(a), static_cast<int>(c));
            if (r == kNone)
                continue;
            const ArrowIndex e = edit(static_cast<int>(a), static_cast<int>(c), r);
            if (e != kNone)
                b.set_compose(static_cast<int>(a), static_cast<int>(c), e);
        }
    return std::move(b).build();
}

// Isomorphic copy with object and arrow indices shuffled and ids renamed.
inline FiniteGroupoid relabel(const FiniteGroupoid& g, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<int> op(g.num_objects()), ap(g.num_arrows());
    std::iota(op.begin(), op.end(), 0);
    std::iota(ap.begin(), ap.end(), 0);
    std::shuffle(op.begin(), op.end(), rng);
    std::shuffle(ap.begin(), ap.end(), rng);
    std::vector<int> oinv(op.size()), ainv(ap.size());
    for (std::size_t i = 0; i < op.size(); ++i)
        oinv[op[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < ap.size(); ++i)
        ainv[ap[i]] = static_cast<int>(i);
    GroupoidBuilder b;
    for (std::size_t i = 0; i < op.size(); ++i)
        b.add_object("o" + std::to_string(i) + "_" + g.object_id(op[i]));
    for (std::size_t i = 0; i < ap.size(); ++i)
        b.add_arrow("a" + std::to_string(i) + "_" + g.arrow_id(ap[i]), oinv[g.src(ap[i])],
                    oinv[g.tgt(ap[i])]);
    for (std::size_t i = 0; i < ap.size(); ++i)
        for (std::size_t j = 0; j < ap.size(); ++j) {
            const ArrowIndex r = g.table(ap[i], ap[j]);
            if (r != kNone)
                b.set_compose(static_cast<int>(i), static_cast<int>(j), ainv[r]);
        }
    return std::move(b).build();
}

inline std::vector<std::string> dense_strings(const IntMatrix& m) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::string s;
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += (j ? " " : "") + m(i, j).get_str();
        rows.push_back(s);
    }
    return rows;
}

} // namespace testing_support
