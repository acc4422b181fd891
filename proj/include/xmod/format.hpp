#pragma once

// Line-oriented text formats for groupoids, crossed modules, cochains and
// integer matrices. See docs/FORMAT.md for the grammar.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "xmod/cochain.hpp"
#include "xmod/crossed_module.hpp"
#include "xmod/generators.hpp"
#include "xmod/matrix.hpp"

namespace xmod {

namespace format_detail {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ss(raw);
        Line line{n, {}};
        std::string tok;
        while (ss >> tok)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            out.push_back(std::move(line));
    }
    return out;
}

class Source {
  public:
    Source(std::string name, std::filesystem::path dir, std::vector<Line> lines)
        : name_(std::move(name)), dir_(std::move(dir)), lines_(std::move(lines)) {}

    [[noreturn]] void fail(const Line& l, const std::string& msg) const {
        throw ParseError(name_ + ":" + std::to_string(l.number), msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(name_, msg); }

    const std::vector<Line>& lines() const { return lines_; }
    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::string name_;
    std::filesystem::path dir_;
    std::vector<Line> lines_;
};

inline int parse_count(const Source& src, const Line& l, const std::string& tok) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 1)
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        src.fail(l, "expected a positive integer, got '" + tok + "'");
    }
}

inline FiniteGroupoid load_groupoid_file(const std::filesystem::path& path);

// Generator tokens, starting at tokens[pos].
inline FiniteGroupoid parse_generator(const Source& src, const Line& l,
                                      const std::vector<std::string>& tok, std::size_t pos) {
    if (pos >= tok.size())
        src.fail(l, "missing groupoid generator");
    const std::string& kind = tok[pos];
    auto arg = [&](std::size_t k) -> const std::string& {
        if (pos + k >= tok.size())
            src.fail(l, "generator '" + kind + "' needs an argument");
        return tok[pos + k];
    };
    auto no_trailing = [&](std::size_t used) {
        if (pos + used != tok.size())
            src.fail(l, "unexpected token '" + tok[pos + used] + "'");
    };
    try {
        if (kind == "cyclic") {
            no_trailing(2);
            return cyclic_group(parse_count(src, l, arg(1)));
        }
        if (kind == "symmetric") {
            no_trailing(2);
            return symmetric_group(parse_count(src, l, arg(1)));
        }
        if (kind == "pair") {
            no_trailing(2);
            return pair_groupoid(parse_count(src, l, arg(1)));
        }
        if (kind == "file") {
            no_trailing(2);
            return load_groupoid_file(src.dir() / arg(1));
        }
    } catch (const DomainError& e) {
        src.fail(l, e.what());
    }
    if (kind == "disjoint-union") {
        std::vector<FiniteGroupoid> parts;
        std::size_t start = pos + 1;
        for (std::size_t k = pos + 1; k <= tok.size(); ++k) {
            if (k == tok.size() || tok[k] == "+") {
                if (k == start)
                    src.fail(l, "empty disjoint-union operand");
                std::vector<std::string> sub(tok.begin() + static_cast<std::ptrdiff_t>(start),
                                             tok.begin() + static_cast<std::ptrdiff_t>(k));
                if (sub.front() == "disjoint-union")
                    src.fail(l, "nested disjoint-union; use 'file PATH' for nesting");
                parts.push_back(parse_generator(src, l, sub, 0));
                start = k + 1;
            }
        }
        if (parts.size() < 2)
            src.fail(l, "disjoint-union needs at least two operands");
        return disjoint_union(parts);
    }
    src.fail(l, "unknown groupoid generator '" + kind + "'");
}

inline bool is_section(const std::string& t) {
    return t == "OBJECTS" || t == "ARROWS" || t == "COMPOSE" || t == "UNITS" ||
           t == "INVERSES" || t == "BASE" || t == "FIBERS" || t == "PHI" || t == "ACTION";
}

inline FiniteGroupoid parse_groupoid(const Source& src) {
    const auto& lines = src.lines();
    if (lines.empty() || lines[0].tokens[0] != "GROUPOID")
        src.fail("expected 'GROUPOID' header");
    if (lines[0].tokens.size() > 1) {
        if (lines.size() > 1)
            src.fail(lines[1], "generator files take no sections");
        return parse_generator(src, lines[0], lines[0].tokens, 1);
    }
    GroupoidBuilder b;
    std::string section;
    auto object = [&](const Line& l, const std::string& id) {
        auto o = b.find_object(id);
        if (!o)
            src.fail(l, "unknown object '" + id + "'");
        return *o;
    };
    auto arrow = [&](const Line& l, const std::string& id) {
        auto a = b.find_arrow(id);
        if (!a)
            src.fail(l, "unknown arrow '" + id + "'");
        return *a;
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const auto& t = l.tokens;
        if (t.size() == 1 && is_section(t[0])) {
            section = t[0];
            continue;
        }
        try {
            if (section == "OBJECTS") {
                for (const auto& id : t)
                    b.add_object(id);
            } else if (section == "ARROWS") {
                if (t.size() != 3)
                    src.fail(l, "arrow line needs: id src tgt");
                b.add_arrow(t[0], object(l, t[1]), object(l, t[2]));
            } else if (section == "COMPOSE") {
                if (t.size() != 3)
                    src.fail(l, "compose line needs: a b a*b");
                b.set_compose(arrow(l, t[0]), arrow(l, t[1]), arrow(l, t[2]));
            } else if (section == "UNITS") {
                if (t.size() != 2)
                    src.fail(l, "unit line needs: object arrow");
                b.set_unit(object(l, t[0]), arrow(l, t[1]));
            } else if (section == "INVERSES") {
                if (t.size() != 2)
                    src.fail(l, "inverse line needs: arrow inverse");
                b.set_inverse(arrow(l, t[0]), arrow(l, t[1]));
            } else {
                src.fail(l, "content outside a groupoid section");
            }
        } catch (const DomainError& e) {
            src.fail(l, e.what());
        }
    }
    return std::move(b).build();
}

inline Source read_source(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), "cannot open file");
    return Source(path.string(), path.parent_path(), tokenize(in));
}

inline FiniteGroupoid load_groupoid_file(const std::filesystem::path& path) {
    return parse_groupoid(read_source(path));
}

inline CrossedModule parse_crossed_module(const Source& src) {
    const auto& lines = src.lines();
    if (lines.empty() || lines[0].tokens[0] != "CROSSED-MODULE")
        src.fail("expected 'CROSSED-MODULE' header");
    const auto& head = lines[0].tokens;
    const std::string kind = head.size() > 1 ? head[1] : "";
    if (!kind.empty() && kind != "identity-cm" && kind != "inertia-cm" && kind != "trivial-cm")
        src.fail(lines[0], "unknown crossed-module shorthand '" + kind + "'");

    std::optional<FiniteGroupoid> base;
    if (head.size() > 2)
        base = parse_generator(src, lines[0], head, 2);

    std::string section;
    GroupoidBuilder nb;
    std::vector<std::array<std::string, 3>> products;
    std::vector<std::pair<const Line*, std::array<std::string, 2>>> phi_lines;
    std::vector<std::pair<const Line*, std::array<std::string, 3>>> action_lines;
    std::vector<const Line*> product_lines;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        const auto& t = l.tokens;
        if (t[0] == "BASE") {
            if (base)
                src.fail(l, "base groupoid given twice");
            base = parse_generator(src, l, t, 1);
            section.clear();
            continue;
        }
        if (t.size() == 1 && is_section(t[0])) {
            if (!kind.empty())
                src.fail(l, "shorthand crossed modules take only a BASE line");
            section = t[0];
            continue;
        }
        if (section == "FIBERS") {
            if (!base)
                src.fail(l, "FIBERS before BASE");
            if (nb.find_object(base->object_id(0)) == std::nullopt)
                for (const auto& o : base->object_ids())
                    nb.add_object(o);
            if (t.size() == 2) {
                auto o = nb.find_object(t[1]);
                if (!o)
                    src.fail(l, "unknown object '" + t[1] + "'");
                try {
                    nb.add_arrow(t[0], *o, *o);
                } catch (const DomainError& e) {
                    src.fail(l, e.what());
                }
            } else if (t.size() == 3) {
                products.push_back({t[0], t[1], t[2]});
                product_lines.push_back(&l);
            } else {
                src.fail(l, "fiber line needs 'x object' or 'x y xy'");
            }
        } else if (section == "PHI") {
            if (t.size() != 2)
                src.fail(l, "phi line needs: x g");
            phi_lines.push_back({&l, {t[0], t[1]}});
        } else if (section == "ACTION") {
            if (t.size() != 3)
                src.fail(l, "action line needs: x g x^g");
            action_lines.push_back({&l, {t[0], t[1], t[2]}});
        } else {
            src.fail(l, "content outside a crossed-module section");
        }
    }
    if (!base)
        src.fail("missing base groupoid (BASE line or generator on the header)");

    try {
        if (kind == "identity-cm")
            return identity_crossed_module(*base);
        if (kind == "inertia-cm")
            return inertia_crossed_module(*base);
        if (kind == "trivial-cm")
            return trivial_crossed_module(*base);
    } catch (const DomainError& e) {
        src.fail(lines[0], e.what());
    }

    if (base->num_objects() > 0 && !nb.find_object(base->object_id(0)))
        for (const auto& o : base->object_ids())
            nb.add_object(o);
    auto n_arrow = [&](const Line& l, const std::string& id) {
        auto a = nb.find_arrow(id);
        if (!a)
            src.fail(l, "unknown element of N '" + id + "'");
        return *a;
    };
    for (std::size_t k = 0; k < products.size(); ++k) {
        const Line& l = *product_lines[k];
        nb.set_compose(n_arrow(l, products[k][0]), n_arrow(l, products[k][1]),
                       n_arrow(l, products[k][2]));
    }
    CrossedModule cm;
    cm.bundle = std::move(nb).build();
    cm.base = std::move(*base);
    auto g_arrow = [&](const Line& l, const std::string& id) {
        auto a = cm.base.find_arrow(id);
        if (!a)
            src.fail(l, "unknown arrow of G '" + id + "'");
        return *a;
    };
    auto n_arrow2 = [&](const Line& l, const std::string& id) {
        auto a = cm.bundle.find_arrow(id);
        if (!a)
            src.fail(l, "unknown element of N '" + id + "'");
        return *a;
    };
    cm.phi.assign(cm.bundle.num_arrows(), kNone);
    for (const auto& [l, t] : phi_lines)
        cm.phi[n_arrow2(*l, t[0])] = g_arrow(*l, t[1]);
    for (std::size_t x = 0; x < cm.phi.size(); ++x)
        if (cm.phi[x] == kNone)
            src.fail("phi is missing a value for '" + cm.bundle.arrow_id(static_cast<int>(x)) +
                     "'");
    cm.action.assign(cm.bundle.num_arrows() * cm.base.num_arrows(), kNone);
    for (const auto& [l, t] : action_lines)
        cm.action[static_cast<std::size_t>(n_arrow2(*l, t[0])) * cm.base.num_arrows() +
                  g_arrow(*l, t[1])] = n_arrow2(*l, t[2]);
    return cm;
}

} // namespace format_detail

using Document = std::variant<FiniteGroupoid, CrossedModule>;

inline FiniteGroupoid parse_groupoid(std::istream& in, const std::string& name = "<input>",
                                     const std::filesystem::path& dir = ".") {
    return format_detail::parse_groupoid(
        format_detail::Source(name, dir, format_detail::tokenize(in)));
}

inline CrossedModule parse_crossed_module(std::istream& in, const std::string& name = "<input>",
                                          const std::filesystem::path& dir = ".") {
    return format_detail::parse_crossed_module(
        format_detail::Source(name, dir, format_detail::tokenize(in)));
}

// Reads a groupoid or crossed-module file, dispatching on the header.
inline Document load_document(const std::filesystem::path& path) {
    const auto src = format_detail::read_source(path);
    if (src.lines().empty())
        src.fail("empty file");
    const std::string& head = src.lines()[0].tokens[0];
    if (head == "GROUPOID")
        return format_detail::parse_groupoid(src);
    if (head == "CROSSED-MODULE")
        return format_detail::parse_crossed_module(src);
    src.fail(src.lines()[0], "unknown header '" + head + "'");
}

// Explicit (table) form of a groupoid; parse_groupoid reads it back.
inline void write_groupoid(std::ostream& os, const FiniteGroupoid& g) {
    os << "GROUPOID\nOBJECTS\n";
    for (const auto& o : g.object_ids())
        os << o << "\n";
    os << "ARROWS\n";
    for (std::size_t a = 0; a < g.num_arrows(); ++a) {
        const ArrowIndex ai = static_cast<ArrowIndex>(a);
        os << g.arrow_id(ai) << " " << g.object_id(g.src(ai)) << " " << g.object_id(g.tgt(ai))
           << "\n";
    }
    os << "COMPOSE\n";
    for (std::size_t a = 0; a < g.num_arrows(); ++a)
        for (std::size_t b = 0; b < g.num_arrows(); ++b) {
            const ArrowIndex c = g.table(static_cast<int>(a), static_cast<int>(b));
            if (c != kNone)
                os << g.arrow_id(static_cast<int>(a)) << " " << g.arrow_id(static_cast<int>(b))
                   << " " << g.arrow_id(c) << "\n";
        }
}

// Explicit form of a crossed module; the base is written to base_ref.
inline void write_crossed_module(std::ostream& os, const CrossedModule& cm,
                                 const std::string& base_ref) {
    os << "CROSSED-MODULE\nBASE file " << base_ref << "\nFIBERS\n";
    const auto& n = cm.bundle;
    for (std::size_t x = 0; x < n.num_arrows(); ++x)
        os << n.arrow_id(static_cast<int>(x)) << " " << n.object_id(n.src(static_cast<int>(x)))
           << "\n";
    for (std::size_t x = 0; x < n.num_arrows(); ++x)
        for (std::size_t y = 0; y < n.num_arrows(); ++y) {
            const ArrowIndex c = n.table(static_cast<int>(x), static_cast<int>(y));
            if (c != kNone)
                os << n.arrow_id(static_cast<int>(x)) << " " << n.arrow_id(static_cast<int>(y))
                   << " " << n.arrow_id(c) << "\n";
        }
    os << "PHI\n";
    for (std::size_t x = 0; x < n.num_arrows(); ++x)
        os << n.arrow_id(static_cast<int>(x)) << " " << cm.base.arrow_id(cm.phi[x]) << "\n";
    os << "ACTION\n";
    for (std::size_t x = 0; x < n.num_arrows(); ++x)
        for (std::size_t g = 0; g < cm.base.num_arrows(); ++g) {
            const ArrowIndex y = cm.raw_act(static_cast<int>(x), static_cast<int>(g));
            if (y != kNone)
                os << n.arrow_id(static_cast<int>(x)) << " "
                   << cm.base.arrow_id(static_cast<int>(g)) << " " << n.arrow_id(y) << "\n";
        }
}

// COCHAIN p, then "value id_1 .. id_p" lines (an object id at p = 0).
// Tuples not listed are zero.
inline IntCochain parse_cochain(std::istream& in, const Nerve& nerve,
                                const std::string& name = "<cochain>") {
    const auto lines = format_detail::tokenize(in);
    format_detail::Source src(name, ".", lines);
    if (lines.empty() || lines[0].tokens[0] != "COCHAIN" || lines[0].tokens.size() != 2)
        src.fail("expected 'COCHAIN <p>' header");
    std::size_t p = 0;
    try {
        p = std::stoul(lines[0].tokens[1]);
    } catch (const std::exception&) {
        src.fail(lines[0], "bad level");
    }
    if (p > nerve.pmax())
        src.fail(lines[0], "level above the materialized nerve");
    const FiniteGroupoid& g = nerve.groupoid();
    IntCochain c = IntCochain::zero(p, nerve.level(p).size());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const std::size_t want = p == 0 ? 2 : p + 1;
        if (l.tokens.size() != want)
            src.fail(l, "expected a value and " + std::to_string(want - 1) + " ids");
        Int v;
        try {
            v = parse_int(l.tokens[0]);
        } catch (const ParseError& e) {
            src.fail(l, e.what());
        }
        NerveTuple t;
        if (p == 0) {
            auto o = g.find_object(l.tokens[1]);
            if (!o)
                src.fail(l, "unknown object '" + l.tokens[1] + "'");
            t = NerveTuple::of_object(*o);
        } else {
            for (std::size_t k = 1; k < l.tokens.size(); ++k) {
                auto a = g.find_arrow(l.tokens[k]);
                if (!a)
                    src.fail(l, "unknown arrow '" + l.tokens[k] + "'");
                t.arrows.push_back(*a);
            }
        }
        const auto idx = nerve.level(p).index_of(t);
        if (idx < 0)
            src.fail(l, "tuple is not composable");
        c.values[static_cast<std::size_t>(idx)] += v;
    }
    return c;
}

// MATRIX rows cols, then one line of integers per row.
inline IntMatrix parse_matrix(std::istream& in, const std::string& name = "<matrix>") {
    const auto lines = format_detail::tokenize(in);
    format_detail::Source src(name, ".", lines);
    if (lines.empty() || lines[0].tokens.size() != 3 || lines[0].tokens[0] != "MATRIX")
        src.fail("expected 'MATRIX <rows> <cols>' header");
    std::size_t rows = 0, cols = 0;
    try {
        rows = std::stoul(lines[0].tokens[1]);
        cols = std::stoul(lines[0].tokens[2]);
    } catch (const std::exception&) {
        src.fail(lines[0], "bad dimensions");
    }
    if (lines.size() != rows + 1)
        src.fail("expected " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& l = lines[i + 1];
        if (l.tokens.size() != cols)
            src.fail(l, "expected " + std::to_string(cols) + " entries");
        for (std::size_t j = 0; j < cols; ++j) {
            try {
                m(i, j) = parse_int(l.tokens[j]);
            } catch (const ParseError& e) {
                src.fail(l, e.what());
            }
        }
    }
    return m;
}

} // namespace xmod
