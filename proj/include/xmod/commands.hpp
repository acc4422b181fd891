#pragma once

// The CLI commands. Each writes its report to `out`, diagnostics to `err`,
// and returns the process exit code:
//   0 success, 1 mathematical failure, 2 input error.

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "xmod/cohomology.hpp"
#include "xmod/format.hpp"
#include "xmod/smith.hpp"
#include "xmod/verify.hpp"

namespace xmod {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitInput = 2;

template <class Fn>
int run_command(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceLimit& e) {
        err << "refused: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotACocycle& e) {
        err << "not a cocycle: " << e.what() << "\n";
        return kExitMath;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "failure: " << e.what() << "\n";
        return kExitMath;
    }
}

namespace detail {

inline std::string count(std::size_t n, const std::string& noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

inline std::string describe(const FiniteGroupoid& g) {
    return count(g.num_objects(), "object") + ", " + count(g.num_arrows(), "arrow");
}

inline void print_violations(std::ostream& os, const ValidationReport& r) {
    for (const auto& v : r.violations()) {
        os << "  violated: " << v.property << "\n    witness: " << v.witness;
        if (v.count > 1)
            os << " (" << v.count << " failing instances)";
        os << "\n";
    }
}

inline void print_cochain_values(std::ostream& os, const std::vector<std::string>& labels,
                                 const IntCochain& c) {
    bool any = false;
    for (std::size_t i = 0; i < c.values.size(); ++i)
        if (c.values[i] != 0) {
            os << "  " << c.values[i].get_str() << " " << labels[i] << "\n";
            any = true;
        }
    if (!any)
        os << "  (zero)\n";
}

} // namespace detail

inline int cmd_validate(const std::filesystem::path& path, std::ostream& out,
                        std::ostream& err) {
    return run_command(err, [&] {
        const Document doc = load_document(path);
        ValidationReport r;
        std::string what;
        if (const auto* g = std::get_if<FiniteGroupoid>(&doc)) {
            r = validate_groupoid(*g);
            what = "groupoid (" + detail::describe(*g) + ")";
        } else {
            const auto& cm = std::get<CrossedModule>(doc);
            r = validate_crossed_module(cm);
            what = "crossed module (G: " + detail::describe(cm.base) +
                   "; N: " + detail::count(cm.bundle.num_arrows(), "element") + ")";
        }
        if (r.ok()) {
            out << "valid " << what << "\n";
            return kExitOk;
        }
        out << "INVALID " << what << "\n";
        detail::print_violations(out, r);
        return kExitMath;
    });
}

enum class CohomologyOf { base, crossed_product };

inline int cmd_cohomology(const std::filesystem::path& path, std::size_t pmax,
                          std::size_t max_cells, CohomologyOf of, std::ostream& out,
                          std::ostream& err) {
    return run_command(err, [&] {
        const Document doc = load_document(path);
        auto run = [&](const FiniteGroupoid& g) {
            const auto table = cohomology_table(g, pmax, max_cells);
            for (std::size_t p = 0; p < table.size(); ++p)
                out << "H^" << p << " = " << table[p].str() << "\n";
            return kExitOk;
        };
        if (const auto* g = std::get_if<FiniteGroupoid>(&doc)) {
            if (of == CohomologyOf::crossed_product)
                throw ParseError(path.string(), "--of crossed-product needs a crossed-module file");
            const ValidationReport r = validate_groupoid(*g);
            if (!r.ok()) {
                err << "invalid groupoid\n";
                detail::print_violations(err, r);
                return kExitMath;
            }
            return run(*g);
        }
        const auto& cm = std::get<CrossedModule>(doc);
        const ValidationReport r = validate_crossed_module(cm);
        if (!r.ok()) {
            err << "invalid crossed module\n";
            detail::print_violations(err, r);
            return kExitMath;
        }
        if (of == CohomologyOf::base)
            return run(cm.base);
        const CrossedProduct cp = crossed_product(cm);
        return run(cp.groupoid());
    });
}

struct CocycleSource {
    enum class Kind { file, generator, zero } kind = Kind::zero;
    std::filesystem::path file;
    std::size_t generator = 0;
};

inline int cmd_transgress(const std::filesystem::path& path, std::size_t p,
                          const CocycleSource& source, Convention conv, std::size_t max_cells,
                          std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        if (p < 1)
            throw DomainError("transgression needs p >= 1");
        const Document doc = load_document(path);
        const auto* cmp = std::get_if<CrossedModule>(&doc);
        if (!cmp)
            throw ParseError(path.string(), "transgress needs a crossed-module file");
        const CrossedModule& cm = *cmp;
        const ValidationReport r = validate_crossed_module(cm);
        if (!r.ok()) {
            err << "invalid crossed module\n";
            detail::print_violations(err, r);
            return kExitMath;
        }
        const TransgressionContext ctx(cm, p + 1, max_cells);
        const NerveLevel& base_level = ctx.base_nerve().level(p);

        IntCochain cocycle = IntCochain::zero(p, base_level.size());
        std::string label = "zero cochain";
        if (source.kind == CocycleSource::Kind::file) {
            std::ifstream in(source.file);
            if (!in)
                throw ParseError(source.file.string(), "cannot open file");
            cocycle = parse_cochain(in, ctx.base_nerve(), source.file.string());
            if (cocycle.level != p)
                throw ParseError(source.file.string(),
                                 "cochain level " + std::to_string(cocycle.level) +
                                     " does not match p=" + std::to_string(p));
            label = "file " + source.file.filename().string();
        } else if (source.kind == CocycleSource::Kind::generator) {
            const CohomologyBasis basis(ctx.base_nerve(), p);
            const auto& gens = basis.generators();
            if (source.generator >= gens.size())
                throw DomainError("H^" + std::to_string(p) + "(G) = " + basis.group().str() +
                                  " has " + std::to_string(gens.size()) + " generators");
            cocycle = gens[source.generator];
            label = "generator " + std::to_string(source.generator) + " of H^" +
                    std::to_string(p) + "(G) = " + basis.group().str();
        }

        const TransgressionResult res = transgress_class(ctx, p, cocycle, conv);

        std::vector<std::string> in_labels, out_labels;
        for (std::size_t i = 0; i < base_level.size(); ++i)
            in_labels.push_back(format_tuple(cm.base, base_level.tuple(i)));
        const NerveLevel& cp_level = ctx.product_nerve().level(p - 1);
        for (std::size_t i = 0; i < cp_level.size(); ++i)
            out_labels.push_back(
                format_flat(cm, flatten(cm, ctx.product(), cp_level.tuple(i))));

        out << "transgression, convention " << convention_name(conv) << ", p = " << p << "\n";
        out << "input: " << label << "\n";
        out << "input cocycle on G_" << p << ":\n";
        detail::print_cochain_values(out, in_labels, cocycle);
        out << "image on (N x| G)_" << p - 1 << ":\n";
        detail::print_cochain_values(out, out_labels, res.image);
        out << "image is a cocycle: " << (res.image_is_cocycle ? "yes" : "no") << "\n";
        if (res.image_is_cocycle) {
            out << "image is a coboundary: " << (res.image_is_coboundary ? "yes" : "no") << "\n";
            out << "H^" << p - 1 << "(N x| G) = " << res.target_group.str() << "\n";
            out << "class coordinates: " << res.coordinates.str() << "\n";
        }
        const SignReport s = measure_convention_sign(ctx, p, Convention::f, Convention::tilde);
        out << "measured sign: ";
        if (!s.consistent)
            out << "no single sign relates f and tilde\n";
        else if (!s.global)
            out << "undetermined (both conventions vanish at levels 1.." << p << ")\n";
        else
            out << sign_relation_text("f", "tilde", *s.global) << " at levels 1.." << p << "\n";
        return res.image_is_cocycle && s.consistent ? kExitOk : kExitMath;
    });
}

inline int cmd_verify(const std::filesystem::path& path, const VerifyOptions& opt,
                      std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        const Document doc = load_document(path);
        const auto checks = std::holds_alternative<FiniteGroupoid>(doc)
                                ? verify_groupoid(std::get<FiniteGroupoid>(doc), opt)
                                : verify_crossed_module(std::get<CrossedModule>(doc), opt);
        print_checks(out, checks);
        const bool ok = all_passed(checks);
        out << (ok ? "all checks passed\n" : "some checks FAILED\n");
        return ok ? kExitOk : kExitMath;
    });
}

inline int cmd_snf(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        std::ifstream in(path);
        if (!in)
            throw ParseError(path.string(), "cannot open file");
        const IntMatrix m = parse_matrix(in, path.string());
        const SNFResult r = smith_normal_form(m, {true, true, true});
        if (!verify_snf(m, r))
            throw Error("internal: Smith normal form certificate does not verify");
        out << "rank " << r.rank << "\n";
        out << "divisors";
        for (const auto& d : r.divisors)
            out << " " << d.get_str();
        out << "\n";
        return kExitOk;
    });
}

} // namespace xmod
