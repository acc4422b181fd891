// xmod: finite groupoids, crossed modules, nerve cohomology and transgression.

#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "xmod/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Finite groupoids, crossed modules, nerve cohomology and transgression"};
    app.require_subcommand(1);

    std::string path;
    std::size_t pmax = 4;
    int window = xmod::kDefaultWindow;
    std::size_t max_cells = xmod::kDefaultMaxCells;
    std::string convention = "tilde";

    auto add_cells = [&](CLI::App* sub) {
        sub->add_option("--max-cells", max_cells, "Refuse nerve levels larger than this")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };
    const std::set<std::string> conventions{"tilde", "f", "shuffle"};

    auto* validate = app.add_subcommand("validate", "Check groupoid or crossed-module axioms");
    validate->add_option("file", path, "Groupoid or crossed-module file")->required();

    auto* cohom = app.add_subcommand("cohomology", "Integral cohomology H^0..H^pmax of a nerve");
    cohom->add_option("file", path, "Groupoid or crossed-module file")->required();
    cohom->add_option("--pmax", pmax, "Highest degree")->capture_default_str();
    std::string of = "base";
    cohom->add_option("--of", of, "For crossed modules: base or crossed-product")
        ->capture_default_str()
        ->check(CLI::IsMember({"base", "crossed-product"}));
    add_cells(cohom);

    auto* trans = app.add_subcommand("transgress", "Transgress a p-cocycle of G to N x| G");
    trans->add_option("file", path, "Crossed-module file")->required();
    std::size_t level = 0;
    trans->add_option("p", level, "Degree of the input cocycle")->required()->check(
        CLI::PositiveNumber);
    std::string cocycle_file;
    std::size_t generator = 0;
    auto* o_file = trans->add_option("--cocycle", cocycle_file, "Cochain file on G_p");
    auto* o_gen = trans->add_option("--generator", generator, "Index of an H^p(G) generator");
    auto* o_zero = trans->add_flag("--zero", "Transgress the zero cochain");
    o_file->excludes(o_gen)->excludes(o_zero);
    o_gen->excludes(o_zero);
    trans->add_option("--convention", convention, "Sign convention: tilde, f or shuffle")
        ->capture_default_str()
        ->check(CLI::IsMember(conventions));
    add_cells(trans);

    auto* verify = app.add_subcommand("verify", "Run the full property suite");
    verify->add_option("file", path, "Groupoid or crossed-module file")->required();
    verify->add_option("--pmax", pmax, "Highest nerve level")->capture_default_str();
    verify->add_option("--window", window, "Integer window [-w, w] for Z-action tests")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    add_cells(verify);

    auto* snf = app.add_subcommand("snf", "Smith normal form divisors of a matrix file");
    snf->add_option("file", path, "Matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : xmod::kExitInput;
    }

    if (*validate)
        return xmod::cmd_validate(path, std::cout, std::cerr);
    if (*cohom)
        return xmod::cmd_cohomology(path, pmax, max_cells,
                                    of == "base" ? xmod::CohomologyOf::base
                                                 : xmod::CohomologyOf::crossed_product,
                                    std::cout, std::cerr);
    if (*trans) {
        xmod::CocycleSource src;
        if (*o_file) {
            src.kind = xmod::CocycleSource::Kind::file;
            src.file = cocycle_file;
        } else if (*o_gen) {
            src.kind = xmod::CocycleSource::Kind::generator;
            src.generator = generator;
        } else if (!*o_zero) {
            std::cerr << "error: choose one of --cocycle, --generator, --zero\n";
            return xmod::kExitInput;
        }
        return xmod::cmd_transgress(path, level, src, *xmod::parse_convention(convention),
                                    max_cells, std::cout, std::cerr);
    }
    if (*verify)
        return xmod::cmd_verify(path, {pmax, window, max_cells}, std::cout, std::cerr);
    return xmod::cmd_snf(path, std::cout, std::cerr);
}
