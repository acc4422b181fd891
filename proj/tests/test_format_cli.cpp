#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace xmod;
using testing_support::data_path;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "xmod-format-tests";
    fs::create_directories(d);
    return d;
}

fs::path write_scratch(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << text;
    return p;
}

std::string parse_error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "<no ParseError>";
}

std::string written(const FiniteGroupoid& g) {
    std::ostringstream os;
    write_groupoid(os, g);
    return os.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <class Fn> Run run(Fn fn) {
    std::ostringstream out, err;
    const int code = fn(out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST(Format, EveryBundledFileParses) {
    std::size_t n = 0;
    for (const char* dir : {"crossed", "groupoids"})
        for (const auto& e : fs::directory_iterator(data_path(dir))) {
            EXPECT_NO_THROW(load_document(e.path())) << e.path();
            ++n;
        }
    EXPECT_GE(n, 14u);
}

TEST(Format, ShorthandMatchesGenerator) {
    const auto g = testing_support::load_gpd("groupoids/cyclic5.gpd");
    EXPECT_EQ(written(g), written(cyclic_group(5)));
    const auto u = testing_support::load_gpd("groupoids/z2-plus-z3.gpd");
    EXPECT_EQ(written(u), written(disjoint_union({cyclic_group(2), cyclic_group(3)})));
}

TEST(Format, GroupoidRoundTrip) {
    for (const auto& e : fs::directory_iterator(data_path("groupoids"))) {
        const auto g = std::get<FiniteGroupoid>(load_document(e.path()));
        std::istringstream in(written(g));
        const auto back = parse_groupoid(in);
        EXPECT_EQ(written(back), written(g)) << e.path();
        EXPECT_TRUE(validate_groupoid(back).ok());
    }
}

TEST(Format, CrossedModuleRoundTrip) {
    for (const auto& f : testing_support::fleet_files()) {
        const auto cm = testing_support::load_cm(f);
        const fs::path base = scratch_dir() / "round-trip-base.gpd";
        {
            std::ofstream os(base);
            write_groupoid(os, cm.base);
        }
        std::ostringstream os;
        write_crossed_module(os, cm, base.filename().string());
        std::istringstream in(os.str());
        const auto back = parse_crossed_module(in, "round-trip.xm", scratch_dir());
        EXPECT_TRUE(validate_crossed_module(back).ok()) << f;
        EXPECT_EQ(back.phi, cm.phi) << f;
        EXPECT_EQ(back.action, cm.action) << f;
        EXPECT_EQ(written(back.bundle), written(cm.bundle)) << f;
        EXPECT_EQ(written(back.base), written(cm.base)) << f;
    }
}

TEST(Format, ErrorsCarryLineNumbers) {
    const std::string unknown_arrow = "GROUPOID\nOBJECTS\na\nARROWS\nf a a\nCOMPOSE\nf g f\n";
    EXPECT_TRUE(contains(parse_error_of([&] {
                             std::istringstream in(unknown_arrow);
                             parse_groupoid(in, "t.gpd");
                         }),
                         "t.gpd:7"));

    // Comments and blank lines still count.
    const std::string shifted = "# header\n\nGROUPOID\nOBJECTS\na\nARROWS\nf a\n";
    EXPECT_TRUE(contains(parse_error_of([&] {
                             std::istringstream in(shifted);
                             parse_groupoid(in, "c.gpd");
                         }),
                         "c.gpd:7"));

    const std::string missing_phi = "CROSSED-MODULE\nBASE cyclic 2\nFIBERS\ne *\ne e e\nPHI\n"
                                    "ACTION\ne 0 e\ne 1 e\n";
    const auto msg = parse_error_of([&] {
        std::istringstream in(missing_phi);
        parse_crossed_module(in, "m.xm");
    });
    EXPECT_TRUE(contains(msg, "m.xm")) << msg;
    EXPECT_TRUE(contains(msg, "phi")) << msg;

    const std::string nested = "GROUPOID disjoint-union cyclic 2 + disjoint-union cyclic 3\n";
    EXPECT_TRUE(contains(parse_error_of([&] {
                             std::istringstream in(nested);
                             parse_groupoid(in, "n.gpd");
                         }),
                         "n.gpd:1"));
}

TEST(Format, DocumentHeaders) {
    const auto empty = write_scratch("empty.gpd", "# nothing here\n");
    EXPECT_TRUE(contains(parse_error_of([&] { load_document(empty); }), "empty"));
    const auto bad = write_scratch("bad-header.gpd", "GROUPIOD cyclic 2\n");
    EXPECT_TRUE(contains(parse_error_of([&] { load_document(bad); }), "bad-header.gpd:1"));
    EXPECT_THROW(load_document(scratch_dir() / "does-not-exist.gpd"), ParseError);
}

TEST(Format, Cochains) {
    const auto z2 = cyclic_group(2);
    const Nerve nerve(z2, 3);
    std::istringstream in("COCHAIN 2\n1 1 1\n2 1 1\n# trailing\n");
    const auto c = parse_cochain(in, nerve);
    ASSERT_EQ(c.level, 2u);
    const auto idx = nerve.level(2).require_index(NerveTuple::of_arrows({1, 1}));
    for (std::size_t i = 0; i < c.values.size(); ++i)
        EXPECT_EQ(c.values[i], Int(i == idx ? 3 : 0));

    std::istringstream obj("COCHAIN 0\n-4 *\n");
    EXPECT_EQ(parse_cochain(obj, nerve).values, std::vector<Int>({Int(-4)}));

    std::istringstream bad("COCHAIN 2\n1 1 7\n");
    EXPECT_TRUE(contains(parse_error_of([&] { parse_cochain(bad, nerve, "b.cochain"); }),
                         "b.cochain:2"));
    std::istringstream high("COCHAIN 4\n");
    EXPECT_THROW(parse_cochain(high, nerve), ParseError);
}

TEST(Format, Matrices) {
    std::ifstream in(data_path("matrices/z2-coboundary.mat"));
    const auto m = parse_matrix(in);
    const auto z2 = cyclic_group(2);
    EXPECT_EQ(testing_support::dense_strings(m),
              testing_support::dense_strings(
                  coboundary_matrix(Nerve(z2, 2), 1).to_dense()));
    std::istringstream ragged("MATRIX 2 2\n1 2\n3\n");
    EXPECT_THROW(parse_matrix(ragged), ParseError);
}

TEST(Cli, ValidateExitCodes) {
    const auto ok = run([](auto& o, auto& e) {
        return cmd_validate(data_path("crossed/s3-identity.xm"), o, e);
    });
    EXPECT_EQ(ok.code, 0);
    EXPECT_TRUE(contains(ok.out, "valid crossed module"));

    const auto broken = run([](auto& o, auto& e) {
        return cmd_validate(data_path("bad/broken-equivariance.xm"), o, e);
    });
    EXPECT_EQ(broken.code, 1);
    EXPECT_TRUE(contains(broken.out, "INVALID"));
    EXPECT_TRUE(contains(broken.out, "witness: "));

    const auto malformed = run([](auto& o, auto& e) {
        return cmd_validate(data_path("bad/malformed.gpd"), o, e);
    });
    EXPECT_EQ(malformed.code, 2);
    EXPECT_TRUE(contains(malformed.err, "malformed.gpd:5"));
}

TEST(Cli, CohomologyOutput) {
    const auto c5 = run([](auto& o, auto& e) {
        return cmd_cohomology(data_path("groupoids/cyclic5.gpd"), 3, kDefaultMaxCells,
                              CohomologyOf::base, o, e);
    });
    EXPECT_EQ(c5.code, 0);
    EXPECT_TRUE(contains(c5.out, "H^0 = Z\nH^1 = 0\nH^2 = Z/5\nH^3 = 0\n")) << c5.out;

    const auto pair = run([](auto& o, auto& e) {
        return cmd_cohomology(data_path("groupoids/pair2.gpd"), 3, kDefaultMaxCells,
                              CohomologyOf::base, o, e);
    });
    EXPECT_TRUE(contains(pair.out, "H^0 = Z\nH^1 = 0\nH^2 = 0\nH^3 = 0\n")) << pair.out;

    const auto cp = run([](auto& o, auto& e) {
        return cmd_cohomology(data_path("crossed/z2-identity.xm"), 2, kDefaultMaxCells,
                              CohomologyOf::crossed_product, o, e);
    });
    EXPECT_EQ(cp.code, 0);
    EXPECT_TRUE(contains(cp.out, "H^0 = Z^2\nH^1 = 0\nH^2 = Z/2 ⊕ Z/2\n")) << cp.out;

    const auto gpd_cp = run([](auto& o, auto& e) {
        return cmd_cohomology(data_path("groupoids/pair2.gpd"), 2, kDefaultMaxCells,
                              CohomologyOf::crossed_product, o, e);
    });
    EXPECT_EQ(gpd_cp.code, 2);
}

TEST(Cli, MemoryGuardRefuses) {
    const auto r = run([](auto& o, auto& e) {
        return cmd_cohomology(data_path("groupoids/s3.gpd"), 4, 100, CohomologyOf::base, o, e);
    });
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "refused")) << r.err;
}

TEST(Cli, VerifyPassesAndSkips) {
    for (const char* f : {"crossed/z3-identity.xm", "crossed/z2-pair2-inertia.xm",
                          "groupoids/s3.gpd"}) {
        const auto r = run([&](auto& o, auto& e) {
            return cmd_verify(data_path(f), VerifyOptions{3, kDefaultWindow, kDefaultMaxCells}, o,
                              e);
        });
        EXPECT_EQ(r.code, 0) << f << "\n" << r.out << r.err;
        EXPECT_TRUE(contains(r.out, "all checks passed"));
    }
    const auto w0 = run([](auto& o, auto& e) {
        return cmd_verify(data_path("crossed/z2-identity.xm"), VerifyOptions{2, 0, kDefaultMaxCells},
                          o, e);
    });
    EXPECT_EQ(w0.code, 0);
    EXPECT_TRUE(contains(w0.out, "skipped"));
}

TEST(Cli, VerifyNamesTheBrokenProperty) {
    // z4-to-z2 with phi(1) moved to 0: phi stops being a homomorphism.
    std::ifstream in(data_path("crossed/z4-to-z2.xm"));
    std::stringstream text;
    text << in.rdbuf();
    std::string s = text.str();
    const auto at = s.find("PHI\n0 0\n1 1\n");
    ASSERT_NE(at, std::string::npos);
    s.replace(at, 12, "PHI\n0 0\n1 0\n");
    const auto path = write_scratch("z4-to-z2-broken.xm", s);
    const auto r = run([&](auto& o, auto& e) { return cmd_verify(path, VerifyOptions{}, o, e); });
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "crossed-module axioms"));
    EXPECT_TRUE(contains(r.out, "FAIL"));
    EXPECT_TRUE(contains(r.out, "some checks FAILED"));
}

TEST(Cli, Snf) {
    const auto d = run([](auto& o, auto& e) { return cmd_snf(data_path("matrices/diag-2-3.mat"), o, e); });
    EXPECT_EQ(d.code, 0);
    EXPECT_TRUE(contains(d.out, "rank 2"));
    EXPECT_TRUE(contains(d.out, "divisors 1 6"));
    const auto z = run([](auto& o, auto& e) {
        return cmd_snf(data_path("matrices/z2-coboundary.mat"), o, e);
    });
    EXPECT_TRUE(contains(z.out, "divisors 1 2")) << z.out;
}

TEST(Cli, TransgressSources) {
    const auto xm = data_path("crossed/z2-identity.xm");
    const auto zero = run([&](auto& o, auto& e) {
        return cmd_transgress(xm, 2, {}, Convention::tilde, kDefaultMaxCells, o, e);
    });
    EXPECT_EQ(zero.code, 0);
    EXPECT_TRUE(contains(zero.out, "(zero)"));

    const auto file = run([&](auto& o, auto& e) {
        return cmd_transgress(xm, 2,
                              {CocycleSource::Kind::file, data_path("cochains/z2-carry.cochain"), 0},
                              Convention::tilde, kDefaultMaxCells, o, e);
    });
    EXPECT_EQ(file.code, 0) << file.err;
    EXPECT_TRUE(contains(file.out, "image is a cocycle: yes"));
    EXPECT_TRUE(contains(file.out, "f = −(tilde)"));

    const auto open = run([&](auto& o, auto& e) {
        return cmd_transgress(
            xm, 2, {CocycleSource::Kind::file, data_path("cochains/z2-not-closed.cochain"), 0},
            Convention::tilde, kDefaultMaxCells, o, e);
    });
    EXPECT_EQ(open.code, 1);
    EXPECT_TRUE(contains(open.err, "not a cocycle"));

    const auto range = run([&](auto& o, auto& e) {
        return cmd_transgress(xm, 2, {CocycleSource::Kind::generator, {}, 5}, Convention::tilde,
                              kDefaultMaxCells, o, e);
    });
    EXPECT_EQ(range.code, 2);

    const auto groupoid = run([&](auto& o, auto& e) {
        return cmd_transgress(data_path("groupoids/s3.gpd"), 2, {}, Convention::tilde,
                              kDefaultMaxCells, o, e);
    });
    EXPECT_EQ(groupoid.code, 2);
}

TEST(Cli, OutputIsDeterministic) {
    const auto path = data_path("crossed/z2-pair2-trivial.xm");
    const auto a = run([&](auto& o, auto& e) { return cmd_verify(path, VerifyOptions{3}, o, e); });
    const auto b = run([&](auto& o, auto& e) { return cmd_verify(path, VerifyOptions{3}, o, e); });
    EXPECT_EQ(a.out, b.out);
    const auto c = run([&](auto& o, auto& e) {
        return cmd_cohomology(path, 3, kDefaultMaxCells, CohomologyOf::crossed_product, o, e);
    });
    const auto d = run([&](auto& o, auto& e) {
        return cmd_cohomology(path, 3, kDefaultMaxCells, CohomologyOf::crossed_product, o, e);
    });
    EXPECT_EQ(c.out, d.out);
}
