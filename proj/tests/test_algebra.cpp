// Structural checks on algebra definitions: the built-in catalog, the four
// validators (Jacobi, Casimir centrality, Cartan splits, involutions), the
// contraction registry, and the text format round trip.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "kindef/algebra_io.hpp"
#include "kindef/catalog.hpp"
#include "helpers.hpp"

using namespace kindef;

// Pin the interning order of the contraction parameters so rendered
// coefficient strings are stable no matter which test runs first.
static const bool param_order_pinned = [] {
    for (const char* n : {"gamma", "lambda", "gammah", "lambdah"}) intern_param(n);
    return true;
}();

namespace {

Element br(const AlgebraDef& d, const std::string& x, const std::string& y) {
    return d.basis->bracket(d.basis->require(x), d.basis->require(y));
}

} // namespace

TEST_CASE("every catalog entry passes all structural checks") {
    REQUIRE(catalog_names().size() == 10);
    for (auto& name : catalog_names()) {
        INFO(name);
        AlgebraDef d = catalog_get(name);
        REQUIRE(d.name == name);
        REQUIRE(d.basis->size() == (name == "galilei-extended" ? 11 : 10));
        REQUIRE(check_jacobi(d).empty());
        REQUIRE(check_casimirs(d).empty());
        REQUIRE(d.involutions.size() == 2);
        for (auto& v : d.involutions) {
            INFO(v.name);
            REQUIRE(check_involution(d, v).empty());
        }
        for (auto& cs : d.cartan) {
            INFO(cs.label);
            REQUIRE(check_cartan(d, cs).empty());
        }
        REQUIRE(d.spaces.size() == 2);
    }
    REQUIRE_THROWS_AS(catalog_get("nope"), DomainError);
}

TEST_CASE("catalog metadata tables are as expected") {
    // name -> {split1 pattern or "", split2 pattern, casimir names}
    struct Row {
        std::string split1, split2;
        std::vector<std::string> casimirs;
    };
    std::map<std::string, Row> want = {
        {"galilei", {"zero", "zero", {"c1", "c2"}}},
        {"galilei-extended", {"", "subh", {"xi", "eint", "espin"}}},
        {"poincare", {"zero", "subh", {"cp1", "cp2"}}},
        {"euclidean4", {"zero", "subh", {"cp1", "cp2"}}},
        {"nh-minus", {"subh", "zero", {"cnh1", "cnh2"}}},
        {"nh-plus", {"subh", "zero", {"cnh1", "cnh2"}}},
        {"ds", {"subh", "subh", {"cd1", "cd2"}}},
        {"ads", {"subh", "subh", {"cd1", "cd2"}}},
        {"so5", {"subh", "subh", {"cd1", "cd2"}}},
        {"so41-euclidean-chain", {"subh", "subh", {"cd1", "cd2"}}},
    };
    for (auto& [name, row] : want) {
        INFO(name);
        AlgebraDef d = catalog_get(name);
        std::map<std::string, std::string> pat;
        for (auto& cs : d.cartan) pat[cs.label] = cs.pattern;
        REQUIRE(pat.count("split1") == (row.split1.empty() ? 0u : 1u));
        if (!row.split1.empty()) REQUIRE(pat["split1"] == row.split1);
        REQUIRE(pat.at("split2") == row.split2);
        std::vector<std::string> cn;
        for (auto& c : d.casimirs) cn.push_back(c.name);
        REQUIRE(cn == row.casimirs);
    }
}

TEST_CASE("bracket tables pin the curvature parameters with their signs") {
    auto s = [](const AlgebraDef& d, const char* x, const char* y) { return br(d, x, y).str(); };

    AlgebraDef poi = catalog_get("poincare");
    CHECK(s(poi, "P1", "K1") == "-gamma^2*H");
    CHECK(s(poi, "K1", "K2") == "-gamma^2*J3");
    CHECK(s(poi, "H", "P1") == "0");
    CHECK(s(poi, "K1", "H") == "P1");

    AlgebraDef eu = catalog_get("euclidean4");
    CHECK(s(eu, "P1", "K1") == "gammah^2*H");
    CHECK(s(eu, "K1", "K2") == "gammah^2*J3");

    AlgebraDef nhm = catalog_get("nh-minus");
    CHECK(s(nhm, "H", "P1") == "-lambda^2*K1");
    CHECK(s(nhm, "P1", "K1") == "0");
    CHECK(s(catalog_get("nh-plus"), "H", "P1") == "lambdah^2*K1");

    AlgebraDef ds = catalog_get("ds");
    CHECK(s(ds, "H", "P1") == "-lambda^2*K1");
    CHECK(s(ds, "P1", "P2") == "gamma^2*lambda^2*J3");
    CHECK(s(ds, "P1", "K1") == "-gamma^2*H");

    AlgebraDef ads = catalog_get("ads");
    CHECK(s(ads, "H", "P1") == "lambdah^2*K1");
    CHECK(s(ads, "P1", "P2") == "-gamma^2*lambdah^2*J3");
    CHECK(s(ads, "P1", "K1") == "-gamma^2*H");

    CHECK(s(catalog_get("so5"), "P1", "P2") == "gammah^2*lambdah^2*J3");
    CHECK(s(catalog_get("so41-euclidean-chain"), "P1", "P2") == "-gammah^2*lambda^2*J3");

    AlgebraDef ext = catalog_get("galilei-extended");
    CHECK(s(ext, "P1", "K1") == "-m*Xi");
    CHECK(s(ext, "Xi", "H") == "0");

    SECTION("defined combinations record the same signs") {
        CHECK(poi.defines.find("kappa2")->value.str() == "-gamma^2");
        CHECK(eu.defines.find("kappa2")->value.str() == "gammah^2");
        CHECK(nhm.defines.find("kappa1")->value.str() == "-lambda^2");
        CHECK(ads.defines.find("kappa1")->value.str() == "lambdah^2");
        CHECK(ads.defines.find("kappa2")->value.str() == "-gamma^2");
    }
}

TEST_CASE("space records carry dimension, rank and curvature") {
    std::map<std::string, std::pair<std::string, std::string>> curv = {
        {"galilei", {"0", "0"}},
        {"galilei-extended", {"0", "0"}},
        {"poincare", {"0", "-gamma^2"}},
        {"euclidean4", {"0", "gammah^2"}},
        {"nh-minus", {"-lambda^2", "0"}},
        {"nh-plus", {"lambdah^2", "0"}},
        {"ds", {"-lambda^2", "-gamma^2"}},
        {"ads", {"lambdah^2", "-gamma^2"}},
        {"so5", {"lambdah^2", "gammah^2"}},
        {"so41-euclidean-chain", {"-lambda^2", "gammah^2"}},
    };
    for (auto& [name, cs] : curv) {
        INFO(name);
        AlgebraDef d = catalog_get(name);
        const SpaceRecord* st = d.space("spacetime");
        const SpaceRecord* wl = d.space("worldlines");
        REQUIRE(st != nullptr);
        REQUIRE(wl != nullptr);
        CHECK(st->dim == 4);
        CHECK(st->rank == 1);
        CHECK(st->curvature.str() == cs.first);
        CHECK(wl->dim == 6);
        CHECK(wl->rank == 2);
        CHECK(wl->curvature.str() == cs.second);
    }
}

TEST_CASE("a corrupted bracket is caught by the Jacobi check with a witness") {
    auto b = LieBasis::create({"H", "K1", "K2", "K3", "P1", "P2", "P3", "J1", "J2", "J3"});
    testutil::GalileiGens g;
    g.H = 0;
    for (int i = 1; i <= 3; ++i) {
        g.K[i] = i;
        g.P[i] = 3 + i;
        g.J[i] = 6 + i;
    }
    testutil::fill_galilei_common(b, g);
    // Override [P1, K1] to J1; the table is still antisymmetric but no
    // longer a Lie algebra.
    b->set_bracket(g.P[1], g.K[1], Element::gen(b, g.J[1]));
    b->freeze();
    AlgebraDef d;
    d.name = "broken";
    d.basis = b;

    auto fails = check_jacobi(d);
    REQUIRE(!fails.empty());
    bool found = false;
    for (auto& f : fails) {
        REQUIRE(!f.witness.is_zero());
        if (f.x == "K1" && f.y == "P1" && f.z == "J2") {
            found = true;
            CHECK(f.witness == Element::gen(b, g.J[3], Scalar(-1)));
            CHECK(f.witness.str() == "-J3");
        }
    }
    REQUIRE(found);
}

TEST_CASE("a non-invariant declared as a casimir is rejected with a witness") {
    AlgebraDef d = catalog_get("poincare");
    auto P = vec3(d.basis, "P");
    d.casimirs.push_back(CasimirDef{"bogus", dot3(P, P), intern_param("cbogus")});
    auto fails = check_casimirs(d);
    // P^2 alone commutes with everything except the boosts.
    REQUIRE(fails.size() == 3);
    for (auto& f : fails) REQUIRE(f.casimir == "bogus");
    CHECK(fails[0].generator == "K1");
    Scalar g2 = Scalar::param("gamma") * Scalar::param("gamma");
    Element H = Element::gen(d.basis, "H");
    CHECK(fails[0].witness == (H * P[0]).scaled(Scalar(-2) * g2));
    CHECK(fails[0].witness.str() == "-2*gamma^2*H*P1");
}

TEST_CASE("involution checks: sign maps, non-automorphisms, permutations") {
    AlgebraDef gal = catalog_get("galilei");

    SECTION("flipping only H fails exactly on the boost brackets") {
        Involution v;
        v.name = "onlyH";
        v.images["H"] = {"H", -1};
        auto fails = check_involution(gal, v);
        REQUIRE(fails.size() == 3);
        CHECK(fails[0].x == "H");
        CHECK(fails[0].y == "K1");
        CHECK(fails[0].witness == Element::gen(gal.basis, "P1").scaled(Scalar(2)));
        CHECK(fails[1].y == "K2");
        CHECK(fails[2].y == "K3");
    }

    SECTION("a map that does not square to the identity is reported") {
        AlgebraDef tiny = parse_algebra("algebra tiny {\n"
                                        "  generators [A, B];\n"
                                        "  involution bad: A->-B;\n"
                                        "  involution swap: A->B, B->A;\n"
                                        "}\n");
        REQUIRE(tiny.involutions.size() == 2);
        auto fails = check_involution(tiny, *tiny.involution("bad"));
        REQUIRE(fails.size() == 1);
        CHECK(fails[0].x == "A");
        CHECK(fails[0].y.empty());
        CHECK(check_involution(tiny, *tiny.involution("swap")).empty());
    }
}

TEST_CASE("cartan split violations carry the offending bracket") {
    AlgebraDef gal = catalog_get("galilei");

    SECTION("a mixed partition violates the zero pattern") {
        CartanSplit bad{"bad",
                        {"H", "K1", "K2", "K3"},
                        {"P1", "P2", "P3", "J1", "J2", "J3"},
                        "zero"};
        auto fails = check_cartan(gal, bad);
        REQUIRE(fails.size() == 3);
        CHECK(fails[0].split == "bad");
        CHECK(fails[0].x == "H");
        CHECK(fails[0].y == "K1");
        CHECK(fails[0].reason == "[p,p] = 0");
        CHECK(fails[0].witness == -Element::gen(gal.basis, "P1"));
    }

    SECTION("non-partitions are rejected outright") {
        CartanSplit miss{"miss", {"H"}, {"J1", "J2", "J3"}, "zero"};
        REQUIRE_THROWS_MATCHES(check_cartan(gal, miss), DomainError,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("does not partition")));
        CartanSplit dup{"dup",
                        {"H", "P1", "P2", "P3", "K1"},
                        {"K1", "K2", "K3", "J1", "J2"},
                        "zero"};
        REQUIRE_THROWS_AS(check_cartan(gal, dup), DomainError);
    }

    SECTION("the subh pattern accepts brackets landing in h") {
        AlgebraDef nh = catalog_get("nh-minus");
        // [H, Pi] = -lambda^2 Ki lands in h for split1.
        for (auto& cs : nh.cartan)
            if (cs.label == "split1") REQUIRE(check_cartan(nh, cs).empty());
    }
}

TEST_CASE("contraction registry: every edge checks out, wrong edges do not") {
    for (auto& e : contraction_edges()) {
        INFO(e.parent << " -> " << e.contracted);
        auto fails = check_contraction(catalog_get(e.parent), e.primitive, catalog_get(e.contracted));
        CHECK(fails.empty());
    }
    // Sending gamma -> 0 in poincare gives galilei, not nh-minus.
    auto fails = check_contraction(catalog_get("poincare"), "gamma", catalog_get("nh-minus"));
    REQUIRE(!fails.empty());
    bool found = false;
    for (auto& f : fails)
        if (f.x == "H" && f.y == "P1") {
            found = true;
            CHECK(f.parent_limit.is_zero());
            CHECK(f.contracted.str() == "-lambda^2*K1");
        }
    REQUIRE(found);
}

TEST_CASE("algebra text round-trips byte for byte") {
    for (auto& name : catalog_names()) {
        INFO(name);
        AlgebraDef d = catalog_get(name);
        std::string txt = render_algebra(d);
        AlgebraDef d2 = parse_algebra(txt);
        REQUIRE(algebra_equal(d, d2));
        REQUIRE(render_algebra(d2) == txt);
    }
}

TEST_CASE("algebra_equal distinguishes differing tables") {
    AlgebraDef a = catalog_get("galilei");
    REQUIRE(algebra_equal(a, catalog_get("galilei")));
    REQUIRE(!algebra_equal(a, catalog_get("poincare")));
    AlgebraDef tweaked = parse_algebra(render_algebra(a));
    tweaked.casimirs[0].element += Element::unit(tweaked.basis);
    REQUIRE(!algebra_equal(a, tweaked));
}

static const char* kGalileiByHand = R"(# Flat nonrelativistic table written out by hand with the vector shorthands.
algebra galilei {
  params [c1, c2];
  generators [H, K1, K2, K3, P1, P2, P3, J1, J2, J3];
  bracket [K1, H] = P1;
  bracket [K2, H] = P2;
  bracket [K3, H] = P3;
  bracket [J1, J2] = J3;
  bracket [J2, J3] = J1;
  bracket [J3, J1] = J2;
  bracket [J1, P2] = P3;
  bracket [J2, P3] = P1;
  bracket [J3, P1] = P2;
  bracket [J1, P3] = -P2;
  bracket [J2, P1] = -P3;
  bracket [J3, P2] = -P1;
  bracket [J1, K2] = K3;
  bracket [J2, K3] = K1;
  bracket [J3, K1] = K2;
  bracket [J1, K3] = -K2;
  bracket [J2, K1] = -K3;
  bracket [J3, K2] = -K1;
  casimir c1 = Psq eigenvalue c1;
  casimir c2 = Wsq eigenvalue c2;
  cartan split1: p=[H, P1, P2, P3], h=[K1, K2, K3, J1, J2, J3] pattern=zero;
  cartan split2: p=[P1, P2, P3, K1, K2, K3], h=[H, J1, J2, J3] pattern=zero;
  involution PT: H->-H, P1->-P1, P2->-P2, P3->-P3;
  involution parity: K1->-K1, K2->-K2, K3->-K3, P1->-P1, P2->-P2, P3->-P3;
  space spacetime: dim=4 curvature=0 rank=1;
  space worldlines: dim=6 curvature=0 rank=2;
}
)";

TEST_CASE("hand-written text with shorthands equals the built-in entry") {
    AlgebraDef d = parse_algebra(kGalileiByHand);
    REQUIRE(algebra_equal(d, catalog_get("galilei")));
}

TEST_CASE("vector shorthands expand to the expected elements") {
    AlgebraDef d = parse_algebra("algebra t {\n"
                                 "  params [a];\n"
                                 "  generators [H, K1, K2, K3, P1, P2, P3, J1, J2, J3];\n"
                                 "  bracket [K1, H] = P1;\n"
                                 "  casimir q1 = W1^2 + W2^2 + W3^2 eigenvalue a;\n"
                                 "  casimir q2 = JdotP eigenvalue a;\n"
                                 "  casimir q3 = KdotP eigenvalue a;\n"
                                 "  casimir q4 = JdotW + JdotK eigenvalue a;\n"
                                 "  casimir q5 = Ksq + Jsq eigenvalue a;\n"
                                 "}\n");
    auto K = vec3(d.basis, "K"), P = vec3(d.basis, "P"), J = vec3(d.basis, "J");
    auto W = wedge3(K, P);
    CHECK(d.casimir("q1")->element == dot3(W, W));
    CHECK(d.casimir("q2")->element == dot3(J, P));
    CHECK(d.casimir("q3")->element == dot3(K, P));
    CHECK(d.casimir("q4")->element == dot3(J, W) + dot3(J, K));
    CHECK(d.casimir("q5")->element == dot3(K, K) + dot3(J, J));
}

TEST_CASE("parser reports errors with line and column positions") {
    using Catch::Matchers::ContainsSubstring;
    using Catch::Matchers::MessageMatches;
    auto expect = [](const std::string& text, const std::string& needle) {
        REQUIRE_THROWS_MATCHES(parse_algebra(text), ParseError,
                               MessageMatches(ContainsSubstring(needle)));
    };

    expect("algebra x {\n  generators [];\n}\n", "empty generator list");
    expect("algebra x {\n  generators [];\n}\n", "line 2");
    expect("algebra x {\n  generators [A, A];\n}\n", "duplicate generator name 'A'");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, B] = B;\n  bracket [B, A] = -B;\n}\n",
           "already declared");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, B] = B;\n  bracket [B, A] = -B;\n}\n",
           "line 4");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, A] = B;\n}\n", "with itself");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, C] = B;\n}\n", "unknown generator 'C'");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, B] = A*B;\n}\n", "degree at most 1");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, B] = q;\n}\n", "unknown symbol 'q'");
    expect("algebra x {\n  generators [A, B];\n  bracket [A, B] = 2;\n}\n", "bare scalar");
    expect("algebra x {\n  params [a];\n  generators [A, B];\n  casimir c = A eigenvalue z;\n}\n",
           "eigenvalue parameter 'z' is not declared");
    expect("algebra x {\n  params [a];\n  generators [A, B];\n  casimir c = A eigenvalue a;\n"
           "  bracket [A, B] = B;\n}\n",
           "must precede");
    expect("algebra x {\n  generators [A];\n  widget y;\n}\n", "unknown statement 'widget'");
    expect("algebra x {\n  generators [A];\n}\ntrailing\n", "trailing input");
    expect("algebra x {\n  bracket [A, B] = A;\n}\n", "generators must be declared first");
    expect("algebra x {\n  params [a];\n  params [b];\n}\n", "duplicate params statement");
    expect("algebra x {\n  params [a, a];\n  generators [A];\n}\n", "duplicate parameter 'a'");
    expect("algebra x {\n  params [a];\n  define a = 2;\n  generators [A];\n}\n",
           "collides with a declared parameter");
    expect("algebra x {\n  params [A];\n  generators [A];\n}\n", "collides with a declared parameter");
    expect("algebra x {\n  generators [A, B];\n  cartan s: p=[A], h=[B] pattern=funky;\n}\n",
           "pattern must be 'zero' or 'subh'");
    expect("algebra x {\n  generators [A];\n  space s: dim=4 curvature=@ rank=1;\n}\n",
           "unexpected character '@'");
    expect("algebra x {\n  generators [A];\n  space s: dim=4 curvature=1/0 rank=1;\n}\n",
           "division by zero");
    expect("algebra x {\n  params [a];\n  generators [A, B];\n  casimir c = A/B eigenvalue a;\n}\n",
           "division is only defined by a nonzero scalar");
    expect("algebra x {\n  generators [A]\n}\n", "expected ';'");
    expect("algebra x {\n  generators [A];\n  involution v: A->-C;\n}\n", "unknown generator 'C'");
    expect("algebra x {\n  generators [A];\n  involution v: A->A, A->-A;\n}\n",
           "duplicate image for generator 'A'");
}

TEST_CASE("jacobi failure surfaces through parsed text as well") {
    std::string txt(kGalileiByHand);
    txt.insert(txt.find("  casimir"), "  bracket [P1, K1] = J1;\n");
    AlgebraDef d = parse_algebra(txt);
    auto fails = check_jacobi(d);
    REQUIRE(!fails.empty());
    bool found = false;
    for (auto& f : fails)
        if (f.x == "K1" && f.y == "P1" && f.z == "J2" && f.witness.str() == "-J3") found = true;
    REQUIRE(found);
}
