// Momentum-space realization tests.  The four explicit realizations are
// pinned term by term, every bracket of their catalog tables is certified as
// an exact operator identity, the invariants are shown to act by the expected
// central characters, and an independent numeric path (truncated jets at a
// random rational base point, all parameters bound to rationals) re-confirms
// brackets and characters coefficient by coefficient.  Expected operators and
// strings below are hand-built from the displayed forms.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "kindef/jet.hpp"

using namespace kindef;

// Pin the interning order of the contraction parameters so rendered
// coefficient strings are stable no matter which test runs first.
static const bool param_order_pinned = [] {
    for (const char* n : {"gamma", "lambda", "gammah", "lambdah"}) intern_param(n);
    return true;
}();

namespace {

Scalar P(const char* n) { return Scalar::param(n); }

// Shared realizations: building one is cheap, but the invariant evaluations
// on the curved family are not, so every case reuses these.
const Rep& gal() {
    static const Rep r = build_galilei_bacry(P("m"), P("a"), 1);
    return r;
}
const Rep& nh() {
    static const Rep r = build_nh_deformed(P("lambda"), P("m"), 1);
    return r;
}
const Rep& poi() {
    static const Rep r = build_poincare_massive(P("m"), 1);
    return r;
}
const Rep& ads() {
    static const Rep r = build_ads_deformed(P("lambda"), P("m"), 1, "ds");
    return r;
}

std::vector<std::string> failed_pairs(const RepReport& rep) {
    std::vector<std::string> out;
    for (auto& it : rep.items)
        if (it.status != "closed") out.push_back("[" + it.x + ", " + it.y + "]: " + it.witness);
    return out;
}

} // namespace

TEST_CASE("spin blocks form the exact angular-momentum triple") {
    Scalar i = Scalar::imag_unit(), h = Scalar::rational(1, 2);

    auto s0 = spin_matrices(0);
    for (auto& s : s0) {
        REQUIRE(s.dim == 1);
        REQUIRE(s.is_zero());
    }
    Scalar sq;
    REQUIRE(spin_square(s0).is_scalar(sq));
    REQUIRE(sq.is_zero());

    auto sh = spin_matrices(1); // s = 1/2: S_j = -(i/2) sigma_j
    REQUIRE(sh[0].at(0, 1) == Scalar::zero() - i * h);
    REQUIRE(sh[0].at(1, 0) == Scalar::zero() - i * h);
    REQUIRE(sh[1].at(0, 1) == Scalar::zero() - h);
    REQUIRE(sh[1].at(1, 0) == h);
    REQUIRE(sh[2].at(0, 0) == Scalar::zero() - i * h);
    REQUIRE(sh[2].at(1, 1) == i * h);
    REQUIRE(commutator(sh[0], sh[1]) == sh[2]);
    REQUIRE(commutator(sh[1], sh[2]) == sh[0]);
    REQUIRE(commutator(sh[2], sh[0]) == sh[1]);
    REQUIRE(spin_square(sh).is_scalar(sq));
    REQUIRE(sq == Scalar::rational(-3, 4)); // -s(s+1) at s = 1/2

    auto s1 = spin_matrices(2); // s = 1: (S_i)_{jk} = -eps_{ijk}
    REQUIRE(s1[0].at(1, 2) == Scalar(-1));
    REQUIRE(s1[0].at(2, 1) == Scalar(1));
    REQUIRE(commutator(s1[0], s1[1]) == s1[2]);
    REQUIRE(commutator(s1[1], s1[2]) == s1[0]);
    REQUIRE(commutator(s1[2], s1[0]) == s1[1]);
    REQUIRE(spin_square(s1).is_scalar(sq));
    REQUIRE(sq == Scalar(-2)); // -s(s+1) at s = 1

    REQUIRE_THROWS_AS(spin_matrices(7), UnsupportedError);
    REQUIRE_THROWS_WITH(spin_matrices(7),
                        "spin 7/2 is not in the exact set {0, 1/2, 1}; rerun with the "
                        "floating-point fallback check");

    // Floating-point fallback covers the rest of the half-integer ladder.
    for (int twice_s : {1, 2, 3, 7}) {
        auto sf = spin_matrices_float(twice_s);
        REQUIRE(static_cast<int>(sf[0].size()) == (twice_s + 1) * (twice_s + 1));
        REQUIRE(spin_float_residual(sf, twice_s) < 1e-9);
    }
}

TEST_CASE("coefficient calculus reduces by the mass shell") {
    OmegaCtxPtr ctx = make_omega_ctx(P("m") / P("gamma"));

    REQUIRE(commutator(DiffOp::partial(ctx, 1, 1), DiffOp::mult(CoeffFn::p(ctx, 1), 1)).str() ==
            "1");
    REQUIRE(commutator(DiffOp::partial(ctx, 1, 1), DiffOp::mult(CoeffFn::omega(ctx), 1)).str() ==
            "p1/(omega)");
    REQUIRE((CoeffFn::omega(ctx) * CoeffFn::omega(ctx)).str() ==
            "p1^2 + p2^2 + p3^2 + m^2/(gamma^2)");
    REQUIRE(CoeffFn::inv_omega(ctx).derivative(1).str() == "-p1/(omega^3)");
    REQUIRE(CoeffFn::inv_mc_omega(ctx).derivative(1).str() ==
            "-p1/(omega*(m/(gamma) + omega)^2)");

    // Denominator factors cancel back out against the numerator.
    Scalar c;
    REQUIRE((CoeffFn::inv_omega(ctx) * CoeffFn::omega(ctx)).is_scalar(c));
    REQUIRE(c.is_one());
    CoeffFn mu_om = CoeffFn::omega(ctx) + CoeffFn::scalar(ctx, P("m") / P("gamma"));
    REQUIRE((CoeffFn::inv_mc_omega(ctx) * mu_om).is_scalar(c));
    REQUIRE(c.is_one());

    // Operators from different mass shells or spin sizes refuse to mix.
    OmegaCtxPtr other = make_omega_ctx(P("m"));
    REQUIRE_THROWS_WITH(CoeffFn::omega(ctx) + CoeffFn::omega(other),
                        "parameter context mismatch");
    REQUIRE_THROWS_WITH(DiffOp::identity(ctx, 1) + DiffOp::identity(ctx, 2),
                        "spin-size mismatch");
}

TEST_CASE("the four realizations take their displayed forms") {
    REQUIRE(gal().images.at("Xi").str() == "1");
    REQUIRE(gal().images.at("H").str() == "1/(2*m)*p1^2 + 1/(2*m)*p2^2 + 1/(2*m)*p3^2 + a");
    REQUIRE(gal().images.at("P1").str() == "p1");
    REQUIRE(gal().images.at("K1").str() == "m*d1");
    REQUIRE(gal().images.at("J1").str() == "-1/2*i*S[1,2] - 1/2*i*S[2,1] + p3*d2 - p2*d3");

    REQUIRE(nh().images.at("H").str() ==
            "3/2*lambda + lambda*p1*d1 + lambda*p2*d2 + lambda*p3*d3");
    REQUIRE(nh().images.at("P1").str() == "lambda*m*d1");
    REQUIRE(nh().images.at("K1").str() == "m*d1");

    REQUIRE(poi().images.at("H").str() == "1/(gamma)*omega");
    REQUIRE(poi().images.at("P1").str() == "p1");
    REQUIRE(poi().images.at("K1").str() ==
            "(-1/2*i*gamma*p2/(m/(gamma) + omega))*S[1,1] + "
            "(1/2*gamma*p3/(m/(gamma) + omega))*S[1,2] + "
            "(-1/2*gamma*p3/(m/(gamma) + omega))*S[2,1] + "
            "(1/2*i*gamma*p2/(m/(gamma) + omega))*S[2,2] + gamma*omega*d1");
    REQUIRE(build_poincare_massive(P("m"), 0).images.at("K1").str() == "gamma*omega*d1");

    REQUIRE(ads().images.at("H").str() ==
            "gamma*lambda/(2/3*m)*omega + (gamma*lambda/(m)*p1*omega)*d1 + "
            "(gamma*lambda/(m)*p2*omega)*d2 + (gamma*lambda/(m)*p3*omega)*d3");
    REQUIRE(build_ads_deformed(P("lambda"), P("m"), 0, "ds").images.at("P1").str() ==
            "gamma^2*lambda/(2/3*m)*p1 + (gamma^2*lambda/(m)*p1^2 + lambda*m)*d1 + "
            "(gamma^2*lambda/(m)*p1*p2)*d2 + (gamma^2*lambda/(m)*p1*p3)*d3");
    REQUIRE(ads().images.at("K1") == poi().images.at("K1"));
    REQUIRE(ads().images.at("J2") == poi().images.at("J2"));

    // The opposite curvature sign swaps the primitive parameter to i*lambdah.
    Rep nhp = build_rep("nh-deformed", 0, +1);
    REQUIRE(nhp.algebra.name == "nh-plus");
    REQUIRE(nhp.images.at("H").str() ==
            "3/2*i*lambdah + i*lambdah*p1*d1 + i*lambdah*p2*d2 + i*lambdah*p3*d3");

    REQUIRE(gal().spin_square == Scalar::rational(-3, 4));
    REQUIRE(build_poincare_massive(P("m"), 0).spin_square == Scalar::zero());

    REQUIRE_THROWS_WITH(build_galilei_bacry(Scalar::zero(), P("a"), 1),
                        "massive representation requires m != 0");
    REQUIRE_THROWS_WITH(build_poincare_massive(Scalar::zero(), 0),
                        "massive representation requires m != 0");
    REQUIRE_THROWS_WITH(build_rep("euclidean-chain", 0),
                        "unknown representation 'euclidean-chain' (supported: galilei-bacry, "
                        "nh-deformed, poincare-massive, ads-deformed)");
}

TEST_CASE("every bracket closes in every realization") {
    struct Row {
        const Rep* rep;
        int pairs;
    };
    for (auto& [rep, pairs] : {Row{&gal(), 55}, Row{&nh(), 45}, Row{&poi(), 45}, Row{&ads(), 45}}) {
        RepReport report = verify_rep(*rep);
        INFO(rep->name);
        CAPTURE(failed_pairs(report));
        REQUIRE(static_cast<int>(report.items.size()) == pairs);
        REQUIRE(report.closed_count() == pairs);
        REQUIRE(report.all_closed());
        REQUIRE(report.status() == "closed");
    }

    // The sign-swapped family closes against its own catalog tables.
    for (const char* name : {"nh-deformed", "ads-deformed"}) {
        Rep rep = build_rep(name, 1, +1);
        RepReport report = verify_rep(rep);
        INFO(name);
        CAPTURE(failed_pairs(report));
        REQUIRE(static_cast<int>(report.items.size()) == 45);
        REQUIRE(report.all_closed());
    }
}

TEST_CASE("invariants act by their central characters") {
    auto eigen_strings = [](const Rep& rep) {
        std::map<std::string, std::string> out;
        for (auto& [name, value] : rep_casimir_eigenvalues(rep)) out.emplace(name, value.str());
        return out;
    };

    std::map<std::string, std::string> g = eigen_strings(gal());
    REQUIRE(g.at("xi") == "1");
    REQUIRE(g.at("eint") == "2*a*m");
    REQUIRE(g.at("espin") == "-3/4*m^2"); // m^2 S.S at s = 1/2
    REQUIRE(eigen_strings(build_galilei_bacry(P("m"), P("a"), 2)).at("espin") == "-2*m^2");

    std::map<std::string, std::string> n = eigen_strings(nh());
    REQUIRE(n.at("cnh1") == "0");
    REQUIRE(n.at("cnh2") == "0");

    std::map<std::string, std::string> p = eigen_strings(poi());
    REQUIRE(p.at("cp1") == "-m^2/(gamma^2)");   // -m^2 c^2
    REQUIRE(p.at("cp2") == "-3/4*m^2");         // m^2 S.S at s = 1/2

    std::map<std::string, std::string> d = eigen_strings(ads());
    REQUIRE(d.at("cd1") == "3/2*gamma^2*lambda^2");  // lambda^2 gamma^2 (9/4 + S.S)
    REQUIRE(d.at("cd2") == "3/16*gamma^4*lambda^2"); // -lambda^2 gamma^4 S.S / 4

    std::map<std::string, std::string> d0 = eigen_strings(build_ads_deformed(P("lambda"), P("m"), 0, "ds"));
    REQUIRE(d0.at("cd1") == "9/4*gamma^2*lambda^2");
    REQUIRE(d0.at("cd2") == "0");

    std::map<std::string, std::string> dp = eigen_strings(build_rep("ads-deformed", 0, +1));
    REQUIRE(dp.at("cd1") == "-9/4*gamma^2*lambdah^2"); // lambda^2 -> -lambdah^2
    REQUIRE(dp.at("cd2") == "0");

    // A non-central element is rejected with the operator as witness.
    REQUIRE_THROWS_WITH(
        casimir_eigenvalue(poi(), Element::gen(poi().algebra.basis, "K1")),
        Catch::Matchers::StartsWith("invariant does not act as a scalar in the representation"));
}

TEST_CASE("substitution is a morphism into operators") {
    const BasisPtr& gb = gal().algebra.basis;
    const BasisPtr& pb = poi().algebra.basis;

    REQUIRE(substitute_rep(Element::unit(pb), poi()) == DiffOp::identity(poi().ctx, 2));
    REQUIRE_THROWS_WITH(substitute_rep(Element::gen(gb, "Xi"), nh()),
                        "no representation image for generator 'Xi'");

    // The deformed time translation is the image of its defining element:
    // H' = 2 a1 K.P - 3 a1 m Xi with a1 = lambda / (2m) realizes the
    // flat-family deformation inside the flat realization ...
    Scalar a1 = P("lambda") / (P("m") * Scalar(2));
    Element kp = Element::zero(gb);
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        kp = kp + Element::gen(gb, "K" + n) * Element::gen(gb, "P" + n);
    }
    Element h_flat = kp.scaled(a1 * Scalar(2)) - Element::unit(gb, a1 * Scalar(3) * P("m"));
    REQUIRE(substitute_rep(h_flat, gal()) == nh().images.at("H"));

    // ... and H'' = 2 a1 K.P - (3 a1 / c^2) H does the same one level up,
    // where K.P itself takes the closed dilation form c omega (p.d + 3).
    Element kpp = Element::zero(pb);
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        kpp = kpp + Element::gen(pb, "K" + n) * Element::gen(pb, "P" + n);
    }
    REQUIRE(substitute_rep(kpp, poi()).str() ==
            "3*gamma*omega + gamma*p1*omega*d1 + gamma*p2*omega*d2 + gamma*p3*omega*d3");
    Scalar inv_c2 = P("gamma") * P("gamma");
    Element h_curved =
        kpp.scaled(a1 * Scalar(2)) - Element::gen(pb, "H").scaled(a1 * Scalar(3) * inv_c2);
    REQUIRE(substitute_rep(h_curved, poi()) == ads().images.at("H"));

    // Morphism property on random normal-ordered elements.
    JetRng rng(20260815);
    auto random_element = [&](const BasisPtr& b) {
        Element e = Element::zero(b);
        for (int t = 0; t < 3; ++t) {
            Element mono = Element::unit(b, rng.nonzero());
            int degree = static_cast<int>(rng.pick(1, 2));
            for (int f = 0; f < degree; ++f)
                mono = mono * Element::gen(b, static_cast<int>(rng.pick(0, b->size() - 1)));
            e = e + mono;
        }
        return e;
    };
    for (int trial = 0; trial < 3; ++trial) {
        Element x = random_element(pb), y = random_element(pb);
        REQUIRE(substitute_rep(x * y, poi()) ==
                substitute_rep(x, poi()) * substitute_rep(y, poi()));
    }
}

TEST_CASE("numeric jets independently confirm brackets and characters") {
    const std::uint64_t seed = 20260815;

    // The on-shell square root is represented exactly at the base point.
    JetRng rng(7);
    JetEnv env = make_jet_env(rng, poi());
    Jet w = jet_omega(env.pt, 3);
    Jet rho = Jet::constant(QOmega::of(env.pt.mc0 * env.pt.mc0), 3);
    for (int i = 1; i <= 3; ++i) {
        Jet p = jet_var(env.pt, i, 3);
        rho = rho + jet_mul(p, p, env.pt);
    }
    REQUIRE(jet_mul(w, w, env.pt) == rho);

    // Brackets, spot-checked on random generator pairs.
    for (const Rep* rep : {&gal(), &nh(), &poi(), &ads()}) {
        SpotReport report = spot_check_rep(*rep, seed, 12);
        INFO(rep->name);
        CAPTURE(report.failures);
        REQUIRE(report.seed == seed);
        REQUIRE(report.checked == 12);
        REQUIRE(report.ok());
    }
    Rep adsp = build_rep("ads-deformed", 1, +1);
    SpotReport plus = spot_check_rep(adsp, seed, 12);
    CAPTURE(plus.failures);
    REQUIRE(plus.ok());

    // A deliberately tampered image is caught, so the check is not vacuous.
    Rep bad = poi();
    bad.images.at("K1") = bad.images.at("K1") + DiffOp::partial(poi().ctx, 2, 2);
    SpotReport tampered = spot_check_rep(bad, seed, -1);
    REQUIRE_FALSE(tampered.ok());
    REQUIRE(tampered.checked == 45);

    // Central characters, including the curved s = 1/2 pair whose symbolic
    // evaluation is the most expensive computation in the suite.
    auto action = [&](const Rep& rep, const char* name, const Scalar& value) {
        for (auto& c : rep.algebra.casimirs)
            if (c.name == name) return spot_check_scalar_action(rep, c.element, value, 99);
        throw DomainError(std::string("no invariant named ") + name);
    };
    Scalar m = P("m"), g = P("gamma"), l = P("lambda"), lh = P("lambdah");
    REQUIRE(action(gal(), "eint", Scalar(2) * P("a") * m));
    REQUIRE(action(gal(), "espin", Scalar::rational(-3, 4) * m * m));
    REQUIRE(action(nh(), "cnh2", Scalar::zero()));
    REQUIRE(action(poi(), "cp1", Scalar::zero() - m * m / (g * g)));
    REQUIRE(action(poi(), "cp2", Scalar::rational(-3, 4) * m * m));
    REQUIRE(action(ads(), "cd1", Scalar::rational(3, 2) * g * g * l * l));
    REQUIRE(action(ads(), "cd2", Scalar::rational(3, 16) * g * g * g * g * l * l));
    REQUIRE(action(adsp, "cd1", Scalar::rational(-3, 2) * g * g * lh * lh));
    REQUIRE(action(adsp, "cd2", Scalar::rational(-3, 16) * g * g * g * g * lh * lh));
    REQUIRE_FALSE(action(poi(), "cp1", m * m));
}
