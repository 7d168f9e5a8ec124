#include "doctest.h"

#include "qpmod/sampling.hpp"
#include "qpmod/smash.hpp"

using namespace qpmod;

namespace {

Monomial mono(std::initializer_list<std::pair<int, int>> ts, Mask mask = 0) {
    Monomial m;
    for (auto [i, e] : ts) m.exps[std::size_t(i)] = e;
    m.mask = mask;
    return m;
}

GlMatrix E(int m, int n, int a, int b) { return GlMatrix::elementary(m, n, a, b); }

}  // namespace

TEST_CASE("smash commutator examples") {
    Signature sig = Signature::full(1, 1);
    SmashElement t1d1 = SmashElement::gen(sig, mono({{1, 1}}), Monomial{}, 1);
    SmashElement d1 = SmashElement::gen(sig, Monomial{}, Monomial{}, 1);
    CHECK(smash_commutator(t1d1, d1) == t1d1 * Scalar(-1));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(smash_commutator(SmashElement::gen(sig, Monomial{}, Monomial{}, a),
                                   SmashElement::gen(sig, Monomial{}, Monomial{}, b))
                      .is_zero());
    // [a # b d, c # 1] lands in A # 1
    Sampler rng(6, 2);
    for (int s = 0; s < 40; ++s) {
        SmashElement u = rng.smash(sig, rng.uniform(0, 1));
        SmashElement c = SmashElement::unit(sig, rng.monomial(sig));
        SmashElement br = smash_commutator(u, c);
        for (const auto& [key, coeff] : br.terms()) CHECK(key.tag == kUnitTag);
    }
    // [1 # d1, t1 # 1] = d1(t1) # 1
    CHECK(smash_commutator(d1, SmashElement::unit(sig, mono({{1, 1}}))) == SmashElement::unit(sig, mono({{1, 1}})));
}

TEST_CASE("X generators") {
    Signature sig = Signature::full(1, 2);
    for (int alpha = 0; alpha <= 3; ++alpha) {
        SmashElement x = make_X(sig, make_generator({1, 0}, 0, alpha));
        SmashElement expect = SmashElement::gen(sig, mono({{0, -1}}), mono({{0, 1}}), alpha) -
                              SmashElement::gen(sig, Monomial{}, Monomial{}, alpha);
        CHECK(x == expect);
    }
    CHECK(tau(0b101, 0b010) == 1);
    CHECK(tau(0b010, 0b101) == 1);
    CHECK(tau(0b001, 0b110) == 0);
    // r = 0, J = {1}, d/dzeta_2
    SmashElement x = make_X(sig, make_generator({0, 0}, 0b01, 1 + 2));
    SmashElement expect = SmashElement::gen(sig, Monomial{}, mono({}, 0b01), 3) -
                          SmashElement::gen(sig, mono({}, 0b01), Monomial{}, 3);
    CHECK(x == expect);
    CHECK(make_X(sig, make_generator({0, 0}, 0, 1)).is_zero());
}

TEST_CASE("X generators in the full (1,3) signature with a two-element J") {
    Signature sig = Signature::full(1, 3);
    // J = {1,3}: subsets I with signs (-1)^{|I| + tau(I, J \ I)}
    SmashElement x = make_X(sig, make_generator({0, 1}, 0b101, 0));
    SmashElement expect(sig);
    Monomial tpos = mono({{1, 1}}), tneg = mono({{1, -1}});
    auto part = [&](Mask I, Mask rest, int sign) {
        Monomial a = tneg, b = tpos;
        a.mask = I;
        b.mask = rest;
        expect += SmashElement::gen(sig, a, b, 0, Scalar(sign));
    };
    part(0, 0b101, 1);
    part(0b001, 0b100, -1);
    part(0b100, 0b001, -1 * -1);  // tau({3},{1}) = 1
    part(0b101, 0, 1);
    CHECK(x == expect);
}

TEST_CASE("Psi on generators") {
    Signature sig = Signature::full(2, 1);
    Sampler rng(12, 3);
    for (int s = 0; s < 50; ++s) {
        XGenerator g = rng.generator(sig);
        VectorField img = psi_map(sig, {{g, Scalar(1)}});
        Monomial r = g.shift;
        SuperPoly coeff = SuperPoly::term(sig, r);
        if (r.mask == 0) coeff -= SuperPoly::one(sig);
        CHECK(img == VectorField::make(coeff, g.alpha));
        CHECK(psi_map(make_X(sig, g)) == img);
    }
}

TEST_CASE("express_in_generators inverts make_X") {
    Signature sig = Signature::full(1, 2);
    Sampler rng(13, 2);
    for (int s = 0; s < 50; ++s) {
        XCombination combo;
        for (int j = 0; j < 3; ++j) combo[rng.generator(sig)] += rng.scalar();
        std::erase_if(combo, [](const auto& kv) { return kv.second.is_zero(); });
        CHECK(express_in_generators(make_X(sig, combo)) == combo);
    }
    CHECK_THROWS_AS(express_in_generators(SmashElement::unit(sig, Monomial{})), AlgebraError);
    CHECK_THROWS_AS(express_in_generators(SmashElement::gen(sig, mono({{1, 1}}), Monomial{}, 1)), AlgebraError);
    CHECK_THROWS_AS(psi_preimage(VectorField::tag(sig, 1)), AlgebraError);
}

TEST_CASE("theta examples") {
    Signature sig = Signature::full(1, 2);
    CHECK(theta_project(VectorField::make(SuperPoly::shifted(sig, 1), 0)) == E(1, 2, 1, 0));
    SuperPoly f = SuperPoly::t(sig, 0) * SuperPoly::t(sig, 1) - SuperPoly::one(sig);
    CHECK(theta_project(VectorField::make(f, 0)) == E(1, 2, 0, 0) + E(1, 2, 1, 0));
    CHECK(theta_project(VectorField::make(SuperPoly::zeta(sig, 1), 1 + 2)) == E(1, 2, 2, 3));
    CHECK(theta_project(VectorField::make(f, 0)).str() == "E_0_0+E_1_0");
    // t1^-1 - 1 = -(t1 - 1) mod S^2
    CHECK(theta_project(VectorField::make(SuperPoly::t(sig, 1, -1) - SuperPoly::one(sig), 1)) == E(1, 2, 1, 1) * Scalar(-1));
    CHECK(theta_project(VectorField::make(SuperPoly::zeta_mask(sig, 0b11), 0)).is_zero());
}

TEST_CASE("gl_bracket examples") {
    CHECK(gl_bracket(E(1, 1, 0, 1), E(1, 1, 1, 0)) == E(1, 1, 0, 0) - E(1, 1, 1, 1));
    CHECK(gl_bracket(E(1, 1, 0, 2), E(1, 1, 2, 0)) == E(1, 1, 0, 0) + E(1, 1, 2, 2));
    CHECK(gl_bracket(E(1, 1, 0, 0), E(1, 1, 0, 1)) == E(1, 1, 0, 1));
    CHECK(E(1, 1, 2, 2).supertrace() == Scalar(-1));
    CHECK(E(1, 1, 0, 2).parity() == 1);
    CHECK((E(1, 1, 0, 2) + E(1, 1, 0, 0)).parity() == std::nullopt);
    GlMatrix x = E(2, 1, 0, 0) * Scalar(2) - E(2, 1, 3, 3);
    CHECK(x.str() == "2*E_0_0-E_3_3");
}
