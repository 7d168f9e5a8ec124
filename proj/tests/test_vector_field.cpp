#include "doctest.h"

#include "qpmod/qp_algebra.hpp"
#include "qpmod/sampling.hpp"

using namespace qpmod;

namespace {

Monomial mono(std::initializer_list<std::pair<int, int>> ts, Mask mask = 0) {
    Monomial m;
    for (auto [i, e] : ts) m.exps[std::size_t(i)] = e;
    m.mask = mask;
    return m;
}

std::vector<Scalar> ints(std::initializer_list<int> v) {
    std::vector<Scalar> out;
    for (int x : v) out.push_back(Scalar(x));
    return out;
}

Scalar sgn(int p, int q) { return (p & q) ? Scalar(-1) : Scalar(1); }

}  // namespace

TEST_CASE("vf_apply examples") {
    Signature sig = Signature::full(1, 2);
    VectorField t1d1 = VectorField::make(SuperPoly::t(sig, 1), 1);
    CHECK(vf_apply(t1d1, SuperPoly::t(sig, 1, 2)) == SuperPoly::t(sig, 1, 3) * Scalar(2));
    VectorField z1q1 = VectorField::make(SuperPoly::zeta(sig, 1), 1 + 1);
    SuperPoly z12 = SuperPoly::zeta_mask(sig, 0b11);
    CHECK(vf_apply(z1q1, z12) == z12);
    SuperPoly f = SuperPoly::shifted(sig, 0).pow(2) * SuperPoly::zeta(sig, 1);
    CHECK(vf_apply(degree_operator(sig), f) == f * Scalar(3));
}

TEST_CASE("vf_bracket examples") {
    Signature sig = Signature::full(1, 1);
    VectorField a = VectorField::make(SuperPoly::t(sig, 1), 1);
    VectorField b = VectorField::make(SuperPoly::t(sig, 1, -1), 1);
    CHECK(vf_bracket(a, b) == VectorField::tag(sig, 1) * Scalar(-2));
    VectorField z = VectorField::make(SuperPoly::zeta(sig, 1), 1);
    CHECK(vf_bracket(z, z).is_zero());
    VectorField q = VectorField::tag(sig, 2);
    VectorField zq = VectorField::make(SuperPoly::zeta(sig, 1), 2);
    CHECK(vf_bracket(q, zq) == q);
}

TEST_CASE("vf_bracket is the operator supercommutator") {
    Signature sig = Signature::full(2, 2);
    Sampler rng(17, 3);
    for (int s = 0; s < 100; ++s) {
        int px = rng.uniform(0, 1), py = rng.uniform(0, 1);
        VectorField x = rng.field(sig, px), y = rng.field(sig, py);
        SuperPoly f = rng.poly(sig, 3);
        SuperPoly rhs = vf_apply(x, vf_apply(y, f)) - vf_apply(y, vf_apply(x, f)) * sgn(px, py);
        CHECK(vf_apply(vf_bracket(x, y), f) == rhs);
    }
}

TEST_CASE("Delta and Delta' conversion") {
    Signature sig = Signature::full(2, 1);
    VectorField x = VectorField::make(SuperPoly::t(sig, 1), 1);  // t1 d1
    VectorField xp = x.in_basis(Basis::DeltaPrime);
    CHECK(xp.coefficient(1) == SuperPoly::t(sig, 1, 2));
    CHECK(xp == x);
    Sampler rng(2, 3);
    for (int s = 0; s < 50; ++s) {
        VectorField y = rng.field(sig, rng.uniform(0, 1), 3);
        CHECK(y.in_basis(Basis::DeltaPrime).in_basis(Basis::Delta).terms() == y.terms());
    }
}

TEST_CASE("special elements and their weights") {
    Signature sig = Signature::full(2, 3);
    SpecialSpec odd{SpecialKind::OddShift, 0, 0, 2, 1, {}, 1, 0};
    VectorField e = special_partial(sig, odd);
    CHECK(e == VectorField::make(SuperPoly::shifted(sig, 0).pow(2), 2 + 1, Basis::DeltaPrime));

    SpecialSpec odd2{SpecialKind::OddShift, 0, 1, 2, 1, {}, 2, 0b101};
    WeightVector w = weight_of(special_partial(sig, odd2));
    CHECK(w.h == ints({1, -1, 1}));
    CHECK(w.hprime == ints({0, 2, 0}));

    SpecialSpec cross{SpecialKind::Cross, 0, 1, 2, 1, {1, 0, 3}, 1, 0};
    WeightVector wc = weight_of(special_partial(sig, cross));
    CHECK(wc.h == ints({0, 0, 0}));
    CHECK(wc.hprime == ints({0, 2, 3}));

    SpecialSpec dbl{SpecialKind::Double, 0, 1, 1, 2, {0, 0, 1}, 1, 0b010};
    WeightVector wd = weight_of(special_partial(sig, dbl));
    CHECK(wd.hprime == ints({0, 2, 1}));
    CHECK(wd.h == ints({0, 1, 0}));
    CHECK_THROWS_AS(special_partial(sig, SpecialSpec{SpecialKind::Double, 1, 1, 1, 1, {0, 0, 0}, 1, 0}), AlgebraError);
}

TEST_CASE("weight_of examples") {
    Signature sig = Signature::full(1, 2);
    VectorField z1q1 = VectorField::make(SuperPoly::zeta(sig, 1), 2);
    CHECK(weight_of(z1q1).h == ints({0, 0}));
    VectorField y = VectorField::make(SuperPoly::shifted(sig, 0) * SuperPoly::zeta(sig, 1), 0, Basis::DeltaPrime);
    WeightVector w = weight_of(y);
    CHECK(w.hprime == ints({0, 0}));
    CHECK(w.h == ints({1, 0}));
    // (t0 - 1)^2 (t1 - 1) zeta_2 d/dzeta_1
    SuperPoly c = SuperPoly::shifted(sig, 0).pow(2) * SuperPoly::shifted(sig, 1) * SuperPoly::zeta(sig, 2);
    WeightVector w2 = weight_of(VectorField::make(c, 1 + 1));
    CHECK(w2.hprime == ints({2, 1}));
    CHECK(w2.h == ints({-1, 1}));
    CHECK_THROWS_AS(weight_of(SuperPoly::t(sig, 1)), NotHomogeneous);
}

TEST_CASE("qp_product examples") {
    Signature dot = Signature::dotted(2, 1);
    QPElement t1 = QPElement::poly(SuperPoly::t(dot, 1));
    QPElement d1 = QPElement::field(VectorField::tag(dot, 1));
    QPElement d2 = QPElement::field(VectorField::tag(dot, 2));
    CHECK(qp_product(t1, d1) == QPElement::field(VectorField::make(SuperPoly::t(dot, 1), 1)));
    QPElement z = QPElement::poly(SuperPoly::zeta(dot, 1));
    CHECK(qp_product(z, z).is_zero());
    QPElement one = QPElement::poly(SuperPoly::one(dot));
    CHECK(qp_product(one + d1, one + d2) == one + d1 + d2);
}

TEST_CASE("qp_bracket examples") {
    Signature dot = Signature::dotted(1, 1);
    QPElement t1 = QPElement::poly(SuperPoly::t(dot, 1));
    QPElement d1 = QPElement::field(VectorField::tag(dot, 1));
    CHECK(qp_bracket(t1, d1) == t1 * Scalar(-1));
    CHECK(qp_bracket(d1, t1) == t1);
    CHECK(qp_bracket(t1, QPElement::poly(SuperPoly::zeta(dot, 1))).is_zero());
    CHECK(qp_act(d1, SuperPoly::t(dot, 1, 3)) == SuperPoly::t(dot, 1, 3) * Scalar(3));
}

TEST_CASE("loop_bracket examples") {
    Signature dot = Signature::dotted(1, 1);
    QPElement one = QPElement::poly(SuperPoly::one(dot));
    LoopElement a = LoopElement::single(1, one), b = LoopElement::single(-1, one);
    CHECK(loop_bracket(a, b) == LoopElement::single(0, one * Scalar(-2)));
    Sampler rng(4, 2);
    for (int s = 0; s < 30; ++s) {
        QPElement x = QPElement::field(rng.field(dot, rng.uniform(0, 1)));
        QPElement y = QPElement::field(rng.field(dot, rng.uniform(0, 1)));
        int r = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
        LoopElement got = loop_bracket(LoopElement::single(r, x), LoopElement::single(t, y));
        LoopElement expect(dot);
        expect.add(r + t, qp_bracket(x, y));
        CHECK(got == expect);
        CHECK(loop_bracket(LoopElement::single(0, x), LoopElement::single(0, y)) ==
              [&] {
                  LoopElement e(dot);
                  e.add(0, qp_bracket(x, y));
                  return e;
              }());
    }
}

TEST_CASE("loop_der_correspond examples") {
    Signature dot = Signature::dotted(1, 1), full = Signature::full(1, 1);
    QPElement one = QPElement::poly(SuperPoly::one(dot));
    CHECK(loop_der_correspond(LoopElement::single(1, one)) == VectorField::make(SuperPoly::t(full, 0), 0));
    CHECK(loop_der_correspond(LoopElement::single(1, one)) ==
          VectorField::make(SuperPoly::t(full, 0, 2), 0, Basis::DeltaPrime));
    QPElement q1 = QPElement::field(VectorField::tag(dot, 2));
    CHECK(loop_der_correspond(LoopElement::single(0, q1)) == VectorField::tag(full, 2));
    Sampler rng(8, 2);
    for (int s = 0; s < 50; ++s) {
        LoopElement x = rng.loop(dot, rng.uniform(0, 1)), y = rng.loop(dot, rng.uniform(0, 1));
        CHECK(loop_der_correspond(loop_bracket(x, y)) ==
              vf_bracket(loop_der_correspond(x), loop_der_correspond(y)));
        SuperPoly f = rng.poly(full, 2);
        CHECK(loop_apply(x, f) == vf_apply(loop_der_correspond(x), f));
    }
}
