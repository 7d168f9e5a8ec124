#include "doctest.h"

#include <functional>
#include <map>

#include "qpmod/filtration.hpp"
#include "qpmod/sampling.hpp"

using namespace qpmod;

namespace {

Monomial mono(std::initializer_list<std::pair<int, int>> ts, Mask mask = 0) {
    Monomial m;
    for (auto [i, e] : ts) m.exps[std::size_t(i)] = e;
    m.mask = mask;
    return m;
}

// Filtration degree by derivatives at t = 1: for each zeta_I part g, the
// lowest order of a nonvanishing mixed derivative of g at 1, plus |I|.
mpq_class falling(int e, int k) {
    mpq_class out = 1;
    for (int j = 0; j < k; ++j) out *= e - j;
    return out;
}

int derivative_oracle(const SuperPoly& f, int cap) {
    const Signature& sig = f.sig();
    int best = kInfiniteDegree;
    std::map<Mask, std::vector<std::pair<Monomial, Scalar>>> parts;
    for (const auto& [m, c] : f.terms()) parts[m.mask].push_back({m, c});
    int lo = sig.first_even(), vars = sig.m + 1 - lo;
    for (const auto& [mask, terms] : parts) {
        int odd = std::popcount(mask);
        // enumerate multi-indices by total order
        for (int order = 0; order + odd < std::min(best, cap); ++order) {
            std::vector<int> beta(std::size_t(vars), 0);
            bool found = false;
            std::function<void(int, int)> rec = [&](int slot, int left) {
                if (found) return;
                if (slot == vars - 1) {
                    beta[std::size_t(slot)] = left;
                    Scalar sum(0);
                    for (const auto& [m, c] : terms) {
                        mpq_class w = 1;
                        for (int v = 0; v < vars; ++v) w *= falling(m.exps[std::size_t(lo + v)], beta[std::size_t(v)]);
                        sum += c * Scalar(w);
                    }
                    if (!sum.is_zero()) found = true;
                    return;
                }
                for (int b = 0; b <= left; ++b) {
                    beta[std::size_t(slot)] = b;
                    rec(slot + 1, left - b);
                }
            };
            rec(0, order);
            if (found) {
                best = std::min(best, order + odd);
                break;
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("scalar arithmetic and text") {
    Scalar a(mpq_class(1, 2), mpq_class(-3));
    CHECK(a.str() == "1/2-3i");
    CHECK(Scalar::parse("1/2-3i") == a);
    CHECK(Scalar::parse("-1i") == -Scalar::i());
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(a * a.conj() == Scalar(mpq_class(37, 4)));
    CHECK((a / a).is_one());
    CHECK(Scalar::fraction(6, -4) == Scalar(mpq_class(-3, 2)));
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
}

TEST_CASE("Grassmann products and signs") {
    Signature sig = Signature::full(1, 3);
    SuperPoly z1 = SuperPoly::zeta(sig, 1), z2 = SuperPoly::zeta(sig, 2), z3 = SuperPoly::zeta(sig, 3);
    CHECK(z1 * z2 == SuperPoly::zeta_mask(sig, 0b011));
    CHECK(z2 * z1 == -SuperPoly::zeta_mask(sig, 0b011));
    CHECK((z1 * z1).is_zero());
    CHECK(z3 * z1 * z2 == SuperPoly::zeta_mask(sig, 0b111));
    CHECK(inversions(0b100, 0b011) == 2);
    CHECK(grassmann_sign(0b010, 0b001) == -1);
    CHECK(grassmann_sign(0b001, 0b010) == 1);
    CHECK_FALSE(grassmann_sign(0b011, 0b010).has_value());
    SuperPoly u = SuperPoly::shifted(sig, 1);
    SuperPoly v = SuperPoly::t(sig, 1, -1) - SuperPoly::one(sig);
    CHECK(u * v == SuperPoly::constant(sig, 2) - SuperPoly::t(sig, 1) - SuperPoly::t(sig, 1, -1));
}

TEST_CASE("derivations") {
    Signature sig = Signature::full(2, 3);
    SuperPoly f = SuperPoly::term(sig, mono({{1, 3}, {2, -2}}));
    CHECK(derive({DerivKind::Euler, 1}, f) == f * Scalar(3));
    CHECK(derive({DerivKind::Plain, 2}, f) == SuperPoly::term(sig, mono({{1, 3}, {2, -3}}), -2));
    SuperPoly z12 = SuperPoly::zeta_mask(sig, 0b011);
    CHECK(derive({DerivKind::Odd, 2}, z12) == -SuperPoly::zeta(sig, 1));
    CHECK(derive({DerivKind::Odd, 1}, SuperPoly::zeta_mask(sig, 0b111)) == SuperPoly::zeta_mask(sig, 0b110));
    CHECK(derive({DerivKind::Odd, 3}, z12).is_zero());
    // d/dt_i = t_i^-1 d_i
    Sampler rng(3, 3);
    for (int s = 0; s < 50; ++s) {
        SuperPoly g = rng.poly(sig, 3);
        CHECK(derive({DerivKind::Euler, 2}, g) == SuperPoly::t(sig, 2) * derive({DerivKind::Plain, 2}, g));
    }
}

TEST_CASE("dotted signatures reject t0") {
    Signature dot = Signature::dotted(1, 1);
    CHECK_THROWS_AS(SuperPoly::t(dot, 0), AlgebraError);
    CHECK_THROWS_AS(derive({DerivKind::Euler, 0}, SuperPoly::one(dot)), AlgebraError);
    CHECK_THROWS_AS(SuperPoly::one(dot) * SuperPoly::one(Signature::full(1, 1)), AlgebraError);
}

TEST_CASE("filtration degree examples") {
    Signature sig = Signature::full(1, 1);
    SuperPoly one = SuperPoly::one(sig);
    SuperPoly u0 = SuperPoly::shifted(sig, 0);
    CHECK(filt_degree(u0 * u0 * SuperPoly::zeta(sig, 1)) == 3);
    SuperPoly r = SuperPoly::t(sig, 0) * SuperPoly::t(sig, 1) - one - u0 - SuperPoly::shifted(sig, 1);
    CHECK(filt_degree(r) == 2);
    CHECK(r == u0 * SuperPoly::shifted(sig, 1));
    CHECK(filt_degree(SuperPoly::t(sig, 1, -1) - one) == 1);
    CHECK(filt_degree(one) == 0);
    CHECK(filt_degree(SuperPoly(sig)) == kInfiniteDegree);
    // t^-1 - 1 - (1 - t) = (t - 1)^2 / t
    SuperPoly d = SuperPoly::t(sig, 1, -1) - one - (one - SuperPoly::t(sig, 1));
    CHECK(filt_degree(d) == 2);
}

TEST_CASE("filtration degree agrees with the derivative oracle") {
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 2}}) {
        Signature sig = Signature::full(m, n);
        Sampler rng(11 + m, 3);
        for (int s = 0; s < 150; ++s) {
            // products of random S elements reach higher degrees
            SuperPoly f = rng.poly(sig, 2);
            int factors = rng.uniform(0, 3);
            for (int j = 0; j < factors; ++j) {
                SuperPoly g = rng.coin() ? SuperPoly::term(sig, rng.laurent(sig)) - SuperPoly::one(sig)
                                         : SuperPoly::zeta(sig, rng.uniform(1, n));
                f = f * g;
            }
            if (rng.coin()) f += rng.poly(sig, 1) * SuperPoly::shifted(sig, 0).pow(5);
            INFO(s);
            CHECK(filt_degree(f) == derivative_oracle(f, 12));
        }
    }
}

TEST_CASE("cleared shift and unshift are inverse up to the clearing monomial") {
    Signature sig = Signature::full(2, 1);
    Sampler rng(5, 3);
    for (int s = 0; s < 50; ++s) {
        SuperPoly f = rng.poly(sig, 3);
        Monomial clear;
        for (const auto& [m, c] : f.terms())
            for (int i = 0; i <= 2; ++i)
                clear.exps[std::size_t(i)] = std::max(clear.exps[std::size_t(i)], -m.exps[std::size_t(i)]);
        CHECK(unshift(cleared_shift(f), sig) == SuperPoly::term(sig, clear) * f);
    }
}

TEST_CASE("Taylor data of a Laurent monomial") {
    Signature sig = Signature::full(1, 1);
    // t^-1 = 1 - u + u^2 - ...
    ShiftedPoly u = taylor_truncated(SuperPoly::t(sig, 1, -1), 3);
    CHECK(u.coeff(Monomial{}) == Scalar(1));
    CHECK(u.coeff(mono({{1, 1}})) == Scalar(-1));
    CHECK(u.coeff(mono({{1, 2}})) == Scalar(1));
    CHECK(u.size() == 3);
    CHECK(binomial(-1, 3) == Scalar(-1));
    CHECK(binomial(5, 2) == Scalar(10));
}

TEST_CASE("plus_part splits S^k elements") {
    Signature sig = Signature::full(2, 1);
    SuperPoly one = SuperPoly::one(sig);
    // (t1^-1 - 1)^2 zeta1 is in S^3
    SuperPoly f = (SuperPoly::t(sig, 1, -1) - one).pow(2) * SuperPoly::zeta(sig, 1);
    SuperPoly p = plus_part(f, 3, 5);
    CHECK(filt_degree(f - p) >= 5);
    for (const auto& [m, c] : cleared_shift(p)) CHECK(shifted_degree(m) >= 3);
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i <= 2; ++i) CHECK(m.exps[std::size_t(i)] >= 0);
}
