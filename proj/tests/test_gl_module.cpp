#include "doctest.h"

#include <algorithm>

#include "qpmod/gl_module.hpp"

using namespace qpmod;

namespace {

bool has_pair(const RepReport& r, int a, int b, int c, int d) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const RepViolation& v) {
        return v.a == a && v.b == b && v.c == c && v.d == d;
    });
}

std::vector<Scalar> column(const Matrix& x, int c) {
    std::vector<Scalar> out;
    for (int r = 0; r < x.rows(); ++r) out.push_back(x.at(r, c));
    return out;
}

}  // namespace

TEST_CASE("natural module") {
    GlModule nat = GlModule::natural(1, 1);
    CHECK(nat.dim() == 3);
    CHECK(nat.parities() == std::vector<int>{0, 0, 1});
    CHECK(column(nat.act(0, 1), 1) == std::vector<Scalar>{1, 0, 0});
    CHECK(column(nat.act(0, 1), 0) == std::vector<Scalar>{0, 0, 0});
    CHECK(rep_check(nat).ok());
    CHECK(rep_check(GlModule::natural(2, 2)).ok());
    // act_of is linear in the matrix entries
    GlMatrix x = GlMatrix::elementary(1, 1, 0, 2) * Scalar(3) + GlMatrix::elementary(1, 1, 1, 1);
    CHECK(nat.act_of(x) == nat.act(0, 2) * Scalar(3) + nat.act(1, 1));
}

TEST_CASE("rep_check detects perturbations") {
    GlModule bad = GlModule::natural(1, 1);
    bad.act(0, 1).at(0, 1) += Scalar(1);
    RepReport r = rep_check(bad);
    CHECK_FALSE(r.ok());
    CHECK(has_pair(r, 0, 1, 1, 0));
    CHECK(r.violations.front().describe().find("pair") != std::string::npos);

    GlModule wrong_parity = GlModule::natural(1, 1);
    wrong_parity.act(0, 0).at(0, 2) = Scalar(1);
    RepReport rp = rep_check(wrong_parity);
    CHECK(has_pair(rp, 0, 0, -1, -1));

    CHECK(rep_check(GlModule::zero(2, 1, 3)).ok());
}

TEST_CASE("supertrace and direct sums are modules") {
    GlModule st = GlModule::supertrace(1, 2, Scalar(mpq_class(2, 3), mpq_class(1)));
    CHECK(st.dim() == 1);
    CHECK(rep_check(st).ok());
    CHECK(st.act(2, 2).at(0, 0) == Scalar(mpq_class(-2, 3), mpq_class(-1)));
    GlModule sum = GlModule::direct_sum(st, GlModule::natural(1, 2));
    CHECK(sum.dim() == 5);
    CHECK(rep_check(sum).ok());
}

TEST_CASE("weight decomposition") {
    WeightReport nat = weight_decompose(GlModule::natural(1, 1));
    CHECK(nat.spaces.size() == 3);
    CHECK(nat.max_multiplicity == 1);
    for (const auto& s : nat.spaces) CHECK(s.basis.size() == 1);

    GlModule two = GlModule::direct_sum(GlModule::natural(1, 1), GlModule::natural(1, 1));
    WeightReport w2 = weight_decompose(two);
    CHECK(w2.spaces.size() == 3);
    CHECK(w2.max_multiplicity == 2);

    WeightReport z = weight_decompose(GlModule::zero(1, 1, 4));
    REQUIRE(z.spaces.size() == 1);
    CHECK(z.spaces[0].basis.size() == 4);
    CHECK(z.spaces[0].weight == std::vector<Scalar>(3, Scalar(0)));
}

TEST_CASE("weight of a natural basis vector") {
    // e_a has weight eps_a
    WeightReport r = weight_decompose(GlModule::natural(2, 1));
    for (const auto& s : r.spaces) {
        REQUIRE(s.basis.size() == 1);
        int hot = int(std::find(s.weight.begin(), s.weight.end(), Scalar(1)) - s.weight.begin());
        CHECK(std::count(s.weight.begin(), s.weight.end(), Scalar(0)) == 3);
        CHECK(s.basis[0][std::size_t(hot)] != Scalar(0));
    }
}

TEST_CASE("non-diagonalizable Cartan action is reported") {
    GlModule jordan = GlModule::zero(1, 1, 2);
    jordan.act(0, 0).at(0, 1) = Scalar(1);
    CHECK_THROWS_AS(weight_decompose(jordan), NotDiagonalizable);
}
