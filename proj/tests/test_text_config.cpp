#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qpmod/module_config.hpp"
#include "qpmod/sampling.hpp"
#include "qpmod/text.hpp"

using namespace qpmod;

namespace {

Monomial mono(std::initializer_list<std::pair<int, int>> ts, Mask mask = 0) {
    Monomial m;
    for (auto [i, e] : ts) m.exps[std::size_t(i)] = e;
    m.mask = mask;
    return m;
}

std::size_t error_pos(const std::string& s, int m = 1, int n = 2, int dim = -1) {
    try {
        parse_element(s, m, n, dim);
    } catch (const ParseError& e) {
        return e.pos();
    }
    FAIL("no parse error for \"" << s << "\"");
    return 0;
}

std::string natural_text(int m, int n) {
    MuVector mu(std::size_t(m + n + 1), Scalar(0));
    mu[0] = Scalar(1);
    return module_config_json(GlModule::natural(m, n), mu);
}

int config_code(const std::string& text) {
    try {
        parse_module_config(text);
    } catch (const ConfigError& e) {
        return e.exit_code();
    }
    return 0;
}

}  // namespace

TEST_CASE("grammar examples") {
    Signature sig = Signature::full(1, 2);
    ParsedElement e = parse_element("3/2*t0^2*t1^-1*z1*z2*D1", 1, 2);
    CHECK(e.kind == ElementKind::VectorField);
    CHECK(e.field == VectorField::make(SuperPoly::term(sig, mono({{0, 2}, {1, -1}}, 0b11), Scalar::fraction(3, 2)), 1));
    ParsedElement z = parse_element("z2*z1", 1, 2);
    CHECK(z.poly == -SuperPoly::zeta_mask(sig, 0b11));
    CHECK(format(z) == "-1*z1*z2");
    CHECK(format(parse_element("t0^0", 1, 2)) == "1");
    CHECK(format(SuperPoly(sig)) == "0");
    CHECK(format(parse_element("t1 - t1", 1, 2)) == "0");
}

TEST_CASE("scalars and signs") {
    Signature sig = Signature::full(1, 1);
    CHECK(parse_element("2-3i*t1", 1, 1).poly == SuperPoly::t(sig, 1) * Scalar(2, -3));
    CHECK(parse_element("2-t1", 1, 1).poly == SuperPoly::constant(sig, 2) - SuperPoly::t(sig, 1));
    CHECK(parse_element("i*z1", 1, 1).poly == SuperPoly::zeta(sig, 1) * Scalar::i());
    CHECK(parse_element("(1/2+i)*t1", 1, 1).poly == SuperPoly::t(sig, 1) * Scalar(mpq_class(1, 2), 1));
    CHECK(parse_element("-(t1-1)*D1", 1, 1).field == VectorField::make(SuperPoly::shifted(sig, 1), 1) * Scalar(-1));
    SuperPoly f = SuperPoly::t(sig, 0) * Scalar(-2, -3) + SuperPoly::t(sig, 1) * Scalar(0, -1);
    std::string text = format(f);
    CHECK(text == "(-1i)*t1-(2+3i)*t0");
    CHECK(parse_element(text, 1, 1).poly == f);
}

TEST_CASE("kinds") {
    CHECK(parse_element("t1", 1, 1).kind == ElementKind::Polynomial);
    CHECK(parse_element("t1*D1", 1, 1).kind == ElementKind::VectorField);
    CHECK(parse_element("t1+D1", 1, 1).kind == ElementKind::QPElement);
    ParsedElement w = parse_element("t1*e2 - z1*e0", 1, 1, 3);
    CHECK(w.kind == ElementKind::Tensor);
    CHECK(format(w) == "-1*z1*e0+1*t1*e2");
}

TEST_CASE("repeated zeta gives a warning") {
    ParsedElement e = parse_element("z1*z1 + t1", 1, 1);
    CHECK(e.poly == SuperPoly::t(Signature::full(1, 1), 1));
    REQUIRE(e.warnings.size() == 1);
    CHECK(e.warnings[0].find("position 1") != std::string::npos);
}

TEST_CASE("syntax errors carry positions") {
    CHECK(error_pos("") == 0);
    CHECK(error_pos("t1**z1") == 3);
    CHECK(error_pos("D1*t1") == 3);
    CHECK(error_pos("t3") == 1);
    CHECK(error_pos("z0") == 1);
    CHECK(error_pos("t1 + ") == 5);
    CHECK(error_pos("(t1-1") == 5);
    CHECK(error_pos("3/0") == 2);
    CHECK(error_pos("t1*e0") == 3);
    CHECK(error_pos("t1*e3", 1, 2, 3) == 4);
    CHECK(error_pos("e0 + t1", 1, 2, 3) == 5);
    CHECK(error_pos("t1 ? 2") == 3);
    try {
        parse_element("t1**z1", 1, 1);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("parse error at position 4:", 0) == 0);
    }
}

TEST_CASE("format/parse round trip on random elements") {
    Signature sig = Signature::full(2, 2);
    Sampler rng(21, 3);
    for (int s = 0; s < 200; ++s) {
        SuperPoly p = rng.poly(sig, rng.uniform(0, 4));
        CHECK(parse_element(format(p), 2, 2).poly == p);
        VectorField x = rng.field(sig, rng.uniform(0, 1), 3);
        CHECK(parse_element(format(x), 2, 2).field == x);
        TensorVec w = rng.tensor(sig, 5, 3);
        CHECK(parse_element(format(w), 2, 2, 5).tensor == w);
        std::string mixed = format(p, x);
        ParsedElement e = parse_element(mixed, 2, 2);
        CHECK(e.poly == p);
        CHECK(e.field == x);
        CHECK(format(e) == mixed);
    }
}

TEST_CASE("gl literals") {
    GlMatrix x = GlMatrix::elementary(1, 1, 0, 0) * Scalar(2) - GlMatrix::elementary(1, 1, 2, 1) +
                 GlMatrix::elementary(1, 1, 1, 2) * Scalar(mpq_class(1, 2), 1);
    CHECK(parse_gl(x.str(), 1, 1) == x);
    CHECK(parse_gl("0", 1, 1).is_zero());
    CHECK(parse_gl(" E_1_0 + 3/2*E_0_1", 1, 1) ==
          GlMatrix::elementary(1, 1, 1, 0) + GlMatrix::elementary(1, 1, 0, 1) * Scalar::fraction(3, 2));
    CHECK_THROWS_AS(parse_gl("E_3_0", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_gl("E_0_0 E_1_1", 1, 1), ParseError);
    CHECK_THROWS_AS(parse_gl("2E_0_0", 1, 1), ParseError);
}

TEST_CASE("smash element text") {
    Signature sig = Signature::full(1, 1);
    SmashElement x = make_X(sig, make_generator({1, 0}, 0, 1));
    CHECK(format(x) == "1*t0^-1#t0*D1-1*1#D1");
    CHECK(format(SmashElement::unit(sig, mono({}, 1), Scalar(2))) == "2*z1#1");
    CHECK(format(SmashElement(sig)) == "0");
}

TEST_CASE("shipped configs load") {
    for (const char* name : {"natural_1_1.json", "natural_2_2.json", "supertrace_plus_natural_1_1.json"}) {
        ModuleConfig cfg = load_module_config(std::string(QPMOD_SOURCE_DIR) + "/configs/" + name);
        CHECK(rep_check(cfg.omega).ok());
    }
    ModuleConfig nat = load_module_config(std::string(QPMOD_SOURCE_DIR) + "/configs/natural_1_1.json");
    CHECK(nat.omega.dim() == 3);
    CHECK(nat.mu.size() == 3);
    std::ifstream in(std::string(QPMOD_SOURCE_DIR) + "/configs/natural_1_1.json");
    std::stringstream file;
    file << in.rdbuf();
    CHECK(module_config_json(nat.omega, nat.mu) == file.str());
    CHECK(parse_module_config(module_config_json(nat.omega, nat.mu)).omega.act(0, 2) == nat.omega.act(0, 2));
}

TEST_CASE("config validation") {
    using nlohmann::json;
    json good = json::parse(natural_text(1, 1));
    CHECK(config_code(good.dump()) == 0);

    json bad_mu = good;
    bad_mu["mu"][2] = "1";
    CHECK(config_code(bad_mu.dump()) == 2);

    json missing = good;
    missing["action"].erase("E_0_0");
    try {
        parse_module_config(missing.dump());
        FAIL("accepted a config without E_0_0");
    } catch (const ConfigError& e) {
        CHECK(e.exit_code() == 2);
        CHECK(std::string(e.what()).find("missing action keys: E_0_0") != std::string::npos);
    }

    json unknown = good;
    unknown["action"]["E_9_0"] = unknown["action"]["E_0_0"];
    CHECK(config_code(unknown.dump()) == 2);

    json rows = good;
    rows["action"]["E_0_1"].erase(0);
    CHECK(config_code(rows.dump()) == 2);

    json parity = good;
    parity["parity"] = {0, 0};
    CHECK(config_code(parity.dump()) == 2);

    json scalar = good;
    scalar["action"]["E_0_0"][0][0] = 1;  // must be a string
    CHECK(config_code(scalar.dump()) == 2);

    CHECK(config_code("{ not json") == 2);
    CHECK(config_code("[1,2]") == 2);

    json perturbed = good;
    perturbed["action"]["E_0_1"][0][1] = "2";
    try {
        parse_module_config(perturbed.dump());
        FAIL("accepted a non-representation");
    } catch (const ConfigError& e) {
        CHECK(e.exit_code() == 1);
        CHECK(std::string(e.what()).find("rep_check failed") != std::string::npos);
    }
    CHECK_THROWS_AS(load_module_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("mu lists") {
    MuVector mu = parse_mu_csv("1/2,0,1+2i");
    REQUIRE(mu.size() == 3);
    CHECK(mu[2] == Scalar(1, 2));
    CHECK_THROWS_AS(parse_mu_csv("1,x"), ConfigError);
    CHECK_THROWS_AS(check_mu(1, 1, parse_mu_csv("1,1,1")), AlgebraError);
    CHECK_THROWS_AS(check_mu(1, 1, parse_mu_csv("1,1")), AlgebraError);
}
