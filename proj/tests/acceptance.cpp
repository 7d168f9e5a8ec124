// One PASS/FAIL line per acceptance criterion. Exit status 0 iff all pass.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qpmod/suites.hpp"

using namespace qpmod;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kDeg = 3;
constexpr double kTimeLimit = 10.0;

const std::vector<std::pair<int, int>> kShapes = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};

struct Outcome {
    bool ok = true;
    std::string note;
    void fail(const std::string& why) {
        if (ok) note = why;
        ok = false;
    }
};

SuiteReport run(const std::string& suite, int m, int n, int samples, Outcome& out) {
    SuiteConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.deg = kDeg;
    cfg.samples = samples;
    cfg.seed = kSeed;
    cfg.suites = {suite};
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r = run_suites(cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string where = suite + " at (m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
    if (secs >= kTimeLimit) out.fail(where + " took " + std::to_string(secs) + " s");
    for (const auto& c : r.checks)
        if (!c.ok()) out.fail(where + ": " + c.name + ": " + c.counterexample);
    return r;
}

// the named check must exist, have no failures and at least `min_cases` cases
void need(const SuiteReport& r, const std::string& prefix, long min_cases, Outcome& out, long exact = -1) {
    int found = 0;
    for (const auto& c : r.checks) {
        if (c.name.rfind(prefix, 0) != 0) continue;
        ++found;
        std::string where = "(" + std::to_string(r.config.m) + "," + std::to_string(r.config.n) + ") " + c.name;
        if (c.cases < min_cases) out.fail(where + ": only " + std::to_string(c.cases) + " cases");
        if (exact >= 0 && c.cases != exact) out.fail(where + ": expected exactly " + std::to_string(exact) + " cases");
        if (!c.ok()) out.fail(where + " failed");
    }
    if (found == 0) out.fail("missing check \"" + prefix + "\"");
}

struct Proc {
    int status;
    std::string output;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Proc shell(const std::vector<std::string>& args, bool merge_stderr) {
    std::string cmd = quote(QPMOD_CLI);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    Proc p{-1, ""};
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) p.output.append(buf.data(), got);
    int st = pclose(f);
    p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

Outcome koszul() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("koszul", m, n, 500, o);
        for (const char* c : {"supercommutativity", "associativity", "signed Leibniz, all tags"}) need(r, c, 500, o);
    }
    return o;
}

Outcome jacobi() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("jacobi", m, n, 200, o);
        for (std::string b : {"vf_bracket", "qp_bracket", "loop_bracket", "gl_bracket", "smash_commutator"}) {
            need(r, b + " antisymmetry", 200, o);
            need(r, b + " super-Jacobi", 200, o);
        }
    }
    return o;
}

Outcome filtration() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("filtration", m, n, 200, o);
        need(r, "mods2 residues", 100, o);
        need(r, "D eigenvalue", 100, o);
        need(r, "S^k = (S+)^k + S^k' at (1,3)", 100, o);
        need(r, "S^k = (S+)^k + S^k' at (2,3)", 100, o);
        need(r, "S^k Delta' = S^k Delta membership", 50, o);
    }
    return o;
}

Outcome theta() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("theta", m, n, 200, o);
        need(r, "theta is a homomorphism", 200, o);
        need(r, "kernel contains S^2 Delta", 50, o);
        need(r, "degree-one fields are not in the kernel", 50, o);
        long N = m + n + 1;
        need(r, "table entries", N * N, o, N * N);
    }
    return o;
}

Outcome centralizer() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport c = run("centralizer", m, n, 200, o);
        need(c, "[X, 1#delta] = 0", 50, o);
        need(c, "[X, a#1] = 0 for 20 monomials", 50, o);
        SuiteReport p = run("psi", m, n, 200, o);
        need(p, "Psi preserves brackets", 100, o);
    }
    return o;
}

Outcome qp() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("qp", m, n, 200, o);
        int complex_mu = 0, real_mu = 0;
        for (const auto& c : r.checks) {
            if (c.name.rfind("axiom (", 0) != 0) continue;
            if (c.cases < 200 || !c.ok()) o.fail(c.name);
            (c.name.find('i', c.name.find("mu=")) != std::string::npos ? complex_mu : real_mu)++;
        }
        // seven axioms for each mu
        if (complex_mu != 7 || real_mu != 7) o.fail("expected 7 axioms for each of a real and a complex mu");
        need(r, "phihat -> 0 breaks axiom (6)", 1, o);
    }
    return o;
}

Outcome equalities() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("equalities", m, n, 200, o);
        for (int k = 1; k <= 5; ++k) need(r, "identity (" + std::to_string(k) + ")", 100, o);
    }
    return o;
}

Outcome loop() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("loop", m, n, 200, o);
        need(r, "L(M) module law for A#k", 200, o);
        need(r, "L(M) module law for L(g)", 200, o);
        need(r, "Leibniz rule", 200, o);
        need(r, "V_A and L(M) actions agree", 100, o);
        need(r, "loop_der_correspond preserves brackets", 100, o);
    }
    return o;
}

Outcome phi() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        long N = m + n + 1;
        SuiteReport r = run("phi", m, n, 200, o);
        need(r, "Phi respects all elementary brackets", N * N * N * N, o, N * N * N * N);
        need(r, "Phi(E)(1 (x) v) = 1 (x) E v", N * N * N, o, N * N * N);
        need(r, "bridge", 100, o);
        SuiteReport a = run("annihilate", m, n, 200, o);
        need(a, "S^2 Delta annihilates", 50, o);
    }
    return o;
}

Outcome iso() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("iso", m, n, 200, o);
        need(r, "Theta is equivariant", 100, o);
        need(r, "Theta is bijective", 1, o);
    }
    return o;
}

Outcome parser() {
    Outcome o;
    for (auto [m, n] : kShapes) {
        SuiteReport r = run("roundtrip", m, n, 500, o);
        need(r, "format/parse round trip", 500, o);
    }
    static const std::vector<std::string> bad = {
        "",       "t",     "t1^",    "3/0*t1", "z0",    "t1**z1", "D1*t1", "(t1-1", "t1)",  "2*D1*D2",
        "t1^x",   "x1",    "1/",     "Q0",     "z1 z2", "t99",    "+",     "t1-",   "3/2*", "t1*(D1",
    };
    int good = 0;
    for (const auto& s : bad) {
        Proc p = shell({"filt-deg", "--m", "1", "--n", "1", "--expr", s}, true);
        if (p.status == 2 && p.output.find("position") != std::string::npos) ++good;
        else o.fail("\"" + s + "\" gave exit " + std::to_string(p.status) + ": " + p.output);
    }
    if (good != 20) o.fail(std::to_string(good) + "/20 malformed inputs rejected correctly");
    return o;
}

Outcome determinism() {
    Outcome o;
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 2}}) {
        std::vector<std::string> args = {"check", "all", "--m", std::to_string(m), "--n", std::to_string(n),
                                         "--seed", std::to_string(kSeed), "--json"};
        Proc a = shell(args, false), b = shell(args, false);
        if (a.status != 0 || b.status != 0) o.fail("check all exited " + std::to_string(a.status));
        if (a.output.empty() || a.output != b.output) o.fail("JSON summaries differ");
        if (a.output.find("\"seed\": 7") == std::string::npos) o.fail("seed missing from the summary");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 Koszul: supercommutativity, associativity, signed Leibniz (500 samples)", koszul},
        {"2 Jacobi: antisymmetry and super-Jacobi for all five brackets (200 samples)", jacobi},
        {"3 Filtration: mods2, D-eigenvalue, power-less at (1,3),(2,3), Delta/Delta'", filtration},
        {"4 theta: homomorphism, kernel S^2 Delta, all table entries", theta},
        {"5 T: centralizer identities, Psi bracket preservation", centralizer},
        {"6 QP axioms (1)-(7), real and complex mu, phihat -> 0 breaks (6)", qp},
        {"7 Derived identities (1)-(5)", equalities},
        {"8 Loop: module laws, Leibniz, V_A identification, loop_der_correspond", loop},
        {"9 Phi: all bracket pairs, Phi(E)(1 (x) v), bridge, S^2 Delta annihilation", phi},
        {"10 Theta: equivariance and bijectivity on the truncation", iso},
        {"11 Parser: 500 round trips, 20 malformed inputs exit 2 with a position", parser},
        {"12 Determinism: byte-identical JSON summaries", determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << name;
        if (!o.ok) {
            std::cout << "\n       " << o.note;
            ++failed;
        }
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - std::size_t(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
