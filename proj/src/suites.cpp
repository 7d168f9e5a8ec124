#include "qpmod/suites.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "qpmod/filtration.hpp"
#include "qpmod/sampling.hpp"
#include "qpmod/text.hpp"

namespace qpmod {

namespace {

// Accumulates one named check; exceptions inside a case count as failures.
class Recorder {
public:
    Recorder(std::vector<CheckResult>& out, std::string suite) : out_(out), suite_(std::move(suite)) {}

    void run(const std::string& name, long count, const std::function<bool(long, std::string&)>& body) {
        CheckResult r{suite_, name, 0, 0, ""};
        for (long i = 0; i < count; ++i) {
            std::string why;
            bool ok = false;
            try {
                ok = body(i, why);
            } catch (const std::exception& e) {
                why = "exception: " + std::string(e.what()) + (why.empty() ? "" : " [" + why + "]");
            }
            ++r.cases;
            if (!ok) {
                ++r.failures;
                if (r.counterexample.empty()) r.counterexample = "case " + std::to_string(i) + ": " + why;
            }
        }
        out_.push_back(std::move(r));
    }

private:
    std::vector<CheckResult>& out_;
    std::string suite_;
};

std::uint64_t suite_seed(std::uint64_t seed, const std::string& name) {
    // FNV-1a over the suite name, mixed with the user seed
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
    return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

Scalar ksign(int p, int q) { return (p & q) ? Scalar(-1) : Scalar(1); }

template <class T>
int par(const T& x) {
    return x.parity().value_or(0);
}

MuVector complex_mu(int m, int n) {
    MuVector mu(std::size_t(m + n + 1), Scalar(0));
    for (int i = 0; i <= m; ++i) mu[std::size_t(i)] = Scalar(mpq_class(1, 3), mpq_class(i + 1, 2));
    return mu;
}

struct Ctx {
    const SuiteConfig& cfg;
    GlModule omega;
    MuVector mu;
    Signature full;
    Signature dotted;
};

// random element of S of the given parity: monomial times (t^r - 1) or zeta_k
SuperPoly s_element(Sampler& rng, const Signature& sig, int parity) {
    for (;;) {
        if (rng.coin()) {
            Monomial r = rng.laurent(sig);
            if (r.is_one()) r.exps[std::size_t(sig.m)] = 1;
            SuperPoly f = SuperPoly::term(sig, rng.monomial(sig, parity), rng.scalar());
            return f * (SuperPoly::term(sig, r) - SuperPoly::one(sig));
        }
        SuperPoly f = SuperPoly::term(sig, rng.monomial(sig, parity ^ 1), rng.scalar()) *
                      SuperPoly::zeta(sig, rng.uniform(1, sig.n));
        if (!f.is_zero()) return f;
    }
}

SuperPoly s2_element(Sampler& rng, const Signature& sig, int parity) {
    for (;;) {
        int p = rng.uniform(0, 1);
        SuperPoly f = s_element(rng, sig, p) * s_element(rng, sig, p ^ parity);
        if (!f.is_zero()) return f;
    }
}

// S-coefficient vector field, homogeneous
VectorField s_field(Sampler& rng, const Signature& sig, int parity, bool square) {
    VectorField x(sig, Basis::Delta);
    for (int j = 0; j < 2; ++j) {
        int alpha = rng.alpha(sig);
        int q = parity ^ sig.alpha_parity(alpha);
        x += VectorField::make(square ? s2_element(rng, sig, q) : s_element(rng, sig, q), alpha);
    }
    return x;
}

std::string show(const SuperPoly& p) { return format(p); }
std::string show(const VectorField& x) { return format(x); }
std::string show(const QPElement& x) { return format(x); }
std::string show(const TensorVec& w) { return format(w); }
std::string show(const GlMatrix& g) { return g.str(); }
std::string show(const LoopElement& u) {
    std::string s;
    for (const auto& [r, x] : u.terms()) s += (s.empty() ? "" : " + ") + std::string("t0^") + std::to_string(r) + "(x)[" + format(x) + "]";
    return s.empty() ? "0" : s;
}
std::string show(const SmashElement& u) {
    std::string s;
    for (const auto& [k, c] : u.terms()) {
        s += (s.empty() ? "" : " + ") + ("(" + c.str() + ")") + "*[" + format(SuperPoly::term(u.sig(), k.a)) + "]#";
        if (k.tag == kUnitTag) s += "1";
        else s += "[" + format(VectorField::make(SuperPoly::term(u.sig(), k.b), k.tag)) + "]";
    }
    return s.empty() ? "0" : s;
}
std::string show(const XGenerator& g, int m) {
    std::string s = "X(r=(";
    for (int i = 0; i <= m; ++i) s += (i ? "," : "") + std::to_string(g.shift.exps[std::size_t(i)]);
    s += "),J={";
    bool first = true;
    for (int k : zeta_indices(g.shift.mask)) {
        s += (first ? "" : ",") + std::to_string(k);
        first = false;
    }
    return s + "},tag=" + std::to_string(g.alpha) + ")";
}

// ---------------------------------------------------------------------------

int oracle_sign(Mask a, Mask b) {
    // bubble sort the concatenated index list and count swaps
    std::vector<int> v = zeta_indices(a);
    for (int k : zeta_indices(b)) v.push_back(k);
    int swaps = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j + 1 < v.size() - i; ++j)
            if (v[j] > v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                ++swaps;
            }
    return swaps;
}

void suite_koszul(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature& sig = c.full;
    long N = c.cfg.samples;
    rec.run("supercommutativity", N, [&](long, std::string& why) {
        int p = rng.uniform(0, 1), q = rng.uniform(0, 1);
        SuperPoly f = rng.poly(sig, p, 2), g = rng.poly(sig, q, 2);
        why = show(f) + " ; " + show(g);
        return f * g == g * f * ksign(p, q);
    });
    rec.run("associativity", N, [&](long, std::string& why) {
        SuperPoly f = rng.poly(sig, 2), g = rng.poly(sig, 2), h = rng.poly(sig, 2);
        why = show(f) + " ; " + show(g) + " ; " + show(h);
        return (f * g) * h == f * (g * h);
    });
    rec.run("grassmann sign oracle", N, [&](long, std::string& why) {
        Mask a = rng.mask(sig.n), b = rng.mask(sig.n);
        SuperPoly got = SuperPoly::zeta_mask(sig, a) * SuperPoly::zeta_mask(sig, b);
        why = "masks " + std::to_string(a) + "," + std::to_string(b);
        if (a & b) return got.is_zero();
        return got == SuperPoly::zeta_mask(sig, a | b) * sign_scalar(oracle_sign(a, b));
    });
    std::vector<Deriv> tags;
    for (int i = sig.first_even(); i <= sig.m; ++i) {
        tags.push_back({DerivKind::Euler, i});
        tags.push_back({DerivKind::Plain, i});
    }
    for (int k = 1; k <= sig.n; ++k) tags.push_back({DerivKind::Odd, k});
    rec.run("signed Leibniz, all tags", N, [&](long, std::string& why) {
        int p = rng.uniform(0, 1);
        SuperPoly f = rng.poly(sig, p, 2), g = rng.poly(sig, 2);
        why = show(f) + " ; " + show(g);
        for (const Deriv& d : tags) {
            SuperPoly rhs = derive(d, f) * g + f * derive(d, g) * ksign(d.parity(), p);
            if (!(derive(d, f * g) == rhs)) {
                why += " tag kind " + std::to_string(int(d.kind)) + " index " + std::to_string(d.index);
                return false;
            }
        }
        return true;
    });
}

template <class T, class Br, class Gen>
void jacobi_pair(Recorder& rec, const std::string& name, long N, Br bracket, Gen gen) {
    rec.run(name + " antisymmetry", N, [&](long, std::string& why) {
        auto [x, px] = gen();
        auto [y, py] = gen();
        why = show(x) + " ; " + show(y);
        T lhs = bracket(x, y);
        T rhs = bracket(y, x) * (-ksign(px, py));
        return lhs == rhs;
    });
    rec.run(name + " super-Jacobi", N, [&](long, std::string& why) {
        auto [x, px] = gen();
        auto [y, py] = gen();
        auto [z, pz] = gen();
        why = show(x) + " ; " + show(y) + " ; " + show(z);
        T sum = bracket(x, bracket(y, z)) * ksign(px, pz);
        sum += bracket(y, bracket(z, x)) * ksign(py, px);
        sum += bracket(z, bracket(x, y)) * ksign(pz, py);
        return sum.is_zero();
    });
}

void suite_jacobi(Ctx& c, Sampler& rng, Recorder& rec) {
    long N = c.cfg.samples;
    const Signature full = c.full, dotted = c.dotted;
    jacobi_pair<VectorField>(rec, "vf_bracket", N, vf_bracket, [&] {
        int p = rng.uniform(0, 1);
        VectorField x = rng.field(full, p);
        if (rng.coin()) x = x.in_basis(Basis::DeltaPrime);
        return std::pair{x, p};
    });
    jacobi_pair<QPElement>(rec, "qp_bracket", N, qp_bracket, [&] {
        int p = rng.uniform(0, 1);
        return std::pair{rng.qp(dotted, p), p};
    });
    jacobi_pair<LoopElement>(rec, "loop_bracket", N, loop_bracket, [&] {
        int p = rng.uniform(0, 1);
        return std::pair{rng.loop(dotted, p), p};
    });
    jacobi_pair<GlMatrix>(rec, "gl_bracket", N, [](const GlMatrix& a, const GlMatrix& b) { return gl_bracket(a, b); },
                          [&] {
                              int p = rng.uniform(0, 1);
                              return std::pair{rng.gl(c.cfg.m, c.cfg.n, p), p};
                          });
    jacobi_pair<SmashElement>(rec, "smash_commutator", N, smash_commutator, [&] {
        int p = rng.uniform(0, 1);
        return std::pair{rng.smash(full, p), p};
    });
    rec.run("vf_bracket acts as the operator commutator", N, [&](long, std::string& why) {
        int px = rng.uniform(0, 1), py = rng.uniform(0, 1);
        VectorField x = rng.field(full, px), y = rng.field(full, py);
        SuperPoly f = rng.poly(full, 2);
        why = show(x) + " ; " + show(y) + " ; " + show(f);
        SuperPoly rhs = vf_apply(x, vf_apply(y, f)) - vf_apply(y, vf_apply(x, f)) * ksign(px, py);
        return vf_apply(vf_bracket(x, y), f) == rhs;
    });
    rec.run("qp_product supercommutative, associative, pi multiplicative", N, [&](long, std::string& why) {
        int px = rng.uniform(0, 1), py = rng.uniform(0, 1);
        QPElement x = rng.qp(dotted, px), y = rng.qp(dotted, py), z = rng.qp(dotted, 0);
        why = show(x) + " ; " + show(y) + " ; " + show(z);
        return qp_product(x, y) == qp_product(y, x) * ksign(px, py) &&
               qp_product(qp_product(x, y), z) == qp_product(x, qp_product(y, z)) &&
               pi(qp_product(x, y)) == pi(x) * pi(y);
    });
}

void suite_filtration(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature sig = c.full;
    long N = c.cfg.samples;
    SuperPoly one = SuperPoly::one(sig);
    rec.run("mods2 residues in S^2", N, [&](long, std::string& why) {
        Monomial r = rng.laurent(sig);
        SuperPoly tr = SuperPoly::term(sig, r);
        SuperPoly lin = tr - one;
        for (int i = 0; i <= sig.m; ++i) lin -= SuperPoly::shifted(sig, i) * Scalar(r.exps[std::size_t(i)]);
        why = "t^r = " + show(tr);
        if (filt_degree(lin) < 2) return false;
        for (int k = 1; k <= sig.n; ++k) {
            SuperPoly z = SuperPoly::zeta(sig, k);
            if (filt_degree(tr * z - z) < 2) return false;
        }
        return true;
    });
    VectorField D = degree_operator(sig);
    rec.run("D eigenvalue on shifted-homogeneous elements", N, [&](long, std::string& why) {
        int ell = rng.uniform(0, 4);
        SuperPoly f(sig);
        for (int term = 0; term < 2; ++term) {
            Mask I = 0;
            int odd = std::min(rng.uniform(0, ell), sig.n);
            while (std::popcount(I) < odd) I |= zeta_bit(rng.uniform(1, sig.n));
            SuperPoly g = SuperPoly::zeta_mask(sig, I) * rng.scalar();
            for (int j = odd; j < ell; ++j) g = SuperPoly::shifted(sig, rng.uniform(0, sig.m)) * g;
            f += g;
        }
        why = show(f) + " degree " + std::to_string(ell);
        return vf_apply(D, f) == f * Scalar(ell);
    });
    for (auto kk : {std::pair{1, 3}, std::pair{2, 3}}) {
        const int k = kk.first, kp = kk.second;
        std::string tag = "(" + std::to_string(k) + "," + std::to_string(kp) + ")";
        // basis elements of S^k: prod (t_j^{+-1} - 1)^{p_j} zeta_I with total degree k
        auto basis_element = [&](std::vector<std::pair<int, int>>& inverted) {
            Mask I = 0;
            int odd = rng.uniform(0, std::min(k, sig.n));
            while (std::popcount(I) < odd) I |= zeta_bit(rng.uniform(1, sig.n));
            SuperPoly f = SuperPoly::zeta_mask(sig, I);
            SuperPoly literal = f;
            std::vector<int> pow(std::size_t(sig.m + 1), 0), inv(std::size_t(sig.m + 1), 0);
            for (int j = odd; j < k; ++j) {
                int v = rng.uniform(0, sig.m);
                if (rng.coin()) ++inv[std::size_t(v)];
                else ++pow[std::size_t(v)];
            }
            for (int v = 0; v <= sig.m; ++v) {
                SuperPoly up = SuperPoly::shifted(sig, v).pow(pow[std::size_t(v)]);
                SuperPoly down = (SuperPoly::t(sig, v, -1) - one).pow(inv[std::size_t(v)]);
                f = f * up * down;
                literal = literal * up * (one - SuperPoly::t(sig, v)).pow(inv[std::size_t(v)]);
                if (inv[std::size_t(v)]) inverted.push_back({v, inv[std::size_t(v)]});
            }
            return std::pair{f, literal};
        };
        rec.run("S^k = (S+)^k + S^k' at " + tag, N, [&](long, std::string& why) {
            std::vector<std::pair<int, int>> inv;
            auto [f, literal] = basis_element(inv);
            why = show(f);
            if (filt_degree(f) < k) return false;
            SuperPoly p = plus_part(f, k, kp);
            for (const auto& [mono, coeff] : p.terms())
                for (int i = 0; i < kMaxEven; ++i)
                    if (mono.exps[std::size_t(i)] < 0) return false;
            // p in (S+)^k: every shifted term of degree >= k
            for (const auto& [mono, coeff] : cleared_shift(p))
                if (shifted_degree(mono) < k) return false;
            return filt_degree(f - p) >= kp;
        });
        rec.run("single (t^-1 - 1)^r -> (1 - t)^r rewrite gains one degree at " + tag, N,
                [&](long, std::string& why) {
                    std::vector<std::pair<int, int>> inv;
                    auto [f, literal] = basis_element(inv);
                    why = show(f);
                    if (inv.empty()) return f == literal;
                    return filt_degree(f - literal) >= k + 1;
                });
    }
    rec.run("filtration superadditivity", N, [&](long, std::string& why) {
        SuperPoly f = rng.coin() ? s_element(rng, sig, rng.uniform(0, 1)) : rng.poly(sig, 2);
        SuperPoly g = rng.coin() ? s2_element(rng, sig, rng.uniform(0, 1)) : s_element(rng, sig, 0);
        why = show(f) + " ; " + show(g);
        int a = filt_degree(f), b = filt_degree(g);
        if (a == kInfiniteDegree || b == kInfiniteDegree) return true;
        return filt_degree(f * g) >= a + b;
    });
    long M = std::max<long>(50, N / 4);
    rec.run("S^k Delta' = S^k Delta membership", M, [&](long, std::string& why) {
        int k = rng.uniform(1, 2);
        VectorField x = s_field(rng, sig, rng.uniform(0, 1), k == 2);
        VectorField xp = x.in_basis(Basis::DeltaPrime);
        VectorField back = xp.in_basis(Basis::Delta);
        why = show(x);
        // coefficients of both representations stay in S^k
        for (int alpha = 0; alpha <= sig.m + sig.n; ++alpha) {
            if (filt_degree(x.coefficient(alpha)) < k) return false;
            if (filt_degree(xp.coefficient(alpha)) < k) return false;
        }
        // and in the opposite direction, starting from Delta'
        VectorField yp(sig, Basis::DeltaPrime);
        for (const auto& [key, cf] : x.terms()) yp.add_term(key.mono, key.alpha, cf);
        VectorField y = yp.in_basis(Basis::Delta);
        for (int alpha = 0; alpha <= sig.m + sig.n; ++alpha)
            if (filt_degree(y.coefficient(alpha)) < k) return false;
        return back.terms() == x.terms() && y.in_basis(Basis::DeltaPrime).terms() == yp.terms();
    });
    rec.run("basis conversion commutes with vf_bracket", M, [&](long, std::string& why) {
        VectorField x = rng.field(sig, rng.uniform(0, 1)), y = rng.field(sig, rng.uniform(0, 1));
        why = show(x) + " ; " + show(y);
        VectorField a = vf_bracket(x.in_basis(Basis::DeltaPrime), y.in_basis(Basis::DeltaPrime));
        return a.in_basis(Basis::Delta).terms() == vf_bracket(x, y).terms();
    });
}

void suite_theta(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature sig = c.full;
    long N = c.cfg.samples;
    rec.run("theta is a homomorphism", N, [&](long, std::string& why) {
        VectorField x = s_field(rng, sig, rng.uniform(0, 1), false);
        VectorField y = s_field(rng, sig, rng.uniform(0, 1), false);
        why = show(x) + " ; " + show(y);
        return theta_project(vf_bracket(x, y)) == gl_bracket(theta_project(x), theta_project(y));
    });
    long K = std::max<long>(50, N / 4);
    rec.run("kernel contains S^2 Delta", K, [&](long, std::string& why) {
        VectorField x = s_field(rng, sig, rng.uniform(0, 1), true);
        why = show(x);
        return theta_project(x).is_zero();
    });
    rec.run("degree-one fields are not in the kernel", K, [&](long, std::string& why) {
        int alpha = rng.alpha(sig);
        // t^s (t^r - 1) or t^s zeta_k: filtration degree exactly one
        SuperPoly f = SuperPoly::term(sig, rng.laurent(sig), rng.scalar());
        if (rng.coin()) {
            Monomial r = rng.laurent(sig);
            if (r.is_one()) r.exps[0] = 1;
            f = f * (SuperPoly::term(sig, r) - SuperPoly::one(sig));
        } else {
            f = f * SuperPoly::zeta(sig, rng.uniform(1, sig.n));
        }
        VectorField x = VectorField::make(f, alpha) + VectorField::make(s2_element(rng, sig, 0), rng.alpha(sig, 0));
        why = show(x);
        return filt_degree(f) == 1 && !theta_project(x).is_zero();
    });
    int N2 = sig.m + sig.n + 1;
    rec.run("table entries", long(N2) * N2, [&](long idx, std::string& why) {
        int a = int(idx) / N2, b = int(idx) % N2;
        SuperPoly coeff = a <= sig.m ? SuperPoly::shifted(sig, a) : SuperPoly::zeta(sig, a - sig.m);
        VectorField x = VectorField::make(coeff, b);
        why = show(x);
        return theta_project(x) == GlMatrix::elementary(sig.m, sig.n, a, b);
    });
    rec.run("(t0 t1 - 1) d0 -> E_0_0 + E_1_0", 1, [&](long, std::string& why) {
        SuperPoly f = SuperPoly::t(sig, 0) * SuperPoly::t(sig, 1) - SuperPoly::one(sig);
        GlMatrix e = GlMatrix::elementary(sig.m, sig.n, 0, 0) + GlMatrix::elementary(sig.m, sig.n, 1, 0);
        GlMatrix got = theta_project(VectorField::make(f, 0));
        why = got.str();
        return got == e;
    });
}

void suite_centralizer(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature sig = c.full;
    long N = std::max<long>(50, c.cfg.samples / 4);
    rec.run("X has degree 0", N, [&](long, std::string& why) {
        XGenerator g = rng.generator(sig);
        why = show(g, sig.m);
        SmashElement X = make_X(sig, g);
        for (const auto& [key, cf] : X.terms())
            for (int d : X.term_degree(key))
                if (d != 0) return false;
        return true;
    });
    rec.run("[X, 1#delta] = 0 for all delta in Delta", N, [&](long, std::string& why) {
        XGenerator g = rng.generator(sig);
        why = show(g, sig.m);
        SmashElement X = make_X(sig, g);
        for (int alpha = 0; alpha <= sig.m + sig.n; ++alpha) {
            SmashElement d = SmashElement::gen(sig, Monomial{}, Monomial{}, alpha);
            if (!smash_commutator(X, d).is_zero()) {
                why += " delta tag " + std::to_string(alpha);
                return false;
            }
        }
        return true;
    });
    rec.run("[X, a#1] = 0 for 20 monomials a", N, [&](long, std::string& why) {
        XGenerator g = rng.generator(sig);
        why = show(g, sig.m);
        SmashElement X = make_X(sig, g);
        for (int j = 0; j < 20; ++j) {
            Monomial a = rng.monomial(sig);
            if (!smash_commutator(X, SmashElement::unit(sig, a)).is_zero()) {
                why += " a = " + show(SuperPoly::term(sig, a));
                return false;
            }
        }
        return true;
    });
}

void suite_psi(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature sig = c.full;
    long N = std::max<long>(100, c.cfg.samples / 2);
    rec.run("Psi preserves brackets", N, [&](long, std::string& why) {
        XGenerator g = rng.generator(sig), h = rng.generator(sig);
        why = show(g, sig.m) + " ; " + show(h, sig.m);
        SmashElement br = smash_commutator(make_X(sig, g), make_X(sig, h));
        VectorField lhs = psi_map(sig, express_in_generators(br));
        VectorField rhs = vf_bracket(psi_map(sig, {{g, Scalar(1)}}), psi_map(sig, {{h, Scalar(1)}}));
        return lhs == rhs;
    });
    rec.run("Psi image lies in S Delta and inverts", N, [&](long, std::string& why) {
        XCombination combo;
        for (int j = 0; j < 2; ++j) combo[rng.generator(sig)] += rng.scalar();
        std::erase_if(combo, [](const auto& kv) { return kv.second.is_zero(); });
        VectorField x = psi_map(sig, combo);
        why = show(x);
        for (int alpha = 0; alpha <= sig.m + sig.n; ++alpha)
            if (filt_degree(x.coefficient(alpha)) < 1) return false;
        return psi_preimage(x) == combo;
    });
    int cases = sig.m + 1 + sig.n;
    rec.run("displayed special cases", cases, [&](long idx, std::string& why) {
        int i = int(idx);
        if (i <= sig.m) {
            // t_i # d/dt_i - t_i d/dt_i -> -(t_i - 1) d/dt_i
            Monomial ti, tinv;
            ti.exps[std::size_t(i)] = 1;
            tinv.exps[std::size_t(i)] = -1;
            SmashElement u = SmashElement::gen(sig, ti, tinv, i) - SmashElement::gen(sig, Monomial{}, Monomial{}, i);
            VectorField expect = VectorField::make(-SuperPoly::shifted(sig, i), i, Basis::DeltaPrime);
            why = show(u);
            return psi_map(u) == expect;
        }
        int k = i - sig.m;
        Monomial zk;
        zk.mask = zeta_bit(k);
        SmashElement u = SmashElement::gen(sig, zk, Monomial{}, sig.m + k) -
                         SmashElement::gen(sig, Monomial{}, zk, sig.m + k);
        why = show(u);
        return psi_map(u) == -VectorField::make(SuperPoly::zeta(sig, k), sig.m + k);
    });
}

QPStructure structure(const Ctx& c, const MuVector& mu) { return QPStructure::shen_larsson(c.omega, mu); }

AxiomCase axiom_case(Sampler& rng, const QPStructure& S) {
    const Signature& sig = S.sig();
    QPElement x = rng.qp(sig, rng.uniform(0, 1)), y = rng.qp(sig, rng.uniform(0, 1));
    SuperPoly a = rng.poly(sig, rng.uniform(0, 1), 2), b = rng.poly(sig, rng.uniform(0, 1), 2);
    return {x, y, a, b, rng.tensor(S, rng.uniform(0, 1), 2)};
}

std::string show(const AxiomCase& ac) {
    return "x=" + show(ac.x) + " y=" + show(ac.y) + " a=" + show(ac.a) + " b=" + show(ac.b) + " w=" + show(ac.w);
}

std::string mu_text(const MuVector& mu) {
    std::string s;
    for (const auto& v : mu) s += (s.empty() ? "" : ",") + v.str();
    return s;
}

void suite_qp(Ctx& c, Sampler& rng, Recorder& rec) {
    long N = c.cfg.samples;
    MuVector second = complex_mu(c.cfg.m, c.cfg.n);
    if (second == c.mu) second = default_mu(c.cfg.m, c.cfg.n);
    for (const MuVector& mu : {c.mu, second}) {
        QPStructure S = structure(c, mu);
        for (int ax = 1; ax <= 7; ++ax)
            rec.run("axiom (" + std::to_string(ax) + ") mu=" + mu_text(mu), N, [&, ax](long, std::string& why) {
                AxiomCase ac = axiom_case(rng, S);
                why = show(ac);
                return qp_axiom_defect(ax, ac, S).is_zero();
            });
    }
    // with phihat replaced by zero, axiom (6) must break somewhere
    QPStructure S = structure(c, c.mu);
    QPStructure bad = S.with_phihat([](const QPElement&, const TensorVec& w) { return TensorVec(w.sig()); });
    rec.run("phihat -> 0 breaks axiom (6)", 1, [&](long, std::string& why) {
        for (long i = 0; i < N; ++i)
            if (!qp_axiom_defect(6, axiom_case(rng, bad), bad).is_zero()) return true;
        why = "no counterexample in " + std::to_string(N) + " cases";
        return false;
    });
}

void suite_equalities(Ctx& c, Sampler& rng, Recorder& rec) {
    long N = std::max<long>(100, c.cfg.samples / 2);
    QPStructure S = structure(c, c.mu);
    const Signature& sig = S.sig();
    for (int which = 1; which <= 5; ++which)
        rec.run("identity (" + std::to_string(which) + ")", N, [&, which](long, std::string& why) {
            SuperPoly a = rng.poly(sig, rng.uniform(0, 1), 2);
            if (which == 3) a = SuperPoly::term(sig, rng.laurent(sig));
            if (which == 4) a = SuperPoly::zeta_mask(sig, rng.mask(sig.n));
            SuperPoly b = rng.poly(sig, rng.uniform(0, 1), 2);
            QPElement d = rng.qp(sig, rng.uniform(0, 1));
            TensorVec w = rng.tensor(S, rng.uniform(0, 1), 2);
            why = "a=" + show(a) + " b=" + show(b) + " d=" + show(d) + " w=" + show(w);
            return lemma_defect(which, a, b, d, w, S).is_zero();
        });
}

TensorVec at_degree(const TensorVec& v, int k) {
    TensorVec out(v.sig().as_full());
    for (const auto& [key, cf] : v.terms()) {
        TensorKey kk = key;
        kk.mono.exps[0] = k;
        out.add_term(kk, cf);
    }
    return out;
}

void suite_loop(Ctx& c, Sampler& rng, Recorder& rec) {
    long N = c.cfg.samples;
    QPStructure S = structure(c, c.mu);
    const Signature dotted = S.sig(), full = c.full;
    auto random_w = [&] { return at_degree(rng.tensor(S, rng.uniform(0, 1), 2), rng.uniform(-c.cfg.deg, c.cfg.deg)); };
    rec.run("L(M) module law for A#k", N, [&](long, std::string& why) {
        SmashElement X = rng.smash(full, rng.uniform(0, 1)), Y = rng.smash(full, rng.uniform(0, 1));
        TensorVec w = random_w();
        why = show(X) + " ; " + show(Y) + " ; " + show(w);
        TensorVec rhs = loop_act(X, loop_act(Y, w, S), S) - loop_act(Y, loop_act(X, w, S), S) * ksign(par(X), par(Y));
        return loop_act(smash_commutator(X, Y), w, S) == rhs;
    });
    rec.run("L(M) module law for L(g)", N, [&](long, std::string& why) {
        int px = rng.uniform(0, 1), py = rng.uniform(0, 1);
        LoopElement x = rng.loop(dotted, px), y = rng.loop(dotted, py);
        TensorVec w = random_w();
        why = show(x) + " ; " + show(y) + " ; " + show(w);
        TensorVec rhs = loop_g_act(x, loop_g_act(y, w, S), S) - loop_g_act(y, loop_g_act(x, w, S), S) * ksign(px, py);
        return loop_g_act(loop_bracket(x, y), w, S) == rhs;
    });
    rec.run("Leibniz rule for the A-action", N, [&](long, std::string& why) {
        int px = rng.uniform(0, 1), pa = rng.uniform(0, 1);
        LoopElement x = rng.loop(dotted, px);
        SuperPoly a = rng.poly(full, pa, 2);
        TensorVec w = random_w();
        why = show(x) + " ; " + show(a) + " ; " + show(w);
        TensorVec rhs = loop_mult(loop_apply(x, a), w, S) + loop_mult(a, loop_g_act(x, w, S), S) * ksign(px, pa);
        return loop_g_act(x, loop_mult(a, w, S), S) == rhs;
    });
    long M = std::max<long>(100, N / 2);
    rec.run("V_A and L(M) actions agree", M, [&](long, std::string& why) {
        SuperPoly f = rng.poly(full, 2);
        int alpha = rng.alpha(full);
        TensorVec w = rng.tensor(full, S.omega().dim() ? S.omega().dim() : 1, 3);
        if (S.omega().dim() == 0) w = TensorVec(full);
        why = show(f) + " tag " + std::to_string(alpha) + " ; " + show(w);
        SmashElement u = SmashElement::tensor(SuperPoly::one(full), VectorField::make(f, alpha));
        return shen_act(f, alpha, w, S.omega(), S.mu()) == loop_act(u, w, S) && shen_mult(f, w) == loop_mult(f, w, S);
    });
    rec.run("loop_der_correspond preserves brackets", M, [&](long, std::string& why) {
        LoopElement x = rng.loop(dotted, rng.uniform(0, 1)), y = rng.loop(dotted, rng.uniform(0, 1));
        why = show(x) + " ; " + show(y);
        SuperPoly f = rng.poly(full, 2);
        return loop_der_correspond(loop_bracket(x, y)) == vf_bracket(loop_der_correspond(x), loop_der_correspond(y)) &&
               loop_apply(x, f) == vf_apply(loop_der_correspond(x), f);
    });
}

SuperPoly s2_any(Sampler& rng, const Signature& sig) { return s2_element(rng, sig, rng.uniform(0, 1)); }

void suite_phi(Ctx& c, Sampler& rng, Recorder& rec) {
    QPStructure S = structure(c, c.mu);
    const Signature full = c.full;
    OmegaData data = omega_data(S);
    int Nn = S.omega().size();
    long pairs = long(Nn) * Nn * Nn * Nn;
    rec.run("Phi respects all elementary brackets", pairs, [&](long idx, std::string& why) {
        int a = int(idx / (Nn * Nn * Nn)), b = int(idx / (Nn * Nn)) % Nn, cc = int(idx / Nn) % Nn, d = int(idx % Nn);
        GlMatrix e1 = GlMatrix::elementary(c.cfg.m, c.cfg.n, a, b), e2 = GlMatrix::elementary(c.cfg.m, c.cfg.n, cc, d);
        why = "[" + e1.str() + ", " + e2.str() + "]";
        int p1 = e1.parity().value_or(0), p2 = e2.parity().value_or(0);
        Matrix lhs(int(data.basis.size()), int(data.basis.size()));
        GlMatrix br = gl_bracket(e1, e2);
        for (int r = 0; r < Nn; ++r)
            for (int s = 0; s < Nn; ++s)
                if (!br.at(r, s).is_zero()) lhs += data.rep.act(r, s) * br.at(r, s);
        return lhs == super_commutator(data.rep.act(a, b), p1, data.rep.act(cc, d), p2);
    });
    int dim = S.omega().dim();
    rec.run("Phi(E)(1 (x) v) = 1 (x) E v", long(Nn) * Nn * std::max(dim, 1), [&](long idx, std::string& why) {
        if (dim == 0) return phi_operator(0, 0, S.zero(), S).is_zero();
        int a = int(idx / (Nn * dim)), b = int(idx / dim) % Nn, v = int(idx % dim);
        TensorVec u = TensorVec::basis(S.sig(), Monomial{}, v);
        TensorVec expect(S.sig());
        for (int r = 0; r < dim; ++r)
            if (!S.omega().act(a, b).at(r, v).is_zero()) expect.add_term({Monomial{}, r}, S.omega().act(a, b).at(r, v));
        why = "E_" + std::to_string(a) + "_" + std::to_string(b) + " on e" + std::to_string(v);
        return phi_operator(a, b, u, S) == expect;
    });
    long N = std::max<long>(100, c.cfg.samples / 2);
    rec.run("bridge t_act(X,u) = Phi(theta(Psi(X)))u", N, [&](long, std::string& why) {
        XGenerator g = rng.generator(full);
        why = show(g, full.m);
        GlMatrix e = theta_project(psi_map(full, {{g, Scalar(1)}}));
        for (const auto& u : data.basis)
            if (!(t_act(g, u, S) == phi_operator(e, u, S))) return false;
        return true;
    });
}

void suite_annihilate(Ctx& c, Sampler& rng, Recorder& rec) {
    QPStructure S = structure(c, c.mu);
    const Signature full = c.full;
    OmegaData data = omega_data(S);
    long N = std::max<long>(50, c.cfg.samples / 4);
    rec.run("S^2 Delta annihilates Omega(N)", N, [&](long, std::string& why) {
        VectorField y(full, Basis::Delta);
        for (int j = 0; j < 2; ++j) y += VectorField::make(s2_any(rng, full), rng.alpha(full));
        why = show(y);
        SmashElement X = make_X(full, psi_preimage(y));
        for (const auto& u : data.basis)
            if (!t_act(X, u, S).is_zero()) return false;
        return true;
    });
}

void suite_iso(Ctx& c, Sampler& rng, Recorder& rec) {
    QPStructure S = structure(c, c.mu);
    OmegaData data = omega_data(S);
    QPStructure src = QPStructure::shen_larsson(data.rep, data.rho);
    const Signature sig = S.sig();
    long N = std::max<long>(100, c.cfg.samples / 2);
    rec.run("Theta is equivariant for psi, phi, phihat", N, [&](long, std::string& why) {
        TensorVec w = rng.tensor(src, rng.uniform(0, 1), 2);
        QPElement x = rng.qp(sig, rng.uniform(0, 1));
        SuperPoly a = rng.poly(sig, 2);
        why = "w=" + show(w) + " x=" + show(x) + " a=" + show(a);
        TensorVec tw = theta_map(w, data.basis, S);
        return theta_map(src.psi(x, w), data.basis, S) == S.psi(x, tw) &&
               theta_map(src.phihat(x, w), data.basis, S) == S.phihat(x, tw) &&
               theta_map(src.phi(a, w), data.basis, S) == S.phi(a, tw);
    });
    rec.run("Theta is bijective on the degree-bounded truncation", 1, [&](long, std::string& why) {
        int d = std::min(c.cfg.deg, c.cfg.m >= 2 ? 1 : 2);
        std::vector<Monomial> monos{Monomial{}};
        for (int i = 1; i <= sig.m; ++i) {
            std::vector<Monomial> next;
            for (const auto& mono : monos)
                for (int e = -d; e <= d; ++e) {
                    Monomial t = mono;
                    t.exps[std::size_t(i)] = e;
                    next.push_back(t);
                }
            monos = std::move(next);
        }
        std::map<TensorKey, long> rows;
        std::vector<std::map<long, Scalar>> cols;
        long expected = 0;
        Mask full_mask = (Mask(1) << sig.n) - 1;
        for (const auto& mono : monos)
            for (Mask I = 0; I <= full_mask; ++I)
                for (std::size_t j = 0; j < data.basis.size(); ++j) {
                    Monomial t = mono;
                    t.mask = I;
                    TensorVec img = theta_map(TensorVec::basis(sig, t, int(j)), data.basis, S);
                    std::map<long, Scalar> col;
                    for (const auto& [key, cf] : img.terms()) {
                        auto it = rows.try_emplace(key, long(rows.size())).first;
                        col[it->second] = cf;
                    }
                    cols.push_back(std::move(col));
                    ++expected;
                }
        // the images span exactly the same truncation of M
        long target = long(monos.size()) * (long(full_mask) + 1) * S.omega().dim();
        int r = sparse_rank(cols);
        why = "rank " + std::to_string(r) + " of " + std::to_string(expected) + ", target " + std::to_string(target);
        return r == expected && long(rows.size()) == target;
    });
    rec.run("phi_{t^r zeta_I} shifts psi_{d_i}-weights by r", N, [&](long, std::string& why) {
        Monomial s = rng.monomial(sig), a = rng.monomial(sig);
        int dim = S.omega().dim();
        if (dim == 0) return true;
        int v = rng.uniform(0, dim - 1);
        TensorVec w = TensorVec::basis(sig, s, v);
        TensorVec img = S.phi(SuperPoly::term(sig, a), w);
        why = show(w) + " ; " + show(SuperPoly::term(sig, a));
        for (int i = 1; i <= sig.m; ++i) {
            Scalar lambda = S.mu()[std::size_t(i)] + Scalar(s.exps[std::size_t(i)] + a.exps[std::size_t(i)]);
            if (!(S.psi(tag_element(sig, i), img) == img * lambda)) return false;
        }
        return true;
    });
}

void suite_roundtrip(Ctx& c, Sampler& rng, Recorder& rec) {
    const Signature full = c.full;
    int m = c.cfg.m, n = c.cfg.n;
    long N = c.cfg.samples;
    int dim = std::max(1, c.omega.dim());
    rec.run("format/parse round trip", N, [&](long i, std::string& why) {
        ParsedElement e{ElementKind::Polynomial, SuperPoly(full), VectorField(full), TensorVec(full), {}};
        switch (i % 4) {
        case 0:
            e.poly = rng.poly(full, rng.uniform(0, 3));
            break;
        case 1:
            e.kind = ElementKind::VectorField;
            e.field = rng.field(full, rng.uniform(0, 1), 3);
            if (e.field.is_zero()) e.kind = ElementKind::Polynomial;
            break;
        case 2:
            e.kind = ElementKind::QPElement;
            e.poly = rng.poly(full, 2);
            e.field = rng.field(full, rng.uniform(0, 1), 2);
            if (e.field.is_zero()) e.kind = ElementKind::Polynomial;
            if (e.poly.is_zero() && e.kind == ElementKind::QPElement) e.kind = ElementKind::VectorField;
            break;
        default:
            e.kind = ElementKind::Tensor;
            e.tensor = rng.tensor(full, dim, 3);
        }
        std::string text = format(e);
        why = text;
        ParsedElement back = parse_element(text, m, n, dim);
        bool same = back.kind == e.kind || (e.tensor.is_zero() && e.kind == ElementKind::Tensor);
        same = same && back.poly == e.poly && back.field == e.field && back.tensor == e.tensor;
        return same && format(back) == text;
    });
    static const std::vector<std::string> malformed = {
        "",        "t",         "t1^",      "3/0*t1",   "z0",          "t1**z1",    "D1*t1",   "(t1-1",
        "t1)",     "2*D1*D2",   "t1^x",     "x1",       "1/",          "Q0",        "z1 z2",   "t99",
        "+",       "e0*t1",     "t1-",      "3/2*",
    };
    rec.run("malformed inputs raise positioned errors", long(malformed.size()), [&](long i, std::string& why) {
        const std::string& s = malformed[std::size_t(i)];
        why = "\"" + s + "\"";
        try {
            parse_element(s, m, n, dim);
        } catch (const ParseError& e) {
            return e.pos() <= s.size() && std::string(e.what()).find("position") != std::string::npos;
        }
        return false;
    });
    rec.run("grammar examples", 3, [&](long i, std::string& why) {
        if (i == 0) {
            ParsedElement e = parse_element("3/2*t0^2*t1^-1*z1*z2*D1", std::max(m, 1), std::max(n, 2));
            Signature sig = Signature::full(std::max(m, 1), std::max(n, 2));
            Monomial mono;
            mono.exps[0] = 2;
            mono.exps[1] = -1;
            mono.mask = 3;
            why = format(e);
            return e.kind == ElementKind::VectorField &&
                   e.field == VectorField::make(SuperPoly::term(sig, mono, Scalar::fraction(3, 2)), 1);
        }
        if (i == 1) {
            ParsedElement e = parse_element("z2*z1", m, std::max(n, 2));
            why = format(e);
            return why == "-1*z1*z2";
        }
        ParsedElement e = parse_element("t0^0", m, n);
        why = format(e);
        return why == "1";
    });
}

using SuiteFn = void (*)(Ctx&, Sampler&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"koszul", suite_koszul},         {"jacobi", suite_jacobi},   {"filtration", suite_filtration},
        {"theta", suite_theta},           {"psi", suite_psi},         {"centralizer", suite_centralizer},
        {"qp", suite_qp},                 {"equalities", suite_equalities}, {"loop", suite_loop},
        {"phi", suite_phi},               {"annihilate", suite_annihilate}, {"iso", suite_iso},
        {"roundtrip", suite_roundtrip},
    };
    return r;
}

}  // namespace

MuVector default_mu(int m, int n) {
    MuVector mu(std::size_t(m + n + 1), Scalar(0));
    for (int i = 0; i <= m; ++i) mu[std::size_t(i)] = Scalar::fraction(i + 1, 2);
    return mu;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

bool is_suite_name(const std::string& s) {
    const auto& v = suite_names();
    return s == "all" || std::find(v.begin(), v.end(), s) != v.end();
}

bool SuiteReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.ok(); });
}

SuiteReport run_suites(const SuiteConfig& cfg) {
    for (const auto& s : cfg.suites)
        if (!is_suite_name(s)) throw std::invalid_argument("unknown suite \"" + s + "\"");
    bool all = cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), "all") != cfg.suites.end();
    GlModule omega = cfg.omega ? *cfg.omega : GlModule::natural(cfg.m, cfg.n);
    if (omega.m() != cfg.m || omega.n() != cfg.n) throw std::invalid_argument("module does not match --m/--n");
    MuVector mu = cfg.mu ? *cfg.mu : default_mu(cfg.m, cfg.n);
    check_mu(cfg.m, cfg.n, mu);
    Ctx ctx{cfg, omega, mu, Signature::full(cfg.m, cfg.n), Signature::dotted(cfg.m, cfg.n)};
    SuiteReport report;
    report.config = cfg;
    report.config.mu = mu;
    for (const auto& [name, fn] : registry()) {
        if (!all && std::find(cfg.suites.begin(), cfg.suites.end(), name) == cfg.suites.end()) continue;
        Sampler rng(suite_seed(cfg.seed, name), cfg.deg);
        Recorder rec(report.checks, name);
        try {
            fn(ctx, rng, rec);
        } catch (const std::exception& e) {
            report.checks.push_back({name, "suite setup", 1, 1, std::string("exception: ") + e.what()});
        }
    }
    return report;
}

std::string SuiteReport::json() const {
    nlohmann::ordered_json doc;
    doc["m"] = config.m;
    doc["n"] = config.n;
    doc["deg"] = config.deg;
    doc["samples"] = config.samples;
    doc["seed"] = config.seed;
    doc["module"] = config.module_path.empty() ? "natural" : config.module_path;
    nlohmann::ordered_json mus = nlohmann::ordered_json::array();
    if (config.mu)
        for (const auto& v : *config.mu) mus.push_back(v.str());
    doc["mu"] = mus;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    long cases = 0, failures = 0;
    for (const auto& r : checks) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["check"] = r.name;
        j["cases"] = r.cases;
        j["failures"] = r.failures;
        if (!r.ok()) j["counterexample"] = r.counterexample;
        arr.push_back(j);
        cases += r.cases;
        failures += r.failures;
    }
    doc["checks"] = arr;
    doc["total_cases"] = cases;
    doc["total_failures"] = failures;
    doc["pass"] = ok();
    return doc.dump(2) + "\n";
}

std::string SuiteReport::human() const {
    std::ostringstream os;
    os << "seed " << config.seed << ", m=" << config.m << ", n=" << config.n << ", deg=" << config.deg
       << ", samples=" << config.samples << "\n";
    long failed = 0;
    for (const auto& r : checks) {
        os << (r.ok() ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.cases << " cases";
        if (!r.ok()) os << ", " << r.failures << " failed";
        os << ")\n";
        if (!r.ok()) {
            os << "     first counterexample: " << r.counterexample << "\n";
            ++failed;
        }
    }
    os << (failed ? std::to_string(failed) + " check(s) failed\n" : "all checks passed\n");
    return os.str();
}

}  // namespace qpmod
