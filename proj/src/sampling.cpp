#include "qpmod/sampling.hpp"

namespace qpmod {

int Sampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Scalar Sampler::real_scalar() {
    int num = uniform(1, 4) * (coin() ? 1 : -1);
    return Scalar::fraction(num, uniform(1, 3));
}

Scalar Sampler::scalar() {
    Scalar s = real_scalar();
    if (uniform(0, 3) == 0) s += real_scalar() * Scalar::i();
    return s;
}

Mask Sampler::mask(int n) {
    Mask m = 0;
    for (int k = 1; k <= n; ++k)
        if (coin()) m |= zeta_bit(k);
    return m;
}

Monomial Sampler::laurent(const Signature& sig) {
    Monomial mono;
    for (int i = sig.first_even(); i <= sig.m; ++i) mono.exps[std::size_t(i)] = uniform(-deg_, deg_);
    return mono;
}

Monomial Sampler::monomial(const Signature& sig) {
    Monomial mono = laurent(sig);
    mono.mask = mask(sig.n);
    return mono;
}

Monomial Sampler::monomial(const Signature& sig, int parity) {
    Monomial mono = monomial(sig);
    if (mono.parity() != parity) {
        // toggle one generator
        int k = uniform(1, sig.n);
        mono.mask ^= zeta_bit(k);
    }
    return mono;
}

SuperPoly Sampler::poly(const Signature& sig, int terms) {
    SuperPoly p(sig);
    for (int j = 0; j < terms; ++j) p.add_term(monomial(sig), scalar());
    return p;
}

SuperPoly Sampler::poly(const Signature& sig, int parity, int terms) {
    SuperPoly p(sig);
    for (int j = 0; j < terms; ++j) p.add_term(monomial(sig, parity), scalar());
    return p;
}

int Sampler::alpha(const Signature& sig) {
    int a = uniform(0, sig.m + sig.n);
    if (!sig.with_t0 && a == 0) a = uniform(1, sig.m + sig.n);
    return a;
}

int Sampler::alpha(const Signature& sig, int parity) {
    if (parity) return sig.m + uniform(1, sig.n);
    return uniform(sig.first_even(), sig.m);
}

VectorField Sampler::field(const Signature& sig, int parity, int terms) {
    VectorField x(sig, Basis::Delta);
    for (int j = 0; j < terms; ++j) {
        int a = alpha(sig);
        x.add_term(monomial(sig, parity ^ sig.alpha_parity(a)), a, scalar());
    }
    return x;
}

QPElement Sampler::qp(const Signature& dotted, int parity, int terms) {
    QPElement x(dotted);
    for (int j = 0; j < terms; ++j) {
        int a = uniform(0, dotted.m + dotted.n);
        Monomial mono = monomial(dotted, parity ^ dotted.alpha_parity(a));
        if (a == 0) x.a.add_term(mono, scalar());
        else x.x.add_term(mono, a, scalar());
    }
    return x;
}

LoopElement Sampler::loop(const Signature& dotted, int parity, int terms) {
    LoopElement x(dotted);
    for (int j = 0; j < terms; ++j) x.add(uniform(-deg_, deg_), qp(dotted, parity, 1));
    return x;
}

GlMatrix Sampler::gl(int m, int n, int parity, int terms) {
    GlMatrix x(m, n);
    int N = m + n + 1;
    for (int j = 0; j < terms; ++j) {
        int a = uniform(0, N - 1);
        int b = uniform(0, N - 1);
        if (x.entry_parity(a, b) != parity) {
            // move b across the parity boundary
            b = (b > m) ? uniform(0, m) : m + uniform(1, n);
        }
        x.at(a, b) += scalar();
    }
    return x;
}

SmashElement Sampler::smash(const Signature& full, int parity, int terms) {
    SmashElement u(full);
    for (int j = 0; j < terms; ++j) {
        Monomial a = monomial(full);
        if (uniform(0, 4) == 0) {
            u.add_term({monomial(full, parity), Monomial{}, kUnitTag}, scalar());
            continue;
        }
        int tag = alpha(full);
        int want = parity ^ a.parity() ^ full.alpha_parity(tag);
        u.add_term({a, monomial(full, want), tag}, scalar());
    }
    return u;
}

std::vector<int> Sampler::shift(const Signature& sig) {
    std::vector<int> r(std::size_t(sig.m + 1), 0);
    for (int i = sig.first_even(); i <= sig.m; ++i) r[std::size_t(i)] = uniform(-deg_, deg_);
    return r;
}

XGenerator Sampler::generator(const Signature& full) {
    for (;;) {
        XGenerator g = make_generator(shift(full), mask(full.n), alpha(full));
        if (!g.shift.is_one()) return g;  // X_{0,empty,d} = 0
    }
}

TensorVec Sampler::tensor(const Signature& sig, int dim, int terms) {
    TensorVec w(sig);
    for (int j = 0; j < terms; ++j) w.add_term({monomial(sig), uniform(0, dim - 1)}, scalar());
    return w;
}

TensorVec Sampler::tensor(const QPStructure& S, int parity, int terms) {
    TensorVec w(S.sig());
    int dim = S.omega().dim();
    if (dim == 0) return w;
    for (int j = 0; j < terms; ++j) {
        int v = uniform(0, dim - 1);
        w.add_term({monomial(S.sig(), parity ^ S.omega().parity(v)), v}, scalar());
    }
    return w;
}

}  // namespace qpmod
