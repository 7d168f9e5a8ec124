#pragma once

#include <cstdint>
#include <random>

#include "qpmod/gl.hpp"
#include "qpmod/qp_algebra.hpp"
#include "qpmod/smash.hpp"
#include "qpmod/tensor_qp.hpp"

namespace qpmod {

// Seeded random elements. Laurent exponents lie in [-deg, deg].
class Sampler {
public:
    Sampler(std::uint64_t seed, int deg) : rng_(seed), deg_(deg) {}

    int deg() const { return deg_; }
    int uniform(int lo, int hi);  // inclusive
    bool coin() { return uniform(0, 1) == 1; }

    // small nonzero scalar, sometimes with an imaginary part
    Scalar scalar();
    Scalar real_scalar();

    Monomial monomial(const Signature& sig);
    Monomial monomial(const Signature& sig, int parity);
    // a monomial with only Laurent part
    Monomial laurent(const Signature& sig);
    Mask mask(int n);

    SuperPoly poly(const Signature& sig, int terms = 2);
    SuperPoly poly(const Signature& sig, int parity, int terms);
    int alpha(const Signature& sig);
    int alpha(const Signature& sig, int parity);  // tag of given parity (even tags exist always)
    // homogeneous vector field with the given parity, Delta basis
    VectorField field(const Signature& sig, int parity, int terms = 2);
    QPElement qp(const Signature& dotted, int parity, int terms = 2);
    LoopElement loop(const Signature& dotted, int parity, int terms = 2);
    GlMatrix gl(int m, int n, int parity, int terms = 3);
    SmashElement smash(const Signature& full, int parity, int terms = 2);
    XGenerator generator(const Signature& full);
    TensorVec tensor(const Signature& sig, int dim, int terms = 2);
    TensorVec tensor(const QPStructure& S, int parity, int terms = 2);

    // exponent vector r (entries for slots first_even..m)
    std::vector<int> shift(const Signature& sig);

private:
    std::mt19937_64 rng_;
    int deg_;
};

}  // namespace qpmod
