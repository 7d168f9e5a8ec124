#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qpmod/gl_module.hpp"
#include "qpmod/qp_algebra.hpp"
#include "qpmod/smash.hpp"

namespace qpmod {

struct TensorKey {
    Monomial mono;
    int index;  // basis vector of Omega
    friend auto operator<=>(const TensorKey&, const TensorKey&) = default;
};

// Element of A (x) Omega. Dotted for M, full for V_A and for L(M), where the
// t0 exponent of a term is its loop degree.
class TensorVec {
public:
    explicit TensorVec(Signature sig) : sig_(sig) {}
    static TensorVec basis(Signature sig, const Monomial& mono, int index, const Scalar& c = 1);
    static TensorVec pure(const SuperPoly& p, int index);

    const Signature& sig() const { return sig_; }
    const SparseTerms<TensorKey>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const TensorKey& key, const Scalar& c);

    TensorVec& operator+=(const TensorVec& o);
    TensorVec& operator-=(const TensorVec& o);
    TensorVec& operator*=(const Scalar& c);
    friend TensorVec operator+(TensorVec a, const TensorVec& b) { return a += b; }
    friend TensorVec operator-(TensorVec a, const TensorVec& b) { return a -= b; }
    friend TensorVec operator*(TensorVec a, const Scalar& c) { return a *= c; }
    friend TensorVec operator*(const Scalar& c, TensorVec a) { return a *= c; }
    TensorVec operator-() const { return *this * Scalar(-1); }
    friend bool operator==(const TensorVec& a, const TensorVec& b) {
        return a.sig_ == b.sig_ && a.terms_ == b.terms_;
    }

    // re-tag between dotted and full; fails if a t0 exponent is nonzero when going dotted
    TensorVec with_sig(Signature sig) const;

private:
    Signature sig_;
    SparseTerms<TensorKey> terms_;
};

using MuVector = std::vector<Scalar>;

// length m+n+1 and mu(m+k) = 0
void check_mu(int m, int n, const MuVector& mu);

// f d_alpha acting on V_A(Omega, mu), full signature
TensorVec shen_act(const SuperPoly& f, int alpha, const TensorVec& w, const GlModule& omega, const MuVector& mu);
TensorVec shen_mult(const SuperPoly& f, const TensorVec& w);

// a d_alpha in g with d_0 := 1
QPElement times_tag(const SuperPoly& a, int alpha);
QPElement tag_element(Signature dotted, int alpha);

enum class QPKind { Phi, Psi, PhiHat };

// (phi, psi, phihat) on A_dot (x) Omega.
class QPStructure {
public:
    using OpFn = std::function<TensorVec(const QPElement&, const TensorVec&)>;

    static QPStructure shen_larsson(GlModule omega, MuVector mu);
    // same phi and psi, phihat replaced
    QPStructure with_phihat(OpFn phihat) const;

    const Signature& sig() const { return sig_; }
    const GlModule& omega() const { return *omega_; }
    const MuVector& mu() const { return mu_; }

    TensorVec phi(const SuperPoly& a, const TensorVec& w) const;
    TensorVec psi(const QPElement& x, const TensorVec& w) const { return psi_(x, w); }
    TensorVec phihat(const QPElement& x, const TensorVec& w) const { return phihat_(x, w); }
    TensorVec psi(const SuperPoly& a, const TensorVec& w) const { return psi(QPElement::poly(a), w); }
    TensorVec phihat(const SuperPoly& a, const TensorVec& w) const { return phihat(QPElement::poly(a), w); }

    int term_parity(const TensorKey& key) const;
    std::optional<int> parity(const TensorVec& w) const;
    TensorVec zero() const { return TensorVec(sig_); }

private:
    QPStructure() : sig_(Signature::dotted(1, 1)) {}

    Signature sig_;
    std::shared_ptr<const GlModule> omega_;
    MuVector mu_;
    OpFn psi_;
    OpFn phihat_;
};

TensorVec qp_apply(QPKind kind, const QPElement& x, const TensorVec& w, const QPStructure& S);

// --- QP axioms -------------------------------------------------------------

struct AxiomCase {
    QPElement x, y;
    SuperPoly a, b;
    TensorVec w;
};

// LHS - RHS of axiom which (1..7); zero iff it holds on this case.
// Axiom 1 uses a, b; 2 uses x, y; 3 and 6 use x, y; 4 uses a, x; 5 uses x, a; 7 uses x, a.
TensorVec qp_axiom_defect(int which, const AxiomCase& c, const QPStructure& S);

// LHS - RHS of the derived identity which (1..5) in a general QP-module.
// (1) uses a, b; (2) uses a, d; (3) needs a = t^r and uses b; (4) needs a = zeta_I;
// (5) uses a, d.
TensorVec lemma_defect(int which, const SuperPoly& a, const SuperPoly& b, const QPElement& d, const TensorVec& w,
                       const QPStructure& S);

// --- loopification ---------------------------------------------------------

// smash element acting on L(M) (full-signature TensorVec)
TensorVec loop_act(const SmashElement& u, const TensorVec& w, const QPStructure& S);
// L(g) acting on L(M)
TensorVec loop_g_act(const LoopElement& x, const TensorVec& w, const QPStructure& S);
// L(A_dot) acting on L(M); a is a full-signature polynomial
TensorVec loop_mult(const SuperPoly& a, const TensorVec& w, const QPStructure& S);

// T acting on M (dotted), through L(M) at loop degree 0
TensorVec t_act(const SmashElement& X, const TensorVec& u, const QPStructure& S);
TensorVec t_act(const XGenerator& g, const TensorVec& u, const QPStructure& S);

// --- Omega(N), Phi, Theta --------------------------------------------------

// span{zeta_I (x) e_v}
std::vector<TensorVec> shen_larsson_slice(const QPStructure& S);
// joint kernel of psi_{d/dzeta_k} on span(basis)
std::vector<TensorVec> omega_extract(const std::vector<TensorVec>& basis, const QPStructure& S);
// greedy: apply psi_{d/dzeta_j} while some is nonzero
TensorVec omega_greedy(const TensorVec& u, const QPStructure& S);

// operator Phi(E_{a,b}) applied to u
TensorVec phi_operator(int a, int b, const TensorVec& u, const QPStructure& S);
TensorVec phi_operator(const GlMatrix& x, const TensorVec& u, const QPStructure& S);
// matrix of Phi(E_{a,b}) in the given basis of Omega(N)
Matrix phi_rep(int a, int b, const QPStructure& S, const std::vector<TensorVec>& omega_basis);

// coordinates of w in a basis, throws if w is outside the span
std::vector<Scalar> coordinates(const TensorVec& w, const std::vector<TensorVec>& basis);

struct OmegaData {
    std::vector<TensorVec> basis;
    std::vector<int> parities;
    GlModule rep;  // Omega(N) as a gl-module through Phi
    MuVector rho;  // eigenvalues of psi_1, psi_{d_i} on Omega(N)
};
OmegaData omega_data(const QPStructure& S);

TensorVec theta_iso(const SuperPoly& a, const TensorVec& omega, const QPStructure& S);
// linear extension of a (x) e_j -> phi_a(basis[j])
TensorVec theta_map(const TensorVec& src, const std::vector<TensorVec>& omega_basis, const QPStructure& S);

}  // namespace qpmod
