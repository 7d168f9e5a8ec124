#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpmod/gl.hpp"
#include "qpmod/qp_algebra.hpp"
#include "qpmod/smash.hpp"
#include "qpmod/tensor_qp.hpp"

namespace qpmod {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& what);
    std::size_t pos() const { return pos_; }  // 0-based offset into the source
    const std::string& detail() const { return detail_; }

private:
    std::size_t pos_;
    std::string detail_;
};

enum class ElementKind { Polynomial, VectorField, QPElement, Tensor };

// Parsed literal over the full signature (t0 and D0 allowed).
struct ParsedElement {
    ElementKind kind;
    SuperPoly poly;
    qpmod::VectorField field;
    TensorVec tensor;
    std::vector<std::string> warnings;  // e.g. a term vanished by a repeated zeta
};

// omega_dim bounds the e-index of tensor literals; -1 disables tensor factors.
ParsedElement parse_element(std::string_view text, int m, int n, int omega_dim = -1);

// Canonical text. Terms sorted by (exponents, mask, tag), coefficient always written.
std::string format(const SuperPoly& p);
std::string format(const VectorField& x);
std::string format(const SuperPoly& p, const VectorField& x);  // mixed sum
std::string format(const QPElement& x);
std::string format(const TensorVec& w);
std::string format(const ParsedElement& e);
// "1*t0^-1#t0*D1-1*1#D1"; a unit tag prints as "a#1"
std::string format(const SmashElement& u);

// Inverse of GlMatrix::str(): "E_1_0", "2*E_0_0-E_2_2", "(1/2+i)*E_0_1".
GlMatrix parse_gl(std::string_view text, int m, int n);

}  // namespace qpmod
