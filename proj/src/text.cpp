#include "qpmod/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace qpmod {

ParseError::ParseError(std::size_t pos, const std::string& what)
    : std::runtime_error("parse error at position " + std::to_string(pos + 1) + ": " + what), pos_(pos),
      detail_(what) {}

namespace {

// Value of a subexpression. Poly and field parts live together; a tensor
// value cannot be mixed with the others.
struct Value {
    SuperPoly p;
    VectorField f;
    TensorVec w;
    bool tensor = false;

    explicit Value(Signature sig) : p(sig), f(sig, Basis::Delta), w(sig) {}
    bool has_field() const { return !f.is_zero(); }
};

class Parser {
public:
    Parser(std::string_view src, int m, int n, int omega_dim)
        : src_(src), sig_(Signature::full(m, n)), omega_dim_(omega_dim) {
        if (m < 1 || m >= kMaxEven) throw ParseError(0, "m must be in 1.." + std::to_string(kMaxEven - 1));
        if (n < 1 || n > kMaxOdd) throw ParseError(0, "n must be in 1.." + std::to_string(kMaxOdd));
    }

    ParsedElement run() {
        skip();
        if (pos_ == src_.size()) throw ParseError(pos_, "empty input");
        Value v = element();
        skip();
        if (pos_ != src_.size()) throw ParseError(pos_, std::string("unexpected '") + src_[pos_] + "'");
        ParsedElement out{ElementKind::Polynomial, v.p, v.f, v.w, warnings_};
        if (v.tensor) out.kind = ElementKind::Tensor;
        else if (v.has_field() && !v.p.is_zero()) out.kind = ElementKind::QPElement;
        else if (v.has_field()) out.kind = ElementKind::VectorField;
        return out;
    }

private:
    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    bool digit_at(std::size_t p) const { return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p])); }

    static bool is_zero(const Value& v) { return v.p.is_zero() && !v.has_field() && v.w.is_zero(); }

    Value element() {
        Value acc(sig_);
        bool started = false;
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        for (;;) {
            peek();
            std::size_t at = pos_;
            Value t = term();
            if (started && t.tensor != acc.tensor) throw ParseError(at, "cannot add a tensor and a non-tensor term");
            acc.tensor = t.tensor;
            Scalar s = neg ? Scalar(-1) : Scalar(1);
            acc.p += t.p * s;
            acc.f += t.f * s;
            acc.w += t.w * s;
            started = true;
            c = peek();
            if (c != '+' && c != '-') break;
            neg = c == '-';
            ++pos_;
        }
        return acc;
    }

    Value term() {
        std::size_t start = pos_;
        Value acc = factor();
        bool nonzero_factors = !is_zero(acc);
        while (peek() == '*') {
            ++pos_;
            std::size_t at = pos_;
            if (acc.has_field()) throw ParseError(at, "derivation factor must be rightmost");
            if (acc.tensor) throw ParseError(at, "basis vector factor must be rightmost");
            Value rhs = factor();
            nonzero_factors = nonzero_factors && !is_zero(rhs);
            acc = multiply(acc, rhs);
        }
        if (nonzero_factors && is_zero(acc))
            warnings_.push_back("term at position " + std::to_string(start + 1) + " is zero (repeated zeta)");
        return acc;
    }

    Value multiply(const Value& a, const Value& b) {
        // a is a pure polynomial here
        Value out(sig_);
        out.tensor = b.tensor;
        out.p = a.p * b.p;
        if (b.has_field()) out.f = a.p * b.f;
        if (b.tensor) out.w = shen_mult(a.p, b.w);
        return out;
    }

    int read_int(bool allow_sign) {
        std::size_t start = pos_;
        bool neg = false;
        if (allow_sign && pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            neg = src_[pos_] == '-';
            ++pos_;
        }
        if (!digit_at(pos_)) throw ParseError(pos_, "expected an integer");
        int v = 0;
        auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
        if (res.ec != std::errc()) throw ParseError(start, "integer out of range");
        pos_ = std::size_t(res.ptr - src_.data());
        return neg ? -v : v;
    }

    mpq_class read_rat() {
        std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        std::string num(src_.substr(start, pos_ - start));
        std::string den = "1";
        if (pos_ < src_.size() && src_[pos_] == '/') {
            ++pos_;
            std::size_t d0 = pos_;
            if (!digit_at(pos_)) throw ParseError(pos_, "expected a denominator");
            while (digit_at(pos_)) ++pos_;
            den = std::string(src_.substr(d0, pos_ - d0));
            if (mpz_class(den) == 0) throw ParseError(d0, "zero denominator");
        }
        mpq_class q{mpz_class(num), mpz_class(den)};
        q.canonicalize();
        return q;
    }

    bool at_i() const { return pos_ < src_.size() && src_[pos_] == 'i'; }

    // RAT['i'] | RAT('+'|'-')RAT'i' | 'i'
    Scalar scalar() {
        if (at_i()) {
            ++pos_;
            return Scalar::i();
        }
        mpq_class re = read_rat();
        if (at_i()) {
            ++pos_;
            return Scalar(0, re);
        }
        // greedy complex form, only when the imaginary part really follows
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
            std::size_t save = pos_;
            bool neg = src_[pos_] == '-';
            ++pos_;
            if (digit_at(pos_)) {
                mpq_class im = read_rat();
                if (at_i()) {
                    ++pos_;
                    return Scalar(re, neg ? mpq_class(-im) : im);
                }
            } else if (at_i() && !(pos_ + 1 < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])))) {
                ++pos_;
                return Scalar(re, neg ? -1 : 1);
            }
            pos_ = save;
        }
        return Scalar(re);
    }

    int index(char kind, int lo, int hi) {
        std::size_t at = pos_;
        if (!digit_at(pos_)) throw ParseError(pos_, std::string("expected an index after '") + kind + "'");
        int k = read_int(false);
        if (k < lo || k > hi)
            throw ParseError(at, std::string("index ") + kind + std::to_string(k) + " out of range " +
                                     std::to_string(lo) + ".." + std::to_string(hi));
        return k;
    }

    Value factor() {
        char c = peek();
        std::size_t at = pos_;
        Value v(sig_);
        if (c == '(') {
            ++pos_;
            v = element();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') {
            v.p = SuperPoly::constant(sig_, scalar());
            return v;
        }
        if (c == '\0') throw ParseError(pos_, "unexpected end of input");
        ++pos_;
        switch (c) {
        case 't': {
            int i = index('t', 0, sig_.m);
            int e = 1;
            if (peek() == '^') {
                ++pos_;
                skip();
                e = read_int(true);
            }
            v.p = SuperPoly::t(sig_, i, e);
            return v;
        }
        case 'z':
            v.p = SuperPoly::zeta(sig_, index('z', 1, sig_.n));
            return v;
        case 'D':
            v.f = VectorField::tag(sig_, index('D', 0, sig_.m));
            return v;
        case 'Q':
            v.f = VectorField::tag(sig_, sig_.m + index('Q', 1, sig_.n));
            return v;
        case 'e': {
            if (omega_dim_ < 0) throw ParseError(at, "basis vector factors are not allowed here");
            int k = index('e', 0, omega_dim_ - 1);
            v.tensor = true;
            v.w = TensorVec::basis(sig_, Monomial{}, k);
            return v;
        }
        default:
            throw ParseError(at, std::string("unexpected '") + c + "'");
        }
    }

    std::string_view src_;
    Signature sig_;
    int omega_dim_;
    std::size_t pos_ = 0;
    std::vector<std::string> warnings_;
};

std::string scalar_text(const Scalar& c) {
    if (c.is_real()) return c.str();
    // "(-2-3i)" would read back as -(2-3i)
    if (sgn(c.re()) < 0) return "-(" + (-c).str() + ")";
    return "(" + c.str() + ")";
}

std::string factors(const Monomial& mono) {
    std::string s;
    auto sep = [&] {
        if (!s.empty()) s += "*";
    };
    for (int i = 0; i < kMaxEven; ++i) {
        int e = mono.exps[std::size_t(i)];
        if (e == 0) continue;
        sep();
        s += "t" + std::to_string(i);
        if (e != 1) s += "^" + std::to_string(e);
    }
    for (int k : zeta_indices(mono.mask)) {
        sep();
        s += "z" + std::to_string(k);
    }
    return s;
}

struct Term {
    Monomial mono;
    int tag;  // -1 for a polynomial term
    Scalar c;
    std::string tail;  // derivation or basis vector factor
};

std::string join(const std::vector<Term>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& t : terms) {
        std::string body = factors(t.mono);
        if (!t.tail.empty()) body += (body.empty() ? "" : "*") + t.tail;
        std::string piece = scalar_text(t.c);
        if (!body.empty()) piece += "*" + body;
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out;
}

std::string tag_text(const Signature& sig, int alpha) {
    if (alpha <= sig.m) return "D" + std::to_string(alpha);
    return "Q" + std::to_string(alpha - sig.m);
}

void collect(const SuperPoly& p, std::vector<Term>& out) {
    for (const auto& [mono, c] : p.terms()) out.push_back({mono, -1, c, ""});
}

void collect(const VectorField& x_in, std::vector<Term>& out) {
    VectorField x = x_in.in_basis(Basis::Delta);
    for (const auto& [key, c] : x.terms()) out.push_back({key.mono, key.alpha, c, tag_text(x.sig(), key.alpha)});
}

void sort_terms(std::vector<Term>& t) {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) {
        if (a.mono != b.mono) return a.mono < b.mono;
        return a.tag < b.tag;
    });
}

}  // namespace

ParsedElement parse_element(std::string_view text, int m, int n, int omega_dim) {
    Parser p(text, m, n, omega_dim);
    try {
        return p.run();
    } catch (const ParseError&) {
        throw;
    } catch (const AlgebraError& e) {
        throw ParseError(0, e.what());
    }
}

std::string format(const SuperPoly& p) {
    std::vector<Term> t;
    collect(p, t);
    return join(t);
}

std::string format(const VectorField& x) {
    std::vector<Term> t;
    collect(x, t);
    return join(t);
}

std::string format(const SuperPoly& p, const VectorField& x) {
    std::vector<Term> t;
    collect(p, t);
    collect(x, t);
    sort_terms(t);
    return join(t);
}

std::string format(const QPElement& x) { return format(x.a, x.x); }

std::string format(const TensorVec& w) {
    std::vector<Term> t;
    for (const auto& [key, c] : w.terms()) t.push_back({key.mono, key.index, c, "e" + std::to_string(key.index)});
    sort_terms(t);
    return join(t);
}

std::string format(const ParsedElement& e) {
    switch (e.kind) {
    case ElementKind::Polynomial:
        return format(e.poly);
    case ElementKind::VectorField:
        return format(e.field);
    case ElementKind::QPElement:
        return format(e.poly, e.field);
    case ElementKind::Tensor:
        return format(e.tensor);
    }
    return "0";
}

std::string format(const SmashElement& u) {
    std::string out;
    for (const auto& [key, c] : u.terms()) {
        std::string left = factors(key.a);
        if (left.empty()) left = "1";
        std::string right;
        if (key.tag == kUnitTag) {
            right = "1";
        } else {
            right = factors(key.b);
            right += (right.empty() ? "" : "*") + tag_text(u.sig(), key.tag);
        }
        std::string piece = scalar_text(c) + "*" + left + "#" + right;
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out.empty() ? "0" : out;
}

GlMatrix parse_gl(std::string_view src, int m, int n) {
    GlMatrix out(m, n);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    };
    auto number = [&](std::size_t& v) {
        std::size_t at = pos;
        auto res = std::from_chars(src.data() + pos, src.data() + src.size(), v);
        if (res.ec != std::errc()) throw ParseError(at, "expected an index");
        pos = std::size_t(res.ptr - src.data());
    };
    skip();
    if (pos == src.size()) throw ParseError(0, "empty input");
    if (src.substr(pos) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (pos == src.size()) break;
        Scalar sign(1);
        if (src[pos] == '+' || src[pos] == '-') {
            if (src[pos] == '-') sign = Scalar(-1);
            ++pos;
            skip();
        } else if (!first) {
            throw ParseError(pos, std::string("expected '+' or '-', got '") + src[pos] + "'");
        }
        first = false;
        Scalar c(1);
        std::size_t at = pos;
        if (pos < src.size() && src[pos] == '(') {
            std::size_t close = src.find(')', pos);
            if (close == std::string_view::npos) throw ParseError(pos, "expected ')'");
            try {
                c = Scalar::parse(src.substr(pos + 1, close - pos - 1));
            } catch (const std::exception& e) {
                throw ParseError(pos + 1, e.what());
            }
            pos = close + 1;
        } else if (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == 'i')) {
            while (pos < src.size() && (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/' || src[pos] == 'i')) ++pos;
            try {
                c = Scalar::parse(src.substr(at, pos - at));
            } catch (const std::exception& e) {
                throw ParseError(at, e.what());
            }
        }
        if (pos != at) {
            skip();
            if (pos >= src.size() || src[pos] != '*') throw ParseError(pos, "expected '*'");
            ++pos;
            skip();
        }
        if (src.substr(pos, 2) != "E_") throw ParseError(pos, "expected E_a_b");
        pos += 2;
        std::size_t a = 0, b = 0;
        std::size_t ia = pos;
        number(a);
        if (pos >= src.size() || src[pos] != '_') throw ParseError(pos, "expected '_'");
        ++pos;
        std::size_t ib = pos;
        number(b);
        int N = m + n + 1;
        if (a >= std::size_t(N)) throw ParseError(ia, "row index out of range 0.." + std::to_string(N - 1));
        if (b >= std::size_t(N)) throw ParseError(ib, "column index out of range 0.." + std::to_string(N - 1));
        out.at(int(a), int(b)) += sign * c;
    }
    return out;
}

}  // namespace qpmod
