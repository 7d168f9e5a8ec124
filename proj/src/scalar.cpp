#include "qpmod/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace qpmod {

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::i() { return Scalar(0, 1); }

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (o.is_real()) {
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= norm;
    im_ /= norm;
    return *this;
}

std::string Scalar::str() const {
    if (is_real()) return re_.get_str();
    std::string ims = im_.get_str() + "i";
    if (sgn(re_) == 0) return ims;
    std::string out = re_.get_str();
    if (sgn(im_) > 0) out += "+";
    return out + ims;
}

namespace {

mpq_class parse_rat(std::string_view t) {
    if (t.empty()) throw std::invalid_argument("empty rational");
    std::string s(t);
    size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad rational '" + s + "'");
    size_t slash = s.find('/');
    for (size_t k = start; k < s.size(); ++k) {
        if (k == slash) continue;
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad rational '" + s + "'");
    }
    if (slash != std::string::npos && (slash == start || slash + 1 == s.size()))
        throw std::invalid_argument("bad rational '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    if (s.back() != 'i') return Scalar(parse_rat(s));
    s.pop_back();
    // split real and imaginary at the last sign that is not leading
    size_t cut = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            cut = k;
            break;
        }
    }
    auto imag_of = [](std::string_view p) -> mpq_class {
        if (p.empty() || p == "+") return 1;
        if (p == "-") return -1;
        return parse_rat(p);
    };
    if (cut == std::string::npos) return Scalar(0, imag_of(s));
    return Scalar(parse_rat(std::string_view(s).substr(0, cut)),
                  imag_of(std::string_view(s).substr(cut)));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace qpmod
