// qpmod command line: property suites and small evaluators.
#include <bit>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpmod/filtration.hpp"
#include "qpmod/module_config.hpp"
#include "qpmod/smash.hpp"
#include "qpmod/suites.hpp"
#include "qpmod/text.hpp"

using namespace qpmod;

namespace {

struct Options {
    int m = 1;
    int n = 1;
    int deg = 3;
    int samples = 200;
    std::uint64_t seed = 1;
    std::string module;
    std::string mu;
    std::string expr;
    bool json = false;

    std::vector<std::string> suites;
    std::string on;      // eval act
    std::string op = "auto";
    std::string with;    // bracket
    std::string kind = "auto";
    std::string r;       // x-element
    std::string J;
    std::string tag;
};

// exit 2 with a plain message
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    int m, n;
    GlModule omega;
    MuVector mu;
    bool from_config;
};

void common(CLI::App* sub, Options& o, bool with_expr) {
    sub->add_option("--m", o.m, "number of even variables besides t0")->capture_default_str();
    sub->add_option("--n", o.n, "number of odd variables")->capture_default_str();
    sub->add_option("--deg", o.deg, "Laurent exponent bound for sampling")->capture_default_str();
    sub->add_option("--samples", o.samples, "samples per check")->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->add_option("--module", o.module, "JSON module config (default: natural module)");
    sub->add_option("--mu", o.mu, "comma separated mu(0..m+n)");
    if (with_expr) sub->add_option("--expr", o.expr, "element literal")->required();
    sub->add_flag("--json", o.json, "machine-readable output");
}

Context context(const Options& o, const CLI::App* sub) {
    Context c{o.m, o.n, GlModule::natural(1, 1), {}, false};
    if (!o.module.empty()) {
        ModuleConfig cfg = load_module_config(o.module);
        if ((sub->count("--m") && cfg.omega.m() != o.m) || (sub->count("--n") && cfg.omega.n() != o.n))
            throw UsageError("--m/--n disagree with the module config");
        c.m = cfg.omega.m();
        c.n = cfg.omega.n();
        c.omega = std::move(cfg.omega);
        c.mu = std::move(cfg.mu);
        c.from_config = true;
    }
    if (c.m < 1 || c.m >= kMaxEven) throw UsageError("--m must be in 1.." + std::to_string(kMaxEven - 1));
    if (c.n < 1 || c.n > kMaxOdd) throw UsageError("--n must be in 1.." + std::to_string(kMaxOdd));
    if (!c.from_config) c.omega = GlModule::natural(c.m, c.n);
    if (!o.mu.empty()) c.mu = parse_mu_csv(o.mu);
    if (c.mu.empty()) c.mu = default_mu(c.m, c.n);
    try {
        check_mu(c.m, c.n, c.mu);
    } catch (const AlgebraError& e) {
        throw UsageError(std::string("--mu: ") + e.what());
    }
    return c;
}

void emit(const Options& o, const std::string& command, const std::string& result) {
    if (o.json) {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["result"] = result;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result << "\n";
    }
}

// ParseError plus the literal it came from, for the caret display
struct LiteralError : std::runtime_error {
    LiteralError(const std::string& flag, const std::string& text, const ParseError& e)
        : std::runtime_error(flag + ": " + e.what() + "\n  " + text + "\n  " +
                             std::string(std::min(e.pos(), text.size()), ' ') + "^") {}
};

ParsedElement parse(const std::string& flag, const std::string& text, const Context& c, int omega_dim = -1) {
    try {
        ParsedElement e = parse_element(text, c.m, c.n, omega_dim);
        for (const auto& w : e.warnings) std::cerr << "warning: " << w << "\n";
        return e;
    } catch (const ParseError& e) {
        throw LiteralError(flag, text, e);
    }
}

GlMatrix parse_matrix(const std::string& flag, const std::string& text, const Context& c) {
    try {
        return parse_gl(text, c.m, c.n);
    } catch (const ParseError& e) {
        throw LiteralError(flag, text, e);
    }
}

QPElement to_qp(const ParsedElement& e, const Signature& dotted) {
    if (e.kind == ElementKind::Tensor) throw UsageError("expected a polynomial or vector field, got a tensor");
    return QPElement(e.poly.with_sig(dotted), e.field.with_sig(dotted));
}

int cmd_check(const Options& o, const CLI::App* sub) {
    for (const auto& s : o.suites)
        if (!is_suite_name(s)) throw UsageError("unknown suite \"" + s + "\"");
    if (o.samples < 1) throw UsageError("--samples must be positive");
    if (o.deg < 1) throw UsageError("--deg must be positive");
    Context c = context(o, sub);
    SuiteConfig cfg;
    cfg.m = c.m;
    cfg.n = c.n;
    cfg.deg = o.deg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.suites = o.suites;
    cfg.omega = c.omega;
    cfg.mu = c.mu;
    cfg.module_path = o.module;
    SuiteReport report = run_suites(cfg);
    std::cout << (o.json ? report.json() : report.human());
    return report.ok() ? 0 : 1;
}

int cmd_eval_act(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    ParsedElement x = parse("--expr", o.expr, c);
    ParsedElement y = parse("--on", o.on, c, c.omega.dim());
    Signature full = Signature::full(c.m, c.n), dotted = Signature::dotted(c.m, c.n);
    if (x.kind == ElementKind::Tensor) throw UsageError("--expr must not be a tensor");
    std::string out;
    if (y.kind == ElementKind::Tensor) {
        if (o.op == "auto" || o.op == "shen") {
            // V_A(Omega, mu)
            TensorVec w = shen_mult(x.poly, y.tensor);
            for (int alpha = 0; alpha <= c.m + c.n; ++alpha) {
                SuperPoly f = x.field.coefficient(alpha);
                if (!f.is_zero()) w += shen_act(f, alpha, y.tensor, c.omega, c.mu);
            }
            out = format(w);
        } else {
            QPStructure S = QPStructure::shen_larsson(c.omega, c.mu);
            TensorVec w = y.tensor.with_sig(dotted);
            QPElement q = to_qp(x, dotted);
            if (o.op == "psi") out = format(S.psi(q, w).with_sig(full));
            else if (o.op == "phihat") out = format(S.phihat(q, w).with_sig(full));
            else if (o.op == "phi") {
                if (!q.x.is_zero()) throw UsageError("phi takes a polynomial");
                out = format(S.phi(q.a, w).with_sig(full));
            } else {
                throw UsageError("unknown --op \"" + o.op + "\"");
            }
        }
    } else {
        if (y.kind != ElementKind::Polynomial) throw UsageError("--on must be a polynomial or a tensor");
        if (o.op != "auto") throw UsageError("--op applies to tensor targets only");
        if (x.kind == ElementKind::QPElement) {
            QPElement q = to_qp(x, dotted);
            out = format(qp_act(q, y.poly.with_sig(dotted)).with_sig(full));
        } else {
            out = format(x.poly * y.poly + vf_apply(x.field, y.poly));
        }
    }
    emit(o, "eval act", out);
    return 0;
}

int cmd_bracket(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    std::string out;
    std::string kind = o.kind;
    if (kind == "gl") {
        out = gl_bracket(parse_matrix("--expr", o.expr, c), parse_matrix("--with", o.with, c)).str();
    } else {
        ParsedElement x = parse("--expr", o.expr, c), y = parse("--with", o.with, c);
        if (kind == "auto")
            kind = (x.poly.is_zero() && y.poly.is_zero()) ? "vf" : "qp";
        if (kind == "vf") {
            if (!x.poly.is_zero() || !y.poly.is_zero()) throw UsageError("vf brackets take vector fields");
            out = format(vf_bracket(x.field, y.field));
        } else if (kind == "qp") {
            Signature dotted = Signature::dotted(c.m, c.n);
            QPElement b = qp_bracket(to_qp(x, dotted), to_qp(y, dotted));
            out = format(b.a.with_sig(Signature::full(c.m, c.n)), b.x.with_sig(Signature::full(c.m, c.n)));
        } else {
            throw UsageError("unknown --kind \"" + o.kind + "\"");
        }
    }
    emit(o, "bracket", out);
    return 0;
}

std::vector<int> int_list(const std::string& csv, const char* what) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(what) + ": bad integer \"" + item + "\"");
        }
    }
    return out;
}

int tag_index(const std::string& t, int m, int n) {
    if (t.size() >= 2 && (t[0] == 'D' || t[0] == 'Q')) {
        int k = int_list(t.substr(1), "--tag").at(0);
        if (t[0] == 'D' && k >= 0 && k <= m) return k;
        if (t[0] == 'Q' && k >= 1 && k <= n) return m + k;
    }
    throw UsageError("--tag must be D0..D" + std::to_string(m) + " or Q1..Q" + std::to_string(n));
}

int cmd_x_element(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    Signature full = Signature::full(c.m, c.n);
    std::vector<int> r = int_list(o.r, "--r");
    if (int(r.size()) != c.m + 1) throw UsageError("--r needs " + std::to_string(c.m + 1) + " entries");
    std::vector<int> J = int_list(o.J, "--J");
    for (int k : J)
        if (k < 1 || k > c.n) throw UsageError("--J entries must be in 1.." + std::to_string(c.n));
    Mask mask = mask_of(J);
    if (int(std::popcount(mask)) != int(J.size())) throw UsageError("--J has repeated entries");
    XGenerator g = make_generator(r, mask, tag_index(o.tag, c.m, c.n));
    SmashElement X = make_X(full, g);
    VectorField psi = psi_map(full, {{g, Scalar(1)}});
    GlMatrix th = theta_project(psi);
    if (o.json) {
        nlohmann::ordered_json j;
        j["command"] = "x-element";
        j["X"] = format(X);
        j["psi"] = format(psi);
        j["theta"] = th.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "X     = " << format(X) << "\n";
        std::cout << "Psi   = " << format(psi) << "\n";
        std::cout << "theta = " << th.str() << "\n";
    }
    return 0;
}

int cmd_project_gl(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    ParsedElement e = parse("--expr", o.expr, c);
    if (e.kind != ElementKind::VectorField && !(e.kind == ElementKind::Polynomial && e.poly.is_zero()))
        throw UsageError("project-gl expects a vector field");
    emit(o, "project-gl", theta_project(e.field).str());
    return 0;
}

int cmd_filt_deg(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    ParsedElement e = parse("--expr", o.expr, c);
    if (e.kind != ElementKind::Polynomial) throw UsageError("filt-deg expects a polynomial");
    int d = filt_degree(e.poly);
    emit(o, "filt-deg", d == kInfiniteDegree ? "inf" : std::to_string(d));
    return 0;
}

std::string vec_text(const std::vector<Scalar>& v, std::size_t from = 0) {
    std::string s = "(";
    for (std::size_t i = from; i < v.size(); ++i) s += (i > from ? "," : "") + v[i].str();
    return s + ")";
}

int cmd_weights(const Options& o, const CLI::App* sub) {
    Context c = context(o, sub);
    if (!o.expr.empty()) {
        ParsedElement e = parse("--expr", o.expr, c);
        if (e.kind == ElementKind::Tensor || e.kind == ElementKind::QPElement)
            throw UsageError("weights expects a polynomial or a vector field");
        try {
            WeightVector w = e.kind == ElementKind::Polynomial ? weight_of(e.poly) : weight_of(e.field);
            emit(o, "weights", "h' = " + vec_text(w.hprime) + ", h = " + vec_text(w.h));
        } catch (const NotHomogeneous& err) {
            std::cerr << "not a weight vector: " << err.what() << "\n";
            return 1;
        }
        return 0;
    }
    WeightReport rep;
    try {
        rep = weight_decompose(c.omega);
    } catch (const NotDiagonalizable& err) {
        std::cerr << "module is not a weight module: " << err.what() << "\n";
        return 1;
    }
    if (o.json) {
        nlohmann::ordered_json j;
        j["command"] = "weights";
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& s : rep.spaces) {
            nlohmann::ordered_json ws;
            ws["weight"] = vec_text(s.weight);
            ws["multiplicity"] = s.basis.size();
            arr.push_back(ws);
        }
        j["spaces"] = arr;
        j["max_multiplicity"] = rep.max_multiplicity;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& s : rep.spaces) std::cout << "weight " << vec_text(s.weight) << "  multiplicity " << s.basis.size() << "\n";
        std::cout << "max multiplicity " << rep.max_multiplicity << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-Poisson modules over Laurent-Grassmann algebras: exact property checks"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "run property suites");
    common(check, o, false);
    std::string names = "all";
    for (const auto& s : suite_names()) names += "|" + s;
    check->add_option("suites", o.suites, "suites to run: " + names);

    auto* eval = app.add_subcommand("eval", "evaluate an action");
    eval->require_subcommand(1);
    auto* act = eval->add_subcommand("act", "apply --expr to --on");
    common(act, o, true);
    act->add_option("--on", o.on, "polynomial, or tensor with e-factors")->required();
    act->add_option("--op", o.op, "auto|shen|psi|phi|phihat")->capture_default_str();

    auto* bracket = app.add_subcommand("bracket", "bracket of two elements");
    common(bracket, o, true);
    bracket->add_option("--with", o.with, "second element")->required();
    bracket->add_option("--kind", o.kind, "auto|vf|qp|gl")->capture_default_str();

    auto* xel = app.add_subcommand("x-element", "X generator with its Psi and theta images");
    common(xel, o, false);
    xel->add_option("--r", o.r, "shift, m+1 comma separated integers")->required();
    xel->add_option("--J", o.J, "comma separated odd indices");
    xel->add_option("--tag", o.tag, "D<i> or Q<k>")->required();

    auto* proj = app.add_subcommand("project-gl", "theta image of a vector field in S Delta");
    common(proj, o, true);
    auto* filt = app.add_subcommand("filt-deg", "filtration degree of a polynomial");
    common(filt, o, true);
    auto* weights = app.add_subcommand("weights", "weights of an element, or of the module");
    common(weights, o, false);
    weights->add_option("--expr", o.expr, "element literal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(o, check);
        if (*act) return cmd_eval_act(o, act);
        if (*bracket) return cmd_bracket(o, bracket);
        if (*xel) return cmd_x_element(o, xel);
        if (*proj) return cmd_project_gl(o, proj);
        if (*filt) return cmd_filt_deg(o, filt);
        if (*weights) return cmd_weights(o, weights);
    } catch (const LiteralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AlgebraError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
