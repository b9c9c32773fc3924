// voaforge: command-line front end for the exact bc-beta-gamma vertex
// algebra engine, the chiral Weil complex for sl2, and the jet-scheme
// invariant computations.
//
// Exit codes: 0 success / all verifications pass, 1 verification failure,
// 2 usage or parse error.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "voaforge/cohomology.hpp"
#include "voaforge/fock.hpp"
#include "voaforge/jets.hpp"
#include "voaforge/lie.hpp"
#include "voaforge/operators.hpp"
#include "voaforge/parser.hpp"
#include "voaforge/random.hpp"
#include "voaforge/suites.hpp"

using namespace voaforge;

namespace {

struct Options {
    bool json = false;
    uint64_t seed = 0;
    std::vector<std::string> args;  // verb and positional arguments
};

const NamedOperatorTable& table() {
    static NamedOperatorTable t = build_table(sl2_root_basis());
    return t;
}

const std::vector<std::string>& labels() {
    static std::vector<std::string> l = sl2_root_basis().basis_labels();
    return l;
}

// Either a named operator (J, K, D, L, v^x, ...) or a grammar expression.
Expr input_expr(const std::string& s) {
    const auto named = named_operators(table());
    const auto it = named.find(s);
    if (it != named.end()) return it->second;
    return parse_expr(s, labels());
}

void print_expr(const Expr& e, const Options& opt) {
    std::cout << (opt.json ? expr_to_json(e, labels())
                           : format_expr(e, labels()))
              << "\n";
}

int usage() {
    std::cerr <<
        "usage: voaforge [--json] [--seed N] <verb> ...\n"
        "\n"
        "  parse <expr>                 canonical form of an expression\n"
        "  canon <expr>                 alias of parse\n"
        "  wick <a> <b>                 Wick product :a b:\n"
        "  circle <n> <a> <b>           circle product a o_n b\n"
        "  ope <a> <b>                  singular OPE terms a o_n b, n >= 0\n"
        "  mode <op> <k> <a>            apply op(k) to a (k >= 0)\n"
        "  grade <expr>                 weight, degree, b-number, parity\n"
        "  verify <suite>|all           run a named verification suite\n"
        "  psi-class <r> <s> <t>        representative Psi(x^r y^s h^t)\n"
        "  h-class <n>                  the class h_{2n+2}\n"
        "  jet verify-appendix          appendix determinant suite\n"
        "  jet invariants --copies p --level m --weight w --degree d\n"
        "  oracle-diff <n> <a> <b>      engine vs Fock oracle for a o_n b\n"
        "\n"
        "Expressions use b[x], c[y], beta[h], gamma[x], d^k, :f g:, and may\n"
        "name a built-in operator (J, K, D, L, H, v^x, C^gbb, ...).  The seed\n"
        "defaults to VOAFORGE_SEED, then 0.  Suites: ";
    for (const auto& n : suite_names()) std::cerr << n << " ";
    std::cerr << "\n";
    return 2;
}

long arg_long(const std::string& s) {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

int cmd_verify(const Options& opt, const std::string& which) {
    std::vector<std::string> names;
    if (which == "all") names = suite_names();
    else names.push_back(which);
    bool all_pass = true;
    bool first = true;
    if (opt.json) std::cout << "[";
    for (const std::string& name : names) {
        SuiteResult r = run_suite(name, opt.seed);
        all_pass = all_pass && r.ok;
        if (opt.json) {
            if (!first) std::cout << ",";
            std::cout << suite_result_json(r);
        } else {
            std::cout << "suite " << r.name << " (seed " << r.seed
                      << "): " << (r.ok ? "ok" : "FAIL")
                      << (r.warning ? " [advisory notes]" : "") << "\n";
            for (const Report& rep : r.reports) {
                std::cout << "  " << (rep.ok ? "ok   " : "FAIL ")
                          << rep.identity;
                if (!rep.note.empty()) std::cout << "  [" << rep.note << "]";
                std::cout << "\n";
            }
        }
        first = false;
    }
    if (opt.json) std::cout << "]\n";
    return all_pass ? 0 : 1;
}

int cmd_jet(const Options& opt, const std::vector<std::string>& args) {
    if (args.empty()) return usage();
    if (args[0] == "verify-appendix") return cmd_verify(opt, "jet-appendix");
    if (args[0] != "invariants") return usage();
    std::optional<int> copies, level, weight, degree;
    for (size_t i = 1; i + 1 < args.size(); i += 2) {
        const long v = arg_long(args[i + 1]);
        if (args[i] == "--copies") copies = static_cast<int>(v);
        else if (args[i] == "--level") level = static_cast<int>(v);
        else if (args[i] == "--weight") weight = static_cast<int>(v);
        else if (args[i] == "--degree") degree = static_cast<int>(v);
        else return usage();
    }
    if (!copies || !level || !weight || !degree) return usage();
    JetRing ring = adjoint_jet_ring(sl2_root_basis(), *copies, *level);
    SliceComponent inv = invariant_component(ring, *weight, *degree);
    const int gen = generated_component(ring, *weight, *degree);
    if (opt.json) {
        std::cout << "{\"copies\":" << *copies << ",\"level\":" << *level
                  << ",\"weight\":" << *weight << ",\"degree\":" << *degree
                  << ",\"invariant_dimension\":" << inv.dimension
                  << ",\"generated_dimension\":" << gen << ",\"basis\":[";
        for (size_t i = 0; i < inv.basis.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << "\"" << jp_str(ring, inv.basis[i]) << "\"";
        }
        std::cout << "]}\n";
    } else {
        std::cout << "invariant dimension " << inv.dimension
                  << ", generated dimension " << gen << "\n";
        for (const JetPoly& b : inv.basis)
            std::cout << "  " << jp_str(ring, b) << "\n";
    }
    return inv.dimension == gen ? 0 : 1;
}

int run(const Options& opt) {
    const auto& a = opt.args;
    if (a.empty()) return usage();
    const std::string& verb = a[0];

    if (verb == "parse" || verb == "canon") {
        if (a.size() != 2) return usage();
        print_expr(input_expr(a[1]), opt);
        return 0;
    }
    if (verb == "wick") {
        if (a.size() != 3) return usage();
        print_expr(wick(input_expr(a[1]), input_expr(a[2])), opt);
        return 0;
    }
    if (verb == "circle") {
        if (a.size() != 4) return usage();
        print_expr(circle(input_expr(a[2]), input_expr(a[3]),
                          arg_long(a[1])),
                   opt);
        return 0;
    }
    if (verb == "ope") {
        if (a.size() != 3) return usage();
        auto terms = ope_singular(input_expr(a[1]), input_expr(a[2]));
        if (opt.json) {
            std::cout << "[";
            for (size_t i = 0; i < terms.size(); ++i) {
                if (i) std::cout << ",";
                std::cout << "{\"n\":" << terms[i].first << ",\"value\":"
                          << expr_to_json(terms[i].second, labels()) << "}";
            }
            std::cout << "]\n";
        } else {
            if (terms.empty()) std::cout << "regular\n";
            for (const auto& [n, e] : terms)
                std::cout << "o_" << n << ": " << format_expr(e, labels())
                          << "\n";
        }
        return 0;
    }
    if (verb == "mode") {
        if (a.size() != 4) return usage();
        const long k = arg_long(a[2]);
        if (k < 0) {
            std::cerr << "mode: k must be >= 0\n";
            return 2;
        }
        print_expr(apply_mode(input_expr(a[1]), k, input_expr(a[3])), opt);
        return 0;
    }
    if (verb == "grade") {
        if (a.size() != 2) return usage();
        Expr e = input_expr(a[1]);
        int w = 0, d = 0, bn = 0, p = 0;
        const bool hw = homogeneous_weight(e, w),
                   hd = homogeneous_degree(e, d),
                   hb = homogeneous_bnumber(e, bn),
                   hp = homogeneous_parity(e, p);
        auto field = [&](const char* name, bool homog, int v) {
            if (opt.json) {
                std::cout << ",\"" << name << "\":";
                if (homog) std::cout << v;
                else std::cout << "null";
            } else {
                std::cout << name << ": ";
                if (homog) std::cout << v;
                else std::cout << "mixed";
                std::cout << "\n";
            }
        };
        if (opt.json) std::cout << "{\"polydegree\":" << max_polydegree(e);
        else std::cout << "polydegree: " << max_polydegree(e) << "\n";
        field("weight", hw, w);
        field("degree", hd, d);
        field("bnumber", hb, bn);
        field("parity", hp, p);
        if (opt.json) std::cout << "}\n";
        return 0;
    }
    if (verb == "verify") {
        if (a.size() != 2) return usage();
        return cmd_verify(opt, a[1]);
    }
    if (verb == "psi-class") {
        if (a.size() != 4) return usage();
        Sl2Monomial mu{static_cast<int>(arg_long(a[1])),
                       static_cast<int>(arg_long(a[2])),
                       static_cast<int>(arg_long(a[3]))};
        print_expr(psi_class(table(), mu).representative(), opt);
        return 0;
    }
    if (verb == "h-class") {
        if (a.size() != 2) return usage();
        print_expr(h_class(table(), static_cast<int>(arg_long(a[1]))), opt);
        return 0;
    }
    if (verb == "jet")
        return cmd_jet(opt, {a.begin() + 1, a.end()});
    if (verb == "oracle-diff") {
        if (a.size() != 4) return usage();
        const long n = arg_long(a[1]);
        Expr x = input_expr(a[2]), y = input_expr(a[3]);
        const bool match = oracle_matches_circle(x, y, n);
        Expr engine = circle(x, y, n);
        if (opt.json) {
            std::cout << "{\"match\":" << (match ? "true" : "false")
                      << ",\"engine\":" << expr_to_json(engine, labels())
                      << ",\"oracle\":\""
                      << fock_str(fock_circle(x, y, n)) << "\"}\n";
        } else {
            std::cout << (match ? "match" : "MISMATCH") << "\n";
            std::cout << "engine: " << format_expr(engine, labels()) << "\n";
            std::cout << "oracle: " << fock_str(fock_circle(x, y, n)) << "\n";
        }
        return match ? 0 : 1;
    }
    return usage();
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    opt.seed = default_seed();
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--json") {
            opt.json = true;
        } else if (arg == "--seed") {
            if (i + 1 >= argc) return usage();
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            opt.args.push_back(arg);
        }
    }
    try {
        return run(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
