#include "ncrot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncrot/bimodule.hpp"
#include "ncrot/classify.hpp"
#include "ncrot/intmat.hpp"
#include "ncrot/kinv.hpp"
#include "ncrot/quadirr.hpp"

namespace ncrot::cli {

namespace {

using nlohmann::json;

struct Request {
    std::string matrix;
    std::string theta;
    std::string a;
    std::string theta2;
    std::string b;
    int k = 0;
    int k2 = 0;
    std::string generator = "all";
    int radius = 2;
    std::optional<double> tol;
    std::optional<std::size_t> grid;
    std::string batch;
    bool json = false;
};

struct Evaluated {
    int exit_code = Ok;
    json body;         // JSON rendering
    std::string text;  // text rendering
};

std::string factors_text(const std::array<Int, 2>& h) { return h[0].get_str() + " " + h[1].get_str(); }

json factors_json(const std::array<Int, 2>& h) { return json::array({int_to_json(h[0]), int_to_json(h[1])}); }

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// ---- subcommand handlers -------------------------------------------------

Evaluated do_snf(const Request& r) {
    const IntMatrix2 m = parse_matrix(r.matrix);
    const SmithDecomposition s = smith_normal_form(m);
    Evaluated e;
    e.body = {{"matrix", to_json(m)},
              {"invariant_factors", factors_json(s.invariant_factors)},
              {"left", to_json(s.left)},
              {"diag", to_json(s.diag)},
              {"right", to_json(s.right)}};
    e.text = "invariant factors: " + factors_text(s.invariant_factors) + "\nleft: " + to_text(s.left) +
             "\ndiag: " + to_text(s.diag) + "\nright: " + to_text(s.right) + "\n";
    return e;
}

Evaluated do_order(const Request& r) {
    const IntMatrix2 m = parse_matrix(r.matrix);
    const std::optional<unsigned> ord = order_in_sl2(m);
    Evaluated e;
    e.body = {{"matrix", to_json(m)}, {"finite", ord.has_value()}, {"order", ord ? json(*ord) : json(nullptr)}};
    e.text = "order: " + (ord ? std::to_string(*ord) : std::string("infinite")) + "\n";
    return e;
}

std::string kinv_text(const KInvariant& inv) {
    auto group = [](const KGroup& g) {
        std::string s = "Z^" + std::to_string(g.free_rank);
        for (const auto& h : g.torsion) s += " + Z/" + h.get_str();
        return s;
    };
    std::string s = "K0: " + group(inv.k0) + "\nK1: " + group(inv.k1) + "\ntrace image: (1/" +
                    inv.trace_image.k.get_str() + ")(Z + " + to_text(inv.trace_image.theta) + " Z)\n";
    for (const auto& g : inv.k0_generators) {
        s += "  " + g.label + "  trace " + (g.trace_value ? to_text(*g.trace_value) : std::string("-")) + "\n";
    }
    for (const auto& g : inv.k1_generators) {
        s += "  " + g.label + "  order " + (g.order ? (*g.order == 0 ? std::string("infinite") : g.order->get_str()) : "-") +
             "\n";
    }
    s += "flags: AF=" + yes_no(inv.flags.is_AF) + " AT=" + yes_no(inv.flags.is_AT) +
         " AH(rr0, no dimension growth)=" + yes_no(inv.flags.is_AH_rr0_no_dim_growth) +
         " iso to rotation algebra=" + yes_no(inv.flags.iso_to_rotation_algebra) + "\n";
    return s;
}

Evaluated do_kth(const Request& r) {
    const QuadIrr theta = parse_theta(r.theta);
    const IntMatrix2 a = parse_matrix(r.a);
    const KInvariant inv = k_invariants_integer_action(theta, a);
    return {Ok, to_json(inv), kinv_text(inv)};
}

Evaluated do_kth_finite(const Request& r) {
    const QuadIrr theta = parse_theta(r.theta);
    const KInvariant inv = k_invariants_finite_action(theta, r.k);
    return {Ok, to_json(inv), kinv_text(inv)};
}

Evaluated decision(const DecisionReport& d) {
    std::string t = "equivalent: " + yes_no(d.equivalent) + "\n";
    for (const auto& line : d.narrative) t += "  " + line + "\n";
    return {Ok, to_json(d), t};
}

Evaluated do_reciprocal(const Request& r) {
    const QuadIrr theta = parse_theta(r.theta);
    const IntMatrix2 a = parse_matrix(r.a);
    const auto [theta2, b] = reciprocal_witness(theta, a);
    const bool morita = decide_morita_integer(theta, a, theta2, b).equivalent;
    Evaluated e;
    e.body = {{"theta", to_text(theta2)}, {"matrix", to_json(b)}, {"morita_equivalent", morita}};
    e.text = "theta': " + to_text(theta2) + "\nB = T A T: " + to_text(b) + "\nMorita equivalent: " + yes_no(morita) +
             "\n";
    return e;
}

double bimodule_theta(const std::string& s) {
    if (s.empty()) return std::sqrt(2.0) - 1.0;
    const auto first = s.find_first_not_of(" \t");
    if (first != std::string::npos && (s[first] == '(' || s[first] == '{')) return parse_theta(s).value().to_double();
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected a decimal number or a quadratic irrational", 0);
    }
    if (s.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("trailing characters after number", used);
    return v;
}

Evaluated do_verify_bimodule(const Request& r) {
    using namespace bimodule;
    const double theta = bimodule_theta(r.theta);
    if (r.radius < 1) throw std::invalid_argument("--radius must be at least 1");
    VerifyOptions opts;
    if (r.grid) {
        if (*r.grid < 2) throw std::invalid_argument("--grid must be at least 2");
        opts.grid = linspace(-4.0, 4.0, *r.grid);
    }
    std::vector<OpWord> words;
    if (r.generator == "all") {
        words = {OpWord{{Letter::J}}, OpWord{{Letter::P}}, OpWord{{Letter::H}}};
    } else {
        words.push_back(parse_word(r.generator));
        if (words.back().letters.empty()) throw std::invalid_argument("--generator: empty word");
    }
    const auto tests = standard_test_set();
    Evaluated e;
    e.body = {{"theta", theta}, {"radius", r.radius}, {"grid_points", opts.grid.size()}, {"runs", json::array()}};
    bool all_pass = true;
    for (const auto& w : words) {
        const Operator op = w.letters.size() == 1 ? generator_operator(w.letters[0], theta) : word_operator(w, theta);
        const bool long_word = w.letters.size() > 1 || w.letters[0] == Letter::H;
        const double tol = r.tol.value_or(long_word ? 1e-8 : 1e-9);
        const Report cov = verify_covariance(theta, op, r.radius, tests, tol, opts);
        const Report inn = verify_inner_compat(theta, op, r.radius, tests, tol, opts);
        all_pass = all_pass && cov.pass && inn.pass;
        e.body["runs"].push_back(
            {{"operator", op.id}, {"tolerance", tol}, {"covariance", to_json(cov)}, {"inner_compat", to_json(inn)}});
        e.text += op.id + " covariance: " + (cov.pass ? "pass" : "FAIL") + " (worst " + fmt_double(cov.worst_case) +
                  ", " + std::to_string(cov.checks.size()) + " checks, tol " + fmt_double(tol) + ")\n";
        e.text += op.id + " inner products: " + (inn.pass ? "pass" : "FAIL") + " (worst " +
                  fmt_double(inn.worst_case) + ", " + std::to_string(inn.checks.size()) + " checks, tol " +
                  fmt_double(tol) + ")\n";
    }
    e.body["pass"] = all_pass;
    e.exit_code = all_pass ? Ok : VerificationFailed;
    return e;
}

Evaluated do_pv_check(const Request& r) {
    const std::size_t n = r.grid.value_or(32);
    if (n < 1) throw std::invalid_argument("--grid must be positive");
    const double tol = r.tol.value_or(1e-12);
    const bimodule::PvReport rep = bimodule::pv_check(n, tol);
    Evaluated e;
    e.body = to_json(rep);
    e.body["tolerance"] = tol;
    e.text = std::string("P(y,t) on a ") + std::to_string(n) + "x" + std::to_string(n) + " grid: " +
             (rep.pass ? "pass" : "FAIL") + "\n  max |P^2 - P| = " + fmt_double(rep.max_idempotent_err) +
             "\n  max |P* - P| = " + fmt_double(rep.max_selfadjoint_err) +
             "\n  max |tr P - 1| = " + fmt_double(rep.max_trace_err) + "\n";
    e.exit_code = rep.pass ? Ok : VerificationFailed;
    return e;
}

// ---- parsing and dispatch -----------------------------------------------

struct Parser {
    CLI::App app{"Crossed products of irrational rotation algebras: invariants, classification, bimodule checks",
                 "ncrot"};
    Request req;
    std::vector<std::pair<CLI::App*, Evaluated (*)(const Request&)>> handlers;

    Parser() {
        app.require_subcommand(0, 1);
        app.add_option("--batch", req.batch, "Run one request per line of FILE");
        app.add_flag("--json", req.json, "Emit JSON instead of text");

        auto sub = [&](const char* name, const char* desc, Evaluated (*fn)(const Request&)) {
            CLI::App* s = app.add_subcommand(name, desc);
            s->fallthrough();
            handlers.emplace_back(s, fn);
            return s;
        };
        auto matrix = [&](CLI::App* s, const char* flag, std::string& dst, const char* what) {
            s->add_option(flag, dst, std::string(what) + ": \"a b c d\" or {\"rows\":[[a,b],[c,d]]}")->required();
        };
        auto theta = [&](CLI::App* s, const char* flag, std::string& dst) {
            s->add_option(flag, dst, "Quadratic irrational \"(p+q*sqrt(d))/r\" or {\"p\":..,\"q\":..,\"r\":..,\"d\":..}")
                ->required();
        };
        auto order = [&](CLI::App* s, const char* flag, int& dst) {
            s->add_option(flag, dst, "Order of the finite cyclic subgroup (2, 3, 4 or 6)")->required();
        };

        matrix(sub("snf", "Smith normal form of a 2x2 integer matrix", do_snf), "--matrix", req.matrix, "Matrix");
        matrix(sub("order", "Order of an element of SL2(Z)", do_order), "--matrix", req.matrix, "Matrix");

        CLI::App* kth = sub("kth", "K-theory of A_theta x|_A Z", do_kth);
        theta(kth, "--theta", req.theta);
        matrix(kth, "--A", req.a, "Matrix A in SL2(Z) of infinite order");

        CLI::App* kthf = sub("kth-finite", "K-theory of A_theta x| Z_k", do_kth_finite);
        theta(kthf, "--theta", req.theta);
        order(kthf, "--k", req.k);

        for (auto [name, desc, fn] :
             {std::tuple{"iso", "Decide A_theta x|_A Z ~= A_theta' x|_B Z",
                         +[](const Request& r) {
                             return decision(decide_isomorphism(parse_theta(r.theta), parse_matrix(r.a),
                                                                parse_theta(r.theta2), parse_matrix(r.b)));
                         }},
              std::tuple{"morita", "Decide Morita equivalence of A_theta x|_A Z and A_theta' x|_B Z",
                         +[](const Request& r) {
                             return decision(decide_morita_integer(parse_theta(r.theta), parse_matrix(r.a),
                                                                   parse_theta(r.theta2), parse_matrix(r.b)));
                         }}}) {
            CLI::App* s = sub(name, desc, fn);
            theta(s, "--theta", req.theta);
            matrix(s, "--A", req.a, "Matrix A");
            theta(s, "--theta2", req.theta2);
            matrix(s, "--B", req.b, "Matrix B");
        }
        for (auto [name, desc, fn] :
             {std::tuple{"iso-finite", "Decide A_theta x| Z_k ~= A_theta' x| Z_k'",
                         +[](const Request& r) {
                             return decision(decide_isomorphism_finite(parse_theta(r.theta), r.k, parse_theta(r.theta2), r.k2));
                         }},
              std::tuple{"morita-finite", "Decide Morita equivalence of A_theta x| Z_k and A_theta' x| Z_k'",
                         +[](const Request& r) {
                             return decision(decide_morita_finite(parse_theta(r.theta), r.k, parse_theta(r.theta2), r.k2));
                         }}}) {
            CLI::App* s = sub(name, desc, fn);
            theta(s, "--theta", req.theta);
            order(s, "--k", req.k);
            theta(s, "--theta2", req.theta2);
            order(s, "--k2", req.k2);
        }

        CLI::App* rec = sub("reciprocal", "Morita witness (1/theta, T A T)", do_reciprocal);
        theta(rec, "--theta", req.theta);
        matrix(rec, "--A", req.a, "Matrix A");

        CLI::App* vb = sub("verify-bimodule", "Check covariance and inner-product compatibility of S_J, S_P, S_H",
                           do_verify_bimodule);
        vb->add_option("--theta", req.theta, "Positive real theta (decimal or quadratic irrational); default sqrt(2)-1");
        vb->add_option("--generator", req.generator, "J, P, H, a word such as \"J P Jinv\", or all")
            ->capture_default_str();
        vb->add_option("--radius", req.radius, "Lattice box radius")->capture_default_str();
        vb->add_option("--tol", req.tol, "Tolerance (default 1e-9, or 1e-8 for H and longer words)");
        vb->add_option("--grid", req.grid, "Number of sample points on [-4, 4] (default 128)");

        CLI::App* pv = sub("pv-check", "Check that P(y,t) is a projection of trace one on a grid", do_pv_check);
        pv->add_option("--grid", req.grid, "Grid size n for the n x n (y, t) grid (default 32)");
        pv->add_option("--tol", req.tol, "Tolerance (default 1e-12)");
    }

    Evaluated (*selected() const)(const Request&) {
        for (const auto& [s, fn] : handlers) {
            if (s->parsed()) return fn;
        }
        return nullptr;
    }
};

Evaluated error_result(const std::string& kind, const std::string& message, int code) {
    Evaluated e;
    e.exit_code = code;
    e.body = {{"error", {{"kind", kind}, {"message", message}}}};
    e.text = "error: " + message + "\n";
    return e;
}

Evaluated evaluate(const Request& req, Evaluated (*fn)(const Request&)) {
    try {
        return fn(req);
    } catch (const Error& ex) {
        return error_result(std::string(to_string(ex.kind())), ex.what(), exit_code_for(ex.kind()));
    } catch (const std::invalid_argument& ex) {
        return error_result("InvalidArgument", ex.what(), InvalidInput);
    } catch (const std::exception& ex) {
        return error_result("Internal", ex.what(), Internal);
    }
}

Outcome render(const Evaluated& e, bool json_mode, bool compact) {
    Outcome o;
    o.exit_code = e.exit_code;
    const bool is_error = e.body.is_object() && e.body.contains("error");
    if (json_mode) {
        o.out = (compact ? e.body.dump() : e.body.dump(2)) + "\n";
    } else if (is_error) {
        o.err = e.text;
    } else {
        o.out = e.text;
    }
    return o;
}

Outcome usage_error(const std::string& message, bool json_mode) {
    return render(error_result("UsageError", message, InvalidInput), json_mode, false);
}

Outcome run_batch(const std::string& path, bool json_mode) {
    std::ifstream in(path);
    if (!in) return usage_error("cannot open batch file '" + path + "'", json_mode);
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.back() == '\r') line.pop_back();
        lines.emplace_back(no, line);
    }

    std::vector<Outcome> results(lines.size());
    if (std::thread::hardware_concurrency() > 1 && lines.size() > 1) {
        std::vector<std::future<Outcome>> futs;
        for (const auto& [no, text] : lines) futs.push_back(std::async(std::launch::async, run_line, text, json_mode));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < lines.size(); ++i) results[i] = run_line(lines[i].second, json_mode);
    }

    Outcome all;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Outcome& r = results[i];
        all.exit_code = std::max(all.exit_code, r.exit_code);
        if (json_mode) {
            json entry{{"line", lines[i].first}, {"exit_code", r.exit_code}};
            entry["output"] = r.out.empty() ? json(nullptr) : json::parse(r.out);
            all.out += entry.dump() + "\n";
        } else {
            all.out += "[line " + std::to_string(lines[i].first) + "] exit " + std::to_string(r.exit_code) + "\n";
            all.out += r.out;
            all.out += r.err;
        }
    }
    return all;
}

template <class Parse>
Outcome run_with(Parse&& do_parse, bool json_default, bool compact, bool allow_batch) {
    Parser p;
    p.req.json = json_default;
    try {
        do_parse(p.app);
    } catch (const CLI::CallForHelp&) {
        return {Ok, p.app.help(), ""};
    } catch (const CLI::CallForAllHelp&) {
        return {Ok, p.app.help("", CLI::AppFormatMode::All), ""};
    } catch (const CLI::ParseError& ex) {
        return usage_error(ex.what(), p.req.json);
    }
    if (!p.req.batch.empty()) {
        if (!allow_batch) return usage_error("--batch cannot be nested", p.req.json);
        if (p.selected() != nullptr) return usage_error("--batch cannot be combined with a subcommand", p.req.json);
        return run_batch(p.req.batch, p.req.json);
    }
    auto fn = p.selected();
    if (fn == nullptr) return usage_error("a subcommand is required (try --help)", p.req.json);
    return render(evaluate(p.req, fn), p.req.json, compact);
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSL2:
        case ErrorKind::NotUnimodular:
        case ErrorKind::FiniteOrderMatrix:
        case ErrorKind::RationalValue:
        case ErrorKind::ZeroDenominator:
        case ErrorKind::UnsupportedOrder:
        case ErrorKind::DivergentAtom:
        case ErrorKind::NonUnitArgument:
        case ErrorKind::InvalidTheta:
        case ErrorKind::ParseError:
            return InvalidInput;
    }
    return Internal;
}

Outcome run(const std::vector<std::string>& args) {
    return run_with(
        [&](CLI::App& app) {
            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);
        },
        false, false, true);
}

Outcome run_line(const std::string& line, bool json) {
    return run_with([&](CLI::App& app) { app.parse(line, false); }, json, true, false);
}

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    const Outcome o = run(args);
    std::cout << o.out;
    std::cerr << o.err;
    std::cout.flush();
    return o.exit_code;
}

}  // namespace ncrot::cli
