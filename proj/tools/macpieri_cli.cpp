// Command-line interface: compute E and E* polynomials, Pieri-type
// expansions, binomial coefficients, principal evaluations and Jack-limit
// branching data, all exactly; run the verification harness; prewarm the
// disk cache. Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 infrastructure error.

#include <exception>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "macpieri/cache.hpp"
#include "macpieri/composition.hpp"
#include "macpieri/jack.hpp"
#include "macpieri/macdonald.hpp"
#include "macpieri/pieri.hpp"
#include "macpieri/qt_scalar.hpp"
#include "macpieri/render.hpp"
#include "macpieri/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfrastructure = 3;

struct UsageProblem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using macpieri::Composition;
using macpieri::Expansion;
using macpieri::MacdonaldBuilder;
using macpieri::ParamKind;
using macpieri::PolyCache;
using macpieri::QTScalar;
using Poly = macpieri::LaurentPoly<QTScalar>;

Composition parse_comp_arg(const std::string& text) {
    try {
        return macpieri::parse_composition(text);
    } catch (const std::exception& e) {
        throw UsageProblem("invalid composition '" + text + "': " + e.what());
    }
}

void emit(const std::string& text) { std::cout << text; }

void emit_json(const nlohmann::ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

// Shared state for the compute-style subcommands.
struct ComputeArgs {
    std::string eta;
    std::string nu;
    std::string params = "std";
    std::string format = "text";
    std::string op = "e1";
    std::string cache_dir;
    int i = 0;
    long alpha = 1;
};

std::unique_ptr<PolyCache> open_cache(const std::string& dir) {
    if (dir.empty()) return nullptr;
    return std::make_unique<PolyCache>(dir);
}

int cmd_poly(const ComputeArgs& a, bool interpolation) {
    Composition eta = parse_comp_arg(a.eta);
    MacdonaldBuilder<QTScalar> B;
    auto cache = open_cache(a.cache_dir);
    macpieri::cached_estar(B, eta, cache.get());
    Poly out;
    if (interpolation) {
        out = B.estar(eta);
        if (a.params == "inv")
            out.map_coefficients([](const QTScalar& c) { return c.invert_params(); });
    } else {
        out = B.E(eta, a.params == "std" ? ParamKind::Standard : ParamKind::Inverted);
    }
    if (a.format == "json") {
        emit_json(macpieri::poly_json(a.params, eta, out));
    } else {
        emit(macpieri::poly_to_text(out) + "\n");
    }
    return kExitOk;
}

int cmd_expand(const ComputeArgs& a) {
    Composition eta = parse_comp_arg(a.eta);
    int n = eta.n();
    std::vector<macpieri::PieriTerm<QTScalar>> terms;
    if (a.op == "zi") {
        if (a.i < 1 || a.i > n)
            throw UsageProblem("--i must name a variable between 1 and " + std::to_string(n));
        terms = macpieri::expand_zi<QTScalar>(eta, a.i);
    } else if (a.op == "e1") {
        terms = macpieri::expand_e1<QTScalar>(eta);
    } else if (a.op == "en1") {
        if (n < 2) throw UsageProblem("--op en1 needs at least two variables");
        terms = macpieri::expand_en_minus_1<QTScalar>(eta);
    } else {
        throw UsageProblem("unknown expansion operator '" + a.op + "'");
    }
    auto list = macpieri::sorted_terms(terms);
    if (a.params == "std")
        for (auto& [target, coeff] : list) coeff = coeff.invert_params();
    if (a.format == "json") {
        emit_json(macpieri::expansion_json(a.params, "E", eta, list));
    } else {
        emit(macpieri::terms_to_text(list));
    }
    return kExitOk;
}

int cmd_binom(const ComputeArgs& a) {
    Composition nu = parse_comp_arg(a.nu);
    Composition eta = parse_comp_arg(a.eta);
    if (nu.n() != eta.n())
        throw UsageProblem("compositions must have the same number of parts");
    MacdonaldBuilder<QTScalar> B;
    auto cache = open_cache(a.cache_dir);
    macpieri::cached_estar(B, eta, cache.get());
    QTScalar v = macpieri::binom_general(B, nu, eta);
    if (a.params == "inv") v = v.invert_params();
    if (a.format == "json") {
        emit_json(macpieri::scalar_json("binom", a.params, v.to_string()));
    } else {
        emit(v.to_string() + "\n");
    }
    return kExitOk;
}

int cmd_keta(const ComputeArgs& a) {
    Composition eta = parse_comp_arg(a.eta);
    QTScalar v = macpieri::k_eta<QTScalar>(eta);
    if (a.params == "inv") v = v.invert_params();
    if (a.format == "json") {
        emit_json(macpieri::scalar_json("keta", a.params, v.to_string()));
    } else {
        emit(v.to_string() + "\n");
    }
    return kExitOk;
}

int cmd_jack(const ComputeArgs& a) {
    Composition eta = parse_comp_arg(a.eta);
    if (a.op != "e1")
        throw UsageProblem("the classical limit provides --op e1 only");
    if (a.alpha < 1) throw UsageProblem("--alpha must be a positive integer");
    std::vector<std::pair<Composition, macpieri::Rational>> list;
    for (const macpieri::IndexSet& I : macpieri::maximal_subsets(eta)) {
        macpieri::Rational c = macpieri::jack_coefficient(eta, I, a.alpha);
        if (c == 0) continue;
        list.emplace_back(macpieri::c_I(eta, I), c);
    }
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
        return macpieri::total_less(x.first, y.first);
    });
    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["kind"] = "jack-e1";
        j["alpha"] = a.alpha;
        j["basis"] = "E";
        j["source"] = eta.parts;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [target, c] : list) {
            nlohmann::ordered_json t;
            t["comp"] = target.parts;
            t["coeff"] = macpieri::rational_str(c);
            arr.push_back(std::move(t));
        }
        j["terms"] = std::move(arr);
        emit_json(j);
    } else {
        std::string out;
        for (const auto& [target, c] : list)
            out += target.to_string() + ": " + macpieri::rational_str(c) + "\n";
        emit(out);
    }
    return kExitOk;
}

int cmd_cache(const std::string& dir, const std::vector<int>& ns, int max_modulus) {
    if (dir.empty()) throw UsageProblem("--cache-dir is required");
    PolyCache cache(dir);
    MacdonaldBuilder<QTScalar> B;
    long count = 0;
    std::vector<int> targets = ns.empty() ? std::vector<int>{1, 2, 3} : ns;
    for (int n : targets) {
        if (n < 1 || n > 6) throw UsageProblem("variable count out of range: " + std::to_string(n));
        int mm = max_modulus >= 0 ? max_modulus : (n <= 2 ? 4 : 3);
        for (const Composition& eta : macpieri::compositions_up_to_modulus(n, mm)) {
            macpieri::cached_estar(B, eta, &cache);
            ++count;
        }
    }
    std::cout << "cached " << count << " interpolation polynomials under " << cache.dir().string()
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact nonsymmetric Macdonald polynomials, Pieri expansions and verification"};
    app.require_subcommand(1);

    ComputeArgs args;
    const std::vector<std::string> param_values{"std", "inv"};
    const std::vector<std::string> format_values{"text", "json"};

    CLI::App* cmd_E = app.add_subcommand("E", "homogeneous polynomial E_eta");
    cmd_E->add_option("--eta", args.eta, "composition, comma-separated")->required();
    cmd_E->add_option("--params", args.params, "parameter convention")
        ->check(CLI::IsMember(param_values));
    cmd_E->add_option("--format", args.format, "output format")->check(CLI::IsMember(format_values));
    cmd_E->add_option("--cache-dir", args.cache_dir, "directory for the polynomial cache");

    CLI::App* cmd_Estar = app.add_subcommand("Estar", "interpolation polynomial E*_eta");
    cmd_Estar->add_option("--eta", args.eta, "composition, comma-separated")->required();
    cmd_Estar->add_option("--params", args.params, "parameter convention")
        ->check(CLI::IsMember(param_values));
    cmd_Estar->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember(format_values));
    cmd_Estar->add_option("--cache-dir", args.cache_dir, "directory for the polynomial cache");

    CLI::App* cmd_exp = app.add_subcommand("expand", "Pieri-type expansion in the E basis");
    cmd_exp->add_option("--op", args.op, "one of zi, e1, en1")
        ->check(CLI::IsMember(std::vector<std::string>{"zi", "e1", "en1"}));
    cmd_exp->add_option("--eta", args.eta, "composition, comma-separated")->required();
    cmd_exp->add_option("--i", args.i, "variable index for --op zi (1-based)");
    std::string expand_params = "inv";
    cmd_exp->add_option("--params", expand_params,
                        "parameter convention of the printed coefficients")
        ->check(CLI::IsMember(param_values));
    cmd_exp->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember(format_values));

    CLI::App* cmd_bin = app.add_subcommand("binom", "generalized binomial coefficient");
    cmd_bin->add_option("--nu", args.nu, "upper composition")->required();
    cmd_bin->add_option("--eta", args.eta, "lower composition")->required();
    cmd_bin->add_option("--params", args.params, "parameter convention")
        ->check(CLI::IsMember(param_values));
    cmd_bin->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember(format_values));
    cmd_bin->add_option("--cache-dir", args.cache_dir, "directory for the polynomial cache");

    CLI::App* cmd_k = app.add_subcommand("keta", "principal evaluation E*_eta(eta-bar)");
    cmd_k->add_option("--eta", args.eta, "composition, comma-separated")->required();
    cmd_k->add_option("--params", args.params, "parameter convention")
        ->check(CLI::IsMember(param_values));
    cmd_k->add_option("--format", args.format, "output format")->check(CLI::IsMember(format_values));

    CLI::App* cmd_j = app.add_subcommand("jack", "classical-limit branching coefficients");
    cmd_j->add_option("--eta", args.eta, "composition, comma-separated")->required();
    cmd_j->add_option("--alpha", args.alpha, "positive integer parameter")->required();
    cmd_j->add_option("--op", args.op, "expansion operator (e1)");
    cmd_j->add_option("--format", args.format, "output format")->check(CLI::IsMember(format_values));

    macpieri::VerifyOptions vopt;
    std::string verify_mode = "symbolic";
    std::string verify_format = "text";
    CLI::App* cmd_v = app.add_subcommand("verify", "run the verification suites");
    cmd_v->add_option("--suites", vopt.suites, "suites to run (default: all)")->delimiter(',');
    cmd_v->add_option("--n", vopt.ns, "variable counts (default: 1,2,3)")->delimiter(',');
    cmd_v->add_option("--max-modulus", vopt.max_modulus, "degree bound override");
    cmd_v->add_option("--mode", verify_mode, "symbolic or sampled")
        ->check(CLI::IsMember(std::vector<std::string>{"symbolic", "sampled"}));
    cmd_v->add_option("--seed", vopt.seed, "sample-point seed");
    cmd_v->add_option("--jobs", vopt.jobs, "worker threads");
    cmd_v->add_option("--cache-dir", vopt.cache_dir, "directory for the polynomial cache");
    cmd_v->add_option("--format", verify_format, "report format")
        ->check(CLI::IsMember(format_values));
    cmd_v->add_flag("--lprime-minus", vopt.lprime_minus,
                    "debug: use the deliberately wrong leg-colength convention");

    std::string cache_dir_arg;
    std::vector<int> cache_ns;
    int cache_max_modulus = -1;
    CLI::App* cmd_c = app.add_subcommand("cache", "prewarm the polynomial cache");
    cmd_c->add_option("--cache-dir", cache_dir_arg, "directory for the polynomial cache")
        ->required();
    cmd_c->add_option("--n", cache_ns, "variable counts (default: 1,2,3)")->delimiter(',');
    cmd_c->add_option("--max-modulus", cache_max_modulus, "degree bound override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_E)) return cmd_poly(args, /*interpolation=*/false);
        if (app.got_subcommand(cmd_Estar)) return cmd_poly(args, /*interpolation=*/true);
        if (app.got_subcommand(cmd_exp)) {
            args.params = expand_params;
            return cmd_expand(args);
        }
        if (app.got_subcommand(cmd_bin)) return cmd_binom(args);
        if (app.got_subcommand(cmd_k)) return cmd_keta(args);
        if (app.got_subcommand(cmd_j)) return cmd_jack(args);
        if (app.got_subcommand(cmd_v)) {
            vopt.sampled = verify_mode == "sampled";
            if (auto err = macpieri::validate_verify_options(vopt)) throw UsageProblem(*err);
            macpieri::VerifySummary summary = macpieri::run_verify(vopt);
            if (verify_format == "json") {
                emit_json(macpieri::verify_report_json(vopt, summary));
            } else {
                emit(macpieri::verify_report_text(vopt, summary));
            }
            return summary.exit_code();
        }
        if (app.got_subcommand(cmd_c)) return cmd_cache(cache_dir_arg, cache_ns, cache_max_modulus);
        std::cerr << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const UsageProblem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfrastructure;
    }
}
