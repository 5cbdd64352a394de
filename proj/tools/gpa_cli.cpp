// Command-line front end: config ingestion, module I/O and all operations.

#include "gpa/cartan.hpp"
#include "gpa/catalog.hpp"
#include "gpa/convolution.hpp"
#include "gpa/crystal.hpp"
#include "gpa/errors.hpp"
#include "gpa/filtration.hpp"
#include "gpa/generic_ops.hpp"
#include "gpa/module_io.hpp"

#include <CLI11.hpp>
#include <toml.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace gpa;

namespace {

enum Exit { kOk = 0, kVerify = 1, kInput = 2, kBudget = 3 };

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::RelationFailure:
        case ErrorKind::KeyCollision:
        case ErrorKind::NonPolynomialCount:
        case ErrorKind::BadReduction:
        case ErrorKind::DualityCheckFailed:
            return kVerify;
        case ErrorKind::GenericityExhausted:
        case ErrorKind::BudgetExceeded:
        case ErrorKind::TorusNotApplicable:
            return kBudget;
        default:
            return kInput;
    }
}

// Values from the [policy] and [budget] tables, overridable on the command line.
struct RunConfig {
    DatumPtr datum;
    GenericPolicy policy;
    ConvBudget budget;
};

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed, prime;
    std::optional<int> samples, retries;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class V>
V int_value(const toml::node_view<const toml::node>& n, const char* what) {
    auto v = n.value<std::int64_t>();
    if (!v || *v < 0) throw Error(ErrorKind::ParseError, std::string(what) + " must be a nonnegative integer");
    return static_cast<V>(*v);
}

RunConfig load_config(const CommonFlags& f) {
    if (f.config.empty()) throw Error(ErrorKind::ParseError, "--config is required");
    const std::string text = slurp(f.config);
    RunConfig rc;
    rc.datum = make_datum(parse_cartan_toml(text));
    const toml::table tbl = toml::parse(text);  // already validated by parse_cartan_toml
    if (auto* pol = tbl["policy"].as_table()) {
        const toml::node_view<const toml::node> p{pol};
        if (p["seed"]) rc.policy.seed = int_value<std::uint64_t>(p["seed"], "[policy].seed");
        if (p["samples"]) rc.policy.samples = int_value<int>(p["samples"], "[policy].samples");
        if (p["retries"]) rc.policy.retries = int_value<int>(p["retries"], "[policy].retries");
        if (p["prime"]) rc.policy.prime = int_value<std::uint64_t>(p["prime"], "[policy].prime");
    }
    if (auto* bud = tbl["budget"].as_table()) {
        const toml::node_view<const toml::node> b{bud};
        if (b["hom_cap"]) rc.budget.max_free_dim = int_value<int>(b["hom_cap"], "[budget].hom_cap");
        if (b["max_steps"]) rc.budget.max_steps = int_value<unsigned long long>(b["max_steps"], "[budget].max_steps");
        if (b["max_degree"]) rc.budget.max_degree = int_value<long>(b["max_degree"], "[budget].max_degree");
        if (b["check_primes"]) rc.budget.check_primes = int_value<int>(b["check_primes"], "[budget].check_primes");
        if (b["primes"]) {
            auto* arr = b["primes"].as_array();
            if (!arr) throw Error(ErrorKind::ParseError, "[budget].primes must be a list");
            for (const auto& e : *arr) {
                auto v = e.value<std::int64_t>();
                if (!v || *v < 5 || !is_prime(static_cast<std::uint64_t>(*v)))
                    throw Error(ErrorKind::ParseError, "[budget].primes entries must be primes >= 5");
                rc.budget.primes.push_back(static_cast<std::uint64_t>(*v));
            }
        }
    }
    if (f.seed) rc.policy.seed = *f.seed;
    if (f.samples) rc.policy.samples = *f.samples;
    if (f.retries) rc.policy.retries = *f.retries;
    if (f.prime) rc.policy.prime = *f.prime;
    if (rc.policy.samples < 2) throw Error(ErrorKind::ParseError, "samples must be at least 2");
    if (rc.policy.retries < 1) throw Error(ErrorKind::ParseError, "retries must be at least 1");
    if (!is_prime(rc.policy.prime) || rc.policy.prime < 5)
        throw Error(ErrorKind::ParseError, "prime must be a prime >= 5");
    return rc;
}

IVec parse_ivec(const std::string& text, int n, const char* what) {
    IVec out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, std::string(what) + ": bad entry '" + tok + "'");
        }
    }
    if (static_cast<int>(out.size()) != n)
        throw Error(ErrorKind::ParseError, std::string(what) + " needs " + std::to_string(n) + " entries");
    return out;
}

int vertex_arg(int v, int n, const char* what) {
    if (v < 1 || v > n) throw Error(ErrorKind::ParseError, std::string(what) + " out of range 1.." + std::to_string(n));
    return v - 1;
}

std::string join_parts(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
    return s + ")";
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------- check

template <class T>
int report_module(const Rep<T>& M, bool crystal_test, std::uint64_t seed) {
    const int n = M.n();
    const auto& d = *M.datum;
    std::cout << "dims " << format_vec(M.dim_vector()) << "\n";
    std::cout << "relations ok\n";
    for (int i = 0; i < n; ++i) std::cout << "jordan " << i + 1 << " " << join_parts(jordan_type(M, i)) << "\n";
    const bool lf = is_locally_free(M);
    std::cout << "locally free " << (lf ? "yes" : "no") << "\n";
    if (!lf) return kOk;
    const IVec r = rank_vector(M);
    IVec ph(n), phs(n), pair(n), ext(n), ext_in(n), hom_out(n), hom_in(n);
    for (int i = 0; i < n; ++i) {
        const Rep<T> E = make_E<T>(M.datum, i);
        ph[i] = phi(M, i);
        phs[i] = phi_star(M, i);
        pair[i] = d.cartan.pair_alpha(r, i);
        hom_out[i] = hom_dim(M, E);
        hom_in[i] = hom_dim(E, M);
        ext[i] = ext1_dim_direct(M, E);
        ext_in[i] = ext1_dim_direct(E, M);
    }
    std::cout << "rank " << format_vec(r) << "\n";
    std::cout << "weight pairing " << format_vec(pair) << "\n";
    std::cout << "phi " << format_vec(ph) << "\n";
    std::cout << "phi* " << format_vec(phs) << "\n";
    std::cout << "Hom(M,E) " << format_vec(hom_out) << "\n";
    std::cout << "Hom(E,M) " << format_vec(hom_in) << "\n";
    std::cout << "Ext1(M,E) " << format_vec(ext) << "\n";
    std::cout << "Ext1(E,M) " << format_vec(ext_in) << "\n";
    std::cout << "orbit dim " << orbit_dim(M) << "\n";
    std::cout << "expected dim " << expected_dim(d.cartan, M.dim_vector()) << "\n";
    int code = kOk;
    const auto mism = ext_formula_check(M);
    std::cout << "ext formula " << (mism.empty() ? "ok" : "FAILED") << "\n";
    if (!mism.empty()) code = kVerify;
    if (crystal_test) {
        FilterPolicy fp;
        fp.seed = seed;
        const auto tr = is_crystal(M, fp);
        std::cout << "crystal " << (tr.crystal ? "yes" : "no");
        if (!tr.crystal) std::cout << " (" << tr.reason << ")";
        std::cout << "\n";
    }
    return code;
}

int cmd_check(const RunConfig& rc, const std::string& module, bool crystal_test) {
    ModuleFile mf = read_module_file(rc.datum, module);
    if (mf.q) {
        std::cout << "field Q\n";
        return report_module(*mf.q, crystal_test, rc.policy.seed);
    }
    FpModulus guard(mf.p);
    std::cout << "field F_" << mf.p << "\n";
    return report_module(*mf.fp, crystal_test, rc.policy.seed);
}

// ---------------------------------------------------------------- crystal

CrystalGraph build_graph(const RunConfig& rc, int height) {
    if (height < 0) throw Error(ErrorKind::ParseError, "height must be nonnegative");
    GenerateOptions opt;
    opt.policy = rc.policy;
    opt.threads = 0;
    return generate_binfty(rc.datum, height, opt);
}

int cmd_crystal(const RunConfig& rc, int height, const std::string& dot, const std::string& json, bool axioms,
                bool kostant, bool no_star) {
    const CrystalGraph g = build_graph(rc, height);
    std::vector<long> layers(height + 1, 0);
    for (const auto& nd : g.nodes) ++layers[nd.height];
    // Reports go to stderr when a graph is streamed to stdout.
    std::ostream& out = (dot == "-" || json == "-") ? std::cerr : std::cout;
    out << "nodes " << g.nodes.size() << "\n";
    out << "layers";
    for (long c : layers) out << " " << c;
    out << "\n";
    int code = kOk;
    if (axioms) {
        VerifyOptions vo;
        vo.seed = rc.policy.seed + 1;
        const AxiomReport rep = verify_axioms(g, vo);
        out << rep.summary();
        if (!rep.summary().empty() && rep.summary().back() != '\n') out << "\n";
        out << "axioms " << (rep.ok() ? "ok" : "FAILED") << "\n";
        if (!rep.ok()) code = kVerify;
    }
    if (kostant) {
        const KostantReport kr = compare_kostant(g);
        for (const auto& row : kr.rows)
            out << "weight " << format_vec(row.weight) << " nodes " << row.nodes << " kostant " << row.kostant
                      << (static_cast<unsigned long long>(row.nodes) == row.kostant ? "" : " MISMATCH") << "\n";
        out << "kostant " << (kr.ok() ? "ok" : "FAILED") << "\n";
        if (!kr.ok()) code = kVerify;
    }
    if (!dot.empty()) write_output(dot, emit_dot(g, !no_star));
    if (!json.empty()) write_output(json, emit_json(g));
    return code;
}

// ---------------------------------------------------------------- lr

int cmd_lr(const RunConfig& rc, const std::string& lambda_s, const std::string& mu_s, int height) {
    const int n = rc.datum->n();
    const IVec lambda = parse_ivec(lambda_s, n, "--lambda");
    const IVec mu = parse_ivec(mu_s, n, "--mu");
    if (!is_dominant(lambda) || !is_dominant(mu)) throw Error(ErrorKind::NotDominant, "weights must be dominant");
    const auto& C = rc.datum->cartan.C;
    if (height < 0) height = static_cast<int>(std::min(lowest_weight_height(C, lambda), lowest_weight_height(C, mu)));
    const CrystalGraph g = build_graph(rc, height);
    const LRResult res = lr_decompose(g, lambda, mu);
    for (const auto& [nu, m] : res.terms) std::cout << "nu " << format_vec(nu) << " " << m << "\n";
    const bool ok = lr_dimension_check(rc.datum->cartan, lambda, mu, res);
    std::cout << "dimension check " << (ok ? "ok" : "FAILED") << "\n";
    return ok ? kOk : kVerify;
}

// ---------------------------------------------------------------- conv

EulerMethod parse_method(const std::string& m) {
    if (m == "auto") return EulerMethod::Auto;
    if (m == "interp") return EulerMethod::Interpolation;
    if (m == "torus") return EulerMethod::Torus;
    throw Error(ErrorKind::ParseError, "--method must be auto, interp or torus");
}

Rep<Rational> rational_module(const RunConfig& rc, const std::string& path) {
    ModuleFile mf = read_module_file(rc.datum, path);
    if (!mf.q) throw Error(ErrorKind::ParseError, "convolution needs a module over Q");
    return *mf.q;
}

EvalOptions eval_options(const RunConfig& rc, const std::string& method) {
    EvalOptions eo;
    eo.budget = rc.budget;
    eo.method = parse_method(method);
    eo.threads = 0;
    return eo;
}

int cmd_conv_eval(const RunConfig& rc, const std::string& module, const std::vector<std::string>& words,
                  const std::string& method) {
    const Rep<Rational> M = rational_module(rc, module);
    const EvalOptions eo = eval_options(rc, method);
    for (const auto& w : words) {
        const ThetaMonomial m = parse_word(w, rc.datum->n());
        const EulerResult r = euler_eval(M, m, eo);
        std::cout << "word " << m.str() << " method " << (r.method == EulerMethod::Torus ? "torus" : "interp");
        if (r.poly) std::cout << " count " << r.poly->str();
        std::cout << "\n" << Rational(r.chi).get_str() << "\n";
    }
    return kOk;
}

int cmd_conv_serre(const RunConfig& rc, int i, int j, const std::string& module, const std::string& method) {
    const int n = rc.datum->n();
    const int a = vertex_arg(i, n, "--i"), b = vertex_arg(j, n, "--j");
    if (a == b) throw Error(ErrorKind::ParseError, "--i and --j must differ");
    const Rep<Rational> M = rational_module(rc, module);
    const ConvExpr e = serre_element(rc.datum->cartan, a, b);
    std::cout << "expr " << e.str() << "\n";
    std::cout << eval_expr(M, e, eval_options(rc, method)).get_str() << "\n";
    return kOk;
}

// ---------------------------------------------------------------- semican

int cmd_semican(const RunConfig& rc, const std::string& weight_s, int height, const std::string& method) {
    const int n = rc.datum->n();
    std::vector<IVec> weights;
    if (!weight_s.empty()) {
        const IVec r = parse_ivec(weight_s, n, "--weight");
        for (long x : r)
            if (x < 0) throw Error(ErrorKind::ParseError, "--weight entries must be nonnegative");
        if (height < 0) height = static_cast<int>(gpa::height(r));
        if (gpa::height(r) > height) throw Error(ErrorKind::HeightInsufficient, "--height below the weight's height");
        weights.push_back(r);
    }
    if (height < 0) throw Error(ErrorKind::ParseError, "--weight or --height is required");
    const CrystalGraph g = build_graph(rc, height);
    if (weights.empty())
        for (const auto& [w, c] : weight_multiplicities(g))
            if (gpa::height(w) > 0) weights.push_back(w);
    RhoContext ctx(g, eval_options(rc, method), rc.policy.seed);
    for (const auto& r : weights) {
        const SemicanonicalResult res = semicanonical_construct(ctx, r);
        std::cout << "weight " << format_vec(r) << " components " << res.nodes.size() << "\n";
        for (std::size_t k = 0; k < res.nodes.size(); ++k)
            std::cout << "f[" << key_str(g.nodes[res.nodes[k]].key) << "] = " << res.functions[k].str() << "\n";
        for (const auto& row : res.rho) {
            std::cout << "rho";
            for (const auto& x : row) std::cout << " " << x.get_str();
            std::cout << "\n";
        }
    }
    std::cout << "duality ok\n";
    return kOk;
}

// ---------------------------------------------------------------- witness

int cmd_witness(const RunConfig& rc, int i, int j) {
    const int n = rc.datum->n();
    const int a = vertex_arg(i, n, "--i"), b = vertex_arg(j, n, "--j");
    const Rep<Rational> X = make_serre_witness<Rational>(rc.datum, a, b);
    std::cout << rep_to_json(X).dump(1) << "\n";
    return kOk;
}

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config, "TOML file with [cartan], [policy], [budget]")->required();
    sub->add_option("--seed", f.seed, "random seed (default 0)");
    sub->add_option("--samples", f.samples, "independent generic draws that must agree");
    sub->add_option("--retries", f.retries, "draws per sample before giving up");
    sub->add_option("--prime", f.prime, "prime for generic representatives");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized preprojective algebra toolkit"};
    app.require_subcommand(1);
    CommonFlags flags;

    std::string module, dot, json, lambda, mu, weight, method = "auto";
    std::vector<std::string> words;
    int height = -1, vi = 0, vj = 0;
    bool axioms = false, kostant = false, no_star = false, crystal_test = false;

    auto* check = app.add_subcommand("check", "invariants of a module file");
    add_common(check, flags);
    check->add_option("--module", module, "module JSON")->required();
    check->add_flag("--crystal", crystal_test, "also run the recursive crystal test");

    auto* crystal = app.add_subcommand("crystal", "truncated B(-infinity) graph");
    add_common(crystal, flags);
    crystal->add_option("--height", height, "height bound")->required();
    crystal->add_option("--dot", dot, "write DOT to file ('-' for stdout)");
    crystal->add_option("--json", json, "write JSON to file ('-' for stdout)");
    crystal->add_flag("--check-axioms", axioms, "verify crystal axioms");
    crystal->add_flag("--check-kostant", kostant, "compare weight multiplicities with Kostant counts");
    crystal->add_flag("--no-star", no_star, "omit star edges from DOT");

    auto* lr = app.add_subcommand("lr", "tensor product multiplicities");
    add_common(lr, flags);
    lr->add_option("--lambda", lambda, "dominant weight, fundamental coordinates")->required();
    lr->add_option("--mu", mu, "dominant weight, fundamental coordinates")->required();
    lr->add_option("--height", height, "graph height (default: the height required)");

    auto* conv = app.add_subcommand("conv", "convolution algebra evaluation");
    conv->require_subcommand(1);
    auto* eval = conv->add_subcommand("eval", "Euler characteristic of flag varieties");
    add_common(eval, flags);
    eval->add_option("--module", module, "module JSON over Q")->required();
    eval->add_option("--word", words, "word like 1,2,1 or 1^2,2 (repeatable)")->required();
    eval->add_option("--method", method, "auto, interp or torus");
    auto* serre = conv->add_subcommand("serre", "Serre element evaluation");
    add_common(serre, flags);
    serre->add_option("--i", vi, "vertex i")->required();
    serre->add_option("--j", vj, "vertex j")->required();
    serre->add_option("--module", module, "module JSON over Q")->required();
    serre->add_option("--method", method, "auto, interp or torus");

    auto* semican = app.add_subcommand("semican", "semicanonical functions with duality check");
    add_common(semican, flags);
    semican->add_option("--weight", weight, "root lattice weight r1,..,rn (default: every weight)");
    semican->add_option("--height", height, "graph height");
    semican->add_option("--method", method, "auto, interp or torus");

    auto* witness = app.add_subcommand("witness", "print the Serre witness module X(i,j)");
    add_common(witness, flags);
    witness->add_option("--i", vi, "vertex i")->required();
    witness->add_option("--j", vj, "vertex j")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        const RunConfig rc = load_config(flags);
        if (*check) return cmd_check(rc, module, crystal_test);
        if (*crystal) return cmd_crystal(rc, height, dot, json, axioms, kostant, no_star);
        if (*lr) return cmd_lr(rc, lambda, mu, height);
        if (*eval) return cmd_conv_eval(rc, module, words, method);
        if (*serre) return cmd_conv_serre(rc, vi, vj, module, method);
        if (*semican) return cmd_semican(rc, weight, height, method);
        if (*witness) return cmd_witness(rc, vi, vj);
    } catch (const Error& e) {
        std::cout.flush();
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const toml::parse_error& e) {
        std::cerr << "error: ParseError: " << e.description() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kOk;
}
