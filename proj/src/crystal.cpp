#include "gpa/crystal.hpp"

#include "gpa/module_io.hpp"
#include "gpa/parallel.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gpa {

std::string key_str(const StringKey& k) { return format_vec(k); }

IVec weight_of_key(const StringKey& k, int n) {
    IVec w(n, 0);
    for (std::size_t t = 0; t < k.size(); ++t) w[key_vertex(t, n)] += k[t];
    return w;
}

template <class T>
StringKey string_key(const Rep<T>& M, GenericContext& ctx) {
    const int n = M.n();
    StringKey key;
    Rep<T> cur = M;
    int zero_run = 0;
    for (std::size_t t = 0; !cur.is_zero_module(); ++t) {
        const int i = key_vertex(t, n);
        const long a = phi_star(cur, i);
        for (long r = 0; r < a; ++r) {
            auto next = f_star(cur, i, ctx);
            if (!next) throw Error(ErrorKind::PreconditionViolated, "f*_" + std::to_string(i + 1) + " undefined");
            cur = std::move(*next);
        }
        key.push_back(a);
        zero_run = a == 0 ? zero_run + 1 : 0;
        if (zero_run >= n)
            throw Error(ErrorKind::PreconditionViolated, "nonzero module with phi* = 0 at every vertex");
    }
    while (!key.empty() && key.back() == 0) key.pop_back();
    return key;
}

template <class T>
Rep<T> reconstruct_from_key(const DatumPtr& d, const StringKey& key, GenericContext& ctx) {
    Rep<T> cur = Rep<T>::zero(d);
    for (std::size_t t = key.size(); t-- > 0;) {
        if (key[t] < 0) throw Error(ErrorKind::PreconditionViolated, "negative entry in string key");
        for (long r = 0; r < key[t]; ++r) cur = e_star(cur, key_vertex(t, d->n()), ctx);
    }
    return cur;
}

long CrystalGraph::reverse(EdgeKind k, std::size_t b, int i) const {
    const auto& e = edges(k);
    for (std::size_t s = 0; s < e.size(); ++s)
        if (e[s][i] == static_cast<long>(b)) return static_cast<long>(s);
    return -1;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Expansion {
    Rep<Fp> rep;
    StringKey key;
    Profile prof;
};

CrystalNode make_node(const DatumPtr& d, Rep<Fp> rep, StringKey key, const Profile& p) {
    CrystalNode b;
    b.key = std::move(key);
    b.wt = p.wt;
    b.phi = p.phi;
    b.phi_star = p.phi_star;
    b.ext = p.ext;
    b.end_dim = p.end_dim;
    b.height = height(p.wt);
    for (int i = 0; i < d->n(); ++i) {
        b.eps.push_back(p.phi[i] - d->cartan.pair_alpha(p.wt, i));
        b.eps_star.push_back(p.phi_star[i] - d->cartan.pair_alpha(p.wt, i));
    }
    b.rep = std::move(rep);
    return b;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

CrystalGraph generate_binfty(const DatumPtr& d, int max_height, const GenerateOptions& opt) {
    if (max_height < 0) throw Error(ErrorKind::PreconditionViolated, "height bound must be nonnegative");
    const int n = d->n();
    const int threads = thread_count(opt.threads);
    CrystalGraph g;
    g.datum = d;
    g.max_height = max_height;
    g.prime = opt.policy.prime;
    g.seed = opt.policy.seed;
    {
        FpModulus guard(g.prime);
        Rep<Fp> zero = Rep<Fp>::zero(d);
        g.nodes.push_back(make_node(d, zero, {}, profile(zero, true)));
    }
    g.index[{}] = 0;
    std::size_t layer_begin = 0;
    for (int h = 0; h < max_height; ++h) {
        const std::size_t layer_end = g.nodes.size();
        const std::size_t tasks = (layer_end - layer_begin) * static_cast<std::size_t>(n) * 2;
        std::vector<Expansion> out(tasks);
        parallel_for(tasks, threads, g.prime, [&](std::size_t t) {
            const std::size_t b = layer_begin + t / (2 * n);
            const int i = static_cast<int>((t / 2) % n);
            const bool is_star = t % 2 == 1;
            GenericPolicy p = opt.policy;
            p.seed = split_seed(opt.policy.seed, static_cast<std::uint64_t>(h), t);
            GenericContext ctx(p);
            const Rep<Fp>& src = g.nodes[b].rep;
            Rep<Fp> x = is_star ? e_star(src, i, ctx) : e_plain(src, i, ctx);
            out[t].key = string_key(x, ctx);
            out[t].prof = profile(x, true);
            out[t].rep = std::move(x);
        });
        std::map<StringKey, std::size_t> fresh;  // key -> task that introduced it
        for (std::size_t t = 0; t < tasks; ++t) {
            auto it = fresh.find(out[t].key);
            if (it == fresh.end()) {
                fresh.emplace(out[t].key, t);
            } else if (out[it->second].prof != out[t].prof) {
                throw Error(ErrorKind::KeyCollision, "key " + key_str(out[t].key) + ": " +
                                                         out[it->second].prof.str() + " vs " + out[t].prof.str());
            }
        }
        for (auto& [key, t] : fresh) {
            g.index[key] = g.nodes.size();
            g.nodes.push_back(make_node(d, std::move(out[t].rep), key, out[t].prof));
        }
        g.plain.resize(layer_end, std::vector<long>(n, -1));
        g.star.resize(layer_end, std::vector<long>(n, -1));
        for (std::size_t t = 0; t < tasks; ++t) {
            const std::size_t b = layer_begin + t / (2 * n);
            const int i = static_cast<int>((t / 2) % n);
            auto& e = t % 2 == 1 ? g.star : g.plain;
            e[b][i] = static_cast<long>(g.index.at(out[t].key));
        }
        layer_begin = layer_end;
    }
    g.plain.resize(g.nodes.size(), std::vector<long>(n, -1));
    g.star.resize(g.nodes.size(), std::vector<long>(n, -1));
    return g;
}

std::string AxiomReport::summary() const {
    std::ostringstream os;
    for (const auto& [name, count] : checks) os << name << "=" << count << " ";
    os << "violations=" << violations.size();
    return os.str();
}

namespace {

struct Checker {
    const CrystalGraph& g;
    AxiomReport& rep;
    void expect(bool ok, const std::string& check, std::size_t b, const std::string& msg) {
        ++rep.checks[check];
        if (!ok) rep.violations.push_back(check + " at " + key_str(g.nodes[b].key) + ": " + msg);
    }
};

std::string vtx(int i) { return std::to_string(i + 1); }

}  // namespace

AxiomReport verify_axioms(const CrystalGraph& g, const VerifyOptions& opt) {
    AxiomReport rep;
    Checker ck{g, rep};
    const auto& cd = g.datum->cartan;
    const int n = g.datum->n();
    const long H = g.max_height;
    const std::size_t N = g.nodes.size();

    for (std::size_t b = 0; b < N; ++b) {
        const auto& x = g.nodes[b];
        ck.expect(weight_of_key(x.key, n) == x.wt, "wt_key", b, "weight differs from key sum");
        for (int i = 0; i < n; ++i) {
            const long pa = cd.pair_alpha(x.wt, i);
            ck.expect(x.phi[i] == x.eps[i] + pa && x.phi_star[i] == x.eps_star[i] + pa, "cr1", b, "vertex " + vtx(i));
            const long defect = x.phi[i] + x.phi_star[i] - pa;
            ck.expect(defect >= 0, "prop_iii", b, "negative defect at " + vtx(i));
            if (x.height >= H) continue;
            for (EdgeKind k : {EdgeKind::Plain, EdgeKind::Star}) {
                const long t = g.edges(k)[b][i];
                const bool pl = k == EdgeKind::Plain;
                ck.expect(t >= 0, "prop_i", b, (pl ? "e~_" : "e~*_") + vtx(i) + " missing");
                if (t < 0) continue;
                const auto& y = g.nodes[t];
                IVec w = x.wt;
                w[i] += 1;
                bool ok = y.wt == w;
                if (pl) ok = ok && y.phi[i] == x.phi[i] + 1 && y.eps[i] == x.eps[i] - 1;
                else ok = ok && y.phi_star[i] == x.phi_star[i] + 1 && y.eps_star[i] == x.eps_star[i] - 1;
                ck.expect(ok, "cr2", b, (pl ? "e~_" : "e~*_") + vtx(i));
            }
            const long tp = g.plain[b][i], ts = g.star[b][i];
            if (tp < 0 || ts < 0) continue;
            if (defect == 0) ck.expect(tp == ts, "prop_iv", b, "defect 0 but e~ != e~* at " + vtx(i));
            if (defect >= 1)
                ck.expect(g.nodes[tp].phi_star[i] == x.phi_star[i] && g.nodes[ts].phi[i] == x.phi[i], "prop_v", b,
                          "phi not preserved at " + vtx(i));
            if (defect >= 2 && x.height + 2 <= H)
                ck.expect(g.plain[ts][i] == g.star[tp][i], "prop_vi", b, "e~ e~* != e~* e~ at " + vtx(i));
            if (x.height + 2 <= H)
                for (int j = 0; j < n; ++j)
                    if (j != i) {
                        const long tj = g.plain[b][j];
                        if (tj < 0) continue;
                        ck.expect(g.star[tj][i] == g.plain[ts][j], "prop_ii", b,
                                  "e~*_" + vtx(i) + " e~_" + vtx(j) + " != e~_" + vtx(j) + " e~*_" + vtx(i));
                    }
        }
    }

    // cr3 injectivity; cr4 and cr5 through reverse edges.
    for (EdgeKind k : {EdgeKind::Plain, EdgeKind::Star}) {
        const bool pl = k == EdgeKind::Plain;
        const auto& e = g.edges(k);
        for (int i = 0; i < n; ++i) {
            std::vector<long> pre(N, -1);
            for (std::size_t b = 0; b < N; ++b) {
                const long t = e[b][i];
                if (t < 0) continue;
                ck.expect(pre[t] < 0, "cr3", b, std::string(pl ? "e~_" : "e~*_") + vtx(i) + " not injective");
                pre[t] = static_cast<long>(b);
            }
            for (std::size_t b = 0; b < N; ++b) {
                const long ph = pl ? g.nodes[b].phi[i] : g.nodes[b].phi_star[i];
                ck.expect((pre[b] >= 0) == (ph > 0), "cr4", b,
                          std::string(pl ? "f~_" : "f~*_") + vtx(i) + " defined iff phi > 0 fails");
                long len = 0;
                for (long c = pre[b]; c >= 0; c = pre[c]) ++len;
                ck.expect(len == ph, "cr5", b, "chain length " + std::to_string(len) + " vs " + std::to_string(ph));
            }
        }
    }

    FpModulus guard(g.prime);
    Rng spot(opt.seed);
    std::bernoulli_distribution pick(opt.spot_fraction);
    std::vector<long> star_of(N, -1);
    for (std::size_t b = 0; b < N; ++b) {
        const auto& x = g.nodes[b];
        ck.expect(check_relations(x.rep).empty() && is_locally_free(x.rep), "rep_valid", b, "relations or freeness");
        ck.expect(profile(x.rep, true) == x.profile(), "rep_profile", b, "stored invariants differ");
        GenericContext ctx(GenericPolicy{split_seed(opt.seed, 1, b), 2, 8, g.prime});
        ck.expect(string_key(x.rep, ctx) == x.key, "edge_key", b, "recomputed key differs");
        for (EdgeKind k : {EdgeKind::Plain, EdgeKind::Star}) {
            const bool pl = k == EdgeKind::Plain;
            for (int i = 0; i < n; ++i) {
                const long t = g.edges(k)[b][i];
                if (t < 0 || !pick(spot)) continue;
                auto back = pl ? f_plain(g.nodes[t].rep, i, ctx) : f_star(g.nodes[t].rep, i, ctx);
                ck.expect(back && string_key(*back, ctx) == x.key, "spot_reverse", b,
                          std::string(pl ? "f~_" : "f~*_") + vtx(i) + " does not return");
            }
        }
        if (opt.check_star) {
            const long s = g.find(string_key(transpose_dual(x.rep), ctx));
            star_of[b] = s;
            ck.expect(s >= 0 && g.nodes[s].wt == x.wt && g.nodes[s].phi == x.phi_star && g.nodes[s].phi_star == x.phi,
                      "star_image", b, "transpose dual lands outside the layer or does not swap phi");
        }
        if (opt.check_modules) {
            FilterPolicy fp;
            fp.seed = split_seed(opt.seed, 2, b);
            CrystalTrace tr = is_crystal(x.rep, fp);
            ck.expect(tr.crystal, "is_crystal", b, tr.reason);
        }
    }
    if (opt.check_star)
        for (std::size_t b = 0; b < N; ++b)
            if (star_of[b] >= 0) ck.expect(star_of[star_of[b]] == static_cast<long>(b), "star_involution", b, "not an involution");
    return rep;
}

std::map<IVec, long> weight_multiplicities(const CrystalGraph& g) {
    std::map<IVec, long> m;
    for (const auto& b : g.nodes) ++m[b.wt];
    return m;
}

bool KostantReport::ok() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const Row& r) { return r.nodes >= 0 && static_cast<unsigned long long>(r.nodes) == r.kostant; });
}

KostantReport compare_kostant(const CrystalGraph& g) {
    const auto& C = g.datum->cartan.C;
    const int n = g.datum->n();
    positive_roots(C);  // NotFiniteType outside finite type
    auto mult = weight_multiplicities(g);
    KostantReport rep;
    IVec r(n, 0);
    std::function<void(int, long)> rec = [&](int k, long left) {
        if (k == n) {
            KostantReport::Row row;
            row.weight = r;
            auto it = mult.find(r);
            row.nodes = it == mult.end() ? 0 : it->second;
            row.kostant = kostant_count(C, r);
            rep.rows.push_back(row);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            r[k] = v;
            rec(k + 1, left - v);
        }
        r[k] = 0;
    };
    rec(0, g.max_height);
    std::sort(rep.rows.begin(), rep.rows.end(), [](const KostantReport::Row& a, const KostantReport::Row& b) {
        return std::make_pair(height(a.weight), a.weight) < std::make_pair(height(b.weight), b.weight);
    });
    return rep;
}

namespace {

void require_dominant(const IVec& w, int n) {
    if (static_cast<int>(w.size()) != n || !is_dominant(w))
        throw Error(ErrorKind::NotDominant, "weight " + format_vec(w) + " is not dominant");
}

std::vector<std::size_t> filter(const CrystalGraph& g, const IVec& bound, bool star) {
    require_dominant(bound, g.datum->n());
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        const auto& v = star ? g.nodes[b].phi_star : g.nodes[b].phi;
        bool ok = true;
        for (int i = 0; i < g.datum->n(); ++i) ok = ok && v[i] <= bound[i];
        if (ok) out.push_back(b);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> b_lambda_star(const CrystalGraph& g, const IVec& lambda) { return filter(g, lambda, true); }
std::vector<std::size_t> b_mu(const CrystalGraph& g, const IVec& mu) { return filter(g, mu, false); }

long lowest_weight_height(const IMat& C, const IVec& lambda) {
    positive_roots(C);
    const int n = static_cast<int>(C.size());
    IVec x = lambda, r(n, 0);
    for (long steps = 0;; ++steps) {
        if (steps > 100000) throw Error(ErrorKind::NotFiniteType, "reflection sequence does not terminate");
        int i = 0;
        while (i < n && x[i] <= 0) ++i;
        if (i == n) break;
        const long xi = x[i];
        r[i] += xi;
        for (int j = 0; j < n; ++j) x[j] -= xi * C[j][i];
    }
    return height(r);
}

LRResult lr_decompose(const CrystalGraph& g, const IVec& lambda, const IVec& mu) {
    const int n = g.datum->n();
    require_dominant(lambda, n);
    require_dominant(mu, n);
    const auto& C = g.datum->cartan.C;
    LRResult res;
    res.required_height = std::min(lowest_weight_height(C, lambda), lowest_weight_height(C, mu));
    if (g.max_height < res.required_height)
        throw Error(ErrorKind::HeightInsufficient, "need height " + std::to_string(res.required_height) + ", graph has " +
                                                       std::to_string(g.max_height));
    res.complete = true;
    auto A = b_lambda_star(g, lambda);
    auto B = b_mu(g, mu);
    std::vector<std::size_t> both;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(both));
    std::map<IVec, long> count;
    for (std::size_t b : both) {
        IVec nu = nu_from_weight(C, lambda, mu, g.nodes[b].wt);
        if (is_dominant(nu)) ++count[nu];
    }
    res.terms.assign(count.begin(), count.end());
    return res;
}

bool lr_dimension_check(const CartanDatum& d, const IVec& lambda, const IVec& mu, const LRResult& r) {
    mpz_class lhs = 0;
    for (const auto& [nu, m] : r.terms) lhs += weyl_dim(d, nu) * m;
    return lhs == weyl_dim(d, lambda) * weyl_dim(d, mu);
}

std::string emit_dot(const CrystalGraph& g, bool include_star) {
    std::ostringstream os;
    os << "digraph binfty {\n  node [shape=box];\n";
    for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        const auto& x = g.nodes[b];
        os << "  n" << b << " [label=\"" << key_str(x.key) << "\\nwt=" << format_vec(x.wt) << "\\nphi="
           << format_vec(x.phi) << " phi*=" << format_vec(x.phi_star) << "\"];\n";
    }
    for (std::size_t b = 0; b < g.nodes.size(); ++b)
        for (int i = 0; i < g.datum->n(); ++i) {
            if (g.plain[b][i] >= 0) os << "  n" << b << " -> n" << g.plain[b][i] << " [label=\"" << i + 1 << "\"];\n";
            if (include_star && g.star[b][i] >= 0)
                os << "  n" << b << " -> n" << g.star[b][i] << " [label=\"" << i + 1 << "*\", style=dashed];\n";
        }
    os << "}\n";
    return os.str();
}

std::string emit_json(const CrystalGraph& g) {
    FpModulus guard(g.prime);
    const auto& cd = g.datum->cartan;
    nlohmann::json j;
    j["cartan"] = {{"C", cd.C}, {"D", cd.D}};
    nlohmann::json om = nlohmann::json::array();
    for (const auto& [a, b] : cd.omega) om.push_back({a + 1, b + 1});
    j["cartan"]["Omega"] = om;
    j["max_height"] = g.max_height;
    j["prime"] = g.prime;
    j["seed"] = g.seed;
    nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
    for (const auto& x : g.nodes) {
        nodes.push_back({{"key", x.key},
                         {"wt", x.wt},
                         {"height", x.height},
                         {"phi", x.phi},
                         {"phi_star", x.phi_star},
                         {"eps", x.eps},
                         {"eps_star", x.eps_star},
                         {"ext", x.ext},
                         {"end_dim", x.end_dim},
                         {"rep", rep_to_json(x.rep)}});
    }
    for (std::size_t b = 0; b < g.nodes.size(); ++b)
        for (int i = 0; i < g.datum->n(); ++i) {
            if (g.plain[b][i] >= 0)
                edges.push_back({{"from", g.nodes[b].key}, {"to", g.nodes[g.plain[b][i]].key}, {"i", i + 1}, {"kind", "plain"}});
            if (g.star[b][i] >= 0)
                edges.push_back({{"from", g.nodes[b].key}, {"to", g.nodes[g.star[b][i]].key}, {"i", i + 1}, {"kind", "star"}});
        }
    j["nodes"] = nodes;
    j["edges"] = edges;
    return j.dump(1) + "\n";
}

#define GPA_CRYSTAL_INST(T)                                            \
    template StringKey string_key(const Rep<T>&, GenericContext&);    \
    template Rep<T> reconstruct_from_key(const DatumPtr&, const StringKey&, GenericContext&);

GPA_CRYSTAL_INST(Fp)
GPA_CRYSTAL_INST(Rational)

}  // namespace gpa
