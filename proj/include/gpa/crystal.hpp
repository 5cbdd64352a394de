#pragma once

#include "gpa/filtration.hpp"
#include "gpa/generic_ops.hpp"

#include <map>
#include <string>
#include <vector>

namespace gpa {

// a_1, a_2, ... recorded along the cyclic index sequence 1, ..., n, 1, ...;
// trailing zeros trimmed.
using StringKey = std::vector<long>;

std::string key_str(const StringKey& k);
// Vertex used at position k (0-based) of the cyclic sequence.
inline int key_vertex(std::size_t k, int n) { return static_cast<int>(k % static_cast<std::size_t>(n)); }
IVec weight_of_key(const StringKey& k, int n);

template <class T> StringKey string_key(const Rep<T>& M, GenericContext& ctx);
template <class T> Rep<T> reconstruct_from_key(const DatumPtr& d, const StringKey& key, GenericContext& ctx);

struct CrystalNode {
    StringKey key;
    IVec wt, phi, phi_star, eps, eps_star, ext;
    long end_dim = -1;
    long height = 0;
    Rep<Fp> rep;  // generic representative over F_p, p = CrystalGraph::prime
    Profile profile() const { return Profile{wt, phi, phi_star, ext, end_dim}; }
};

enum class EdgeKind { Plain, Star };

struct CrystalGraph {
    DatumPtr datum;
    int max_height = 0;
    std::uint64_t prime = kDefaultPrime;
    std::uint64_t seed = 0;
    std::vector<CrystalNode> nodes;  // sorted by (height, key)
    std::map<StringKey, std::size_t> index;
    // plain[b][i] / star[b][i]: target of e~_i / e~*_i, or -1 above the height bound.
    std::vector<std::vector<long>> plain, star;

    long find(const StringKey& k) const {
        auto it = index.find(k);
        return it == index.end() ? -1 : static_cast<long>(it->second);
    }
    const std::vector<std::vector<long>>& edges(EdgeKind k) const { return k == EdgeKind::Plain ? plain : star; }
    // Reverse edge (f~_i or f~*_i); -1 when undefined.
    long reverse(EdgeKind k, std::size_t b, int i) const;
};

// Task seeds: the expansion of node b (in sorted order) at vertex i and kind k
// draws from split_seed(seed, layer, 2 * (b * n + i) + k).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct GenerateOptions {
    GenericPolicy policy;
    int threads = 1;  // 0 reads NUM_THREADS from the environment
};

// BFS from the zero module with e~_i and e~*_i, nodes identified by string key.
CrystalGraph generate_binfty(const DatumPtr& d, int max_height, const GenerateOptions& opt = {});

struct AxiomReport {
    std::vector<std::string> violations;
    std::map<std::string, long> checks;  // check name -> instances verified
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    double spot_fraction = 0.1;  // share of edges whose reverse is recomputed
    bool check_modules = true;   // run is_crystal on every representative
    bool check_star = true;      // transpose dual permutes each layer
};

AxiomReport verify_axioms(const CrystalGraph& g, const VerifyOptions& opt = {});

std::map<IVec, long> weight_multiplicities(const CrystalGraph& g);

struct KostantReport {
    struct Row {
        IVec weight;
        long nodes = 0;
        unsigned long long kostant = 0;
    };
    std::vector<Row> rows;  // every weight of height <= max_height
    bool ok() const;
};
// Throws NotFiniteType for non-finite Cartan matrices.
KostantReport compare_kostant(const CrystalGraph& g);

// Nodes with phi*_i <= lambda_i, resp. phi_i <= mu_i (weights in fundamental coordinates).
std::vector<std::size_t> b_lambda_star(const CrystalGraph& g, const IVec& lambda);
std::vector<std::size_t> b_mu(const CrystalGraph& g, const IVec& mu);

// Height of lambda - w0 lambda; every node of B_lambda or B*_lambda lies at or below it.
long lowest_weight_height(const IMat& C, const IVec& lambda);

struct LRResult {
    std::vector<std::pair<IVec, long>> terms;  // (nu, multiplicity), sorted by nu
    long required_height = 0;
    bool complete = false;
};
// Throws HeightInsufficient when the graph does not reach required_height.
LRResult lr_decompose(const CrystalGraph& g, const IVec& lambda, const IVec& mu);
// sum mult * dim V(nu) == dim V(lambda) * dim V(mu).
bool lr_dimension_check(const CartanDatum& d, const IVec& lambda, const IVec& mu, const LRResult& r);

std::string emit_dot(const CrystalGraph& g, bool include_star = true);
std::string emit_json(const CrystalGraph& g);

#define GPA_CRYSTAL_EXTERN(T)                                                   \
    extern template StringKey string_key(const Rep<T>&, GenericContext&);      \
    extern template Rep<T> reconstruct_from_key(const DatumPtr&, const StringKey&, GenericContext&);

GPA_CRYSTAL_EXTERN(Fp)
GPA_CRYSTAL_EXTERN(Rational)

}  // namespace gpa
