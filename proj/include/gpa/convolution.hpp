#pragma once

#include "gpa/crystal.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gpa {

// Characteristic function of an isomorphism class, allowed as the bottom factor.
struct IsoFactor {
    std::string name;
    std::shared_ptr<const Rep<Rational>> module;
};

// 1_{E_{i_1}^{p_1}} * ... * 1_{E_{i_t}^{p_t}}; the leftmost factor sits at the
// bottom of the flag.  An optional isomorphism-class factor sits below all of them.
struct ThetaMonomial {
    std::vector<std::pair<int, int>> factors;  // (vertex, power), vertex 0-based
    std::optional<IsoFactor> bottom;

    std::size_t length() const { return factors.size() + (bottom ? 1 : 0); }
    std::string str() const;  // "1^2 2 1", "[X1] 2"
    bool operator<(const ThetaMonomial& o) const;
    bool operator==(const ThetaMonomial& o) const { return !(*this < o) && !(o < *this); }
};

ThetaMonomial theta_word(const std::vector<int>& vertices);  // single powers
// Parses "1,2,1" or "1^2,2" (1-based vertices).
ThetaMonomial parse_word(const std::string& text, int n);

// Finite linear combination of monomials with rational coefficients.
struct ConvExpr {
    std::map<ThetaMonomial, Rational> terms;  // no zero coefficients

    static ConvExpr one();
    static ConvExpr monomial(const ThetaMonomial& m, const Rational& c = Rational(1));
    void add(const ThetaMonomial& m, const Rational& c);
    ConvExpr operator+(const ConvExpr& o) const;
    ConvExpr operator-(const ConvExpr& o) const;
    ConvExpr operator*(const ConvExpr& o) const;  // convolution of monomials by concatenation
    ConvExpr scaled(const Rational& c) const;
    std::string str() const;
};

// ad(theta_i)^{1-c_ij}(theta_j) expanded into single-power words.
ConvExpr serre_element(const CartanDatum& d, int i, int j);

struct ConvBudget {
    int max_free_dim = 22;                  // parameters of one kernel family
    unsigned long long max_steps = 5000000ULL;  // kernels visited per prime
    std::vector<std::uint64_t> primes;      // explicit interpolation primes; empty = automatic
    int check_primes = 2;                   // held-out primes
    long max_degree = 16;                   // largest degree bound worth interpolating
};

// Number of flags 0 = U_0 < ... < U_t = M with U_k/U_{k-1} = E_{i_k}^{p_k} over the
// current F_p.  Throws BudgetExceeded.
unsigned long long flag_count_fq(const Rep<Fp>& M, const ThetaMonomial& w, const ConvBudget& budget = {});

// Degree bound sum p_k (dim_{i_k} U_k - c_{i_k} p_k) on the point count; -1 if no flag can exist.
long degree_bound(const DatumPtr& d, const IVec& dims, const ThetaMonomial& w);

struct PointCountPoly {
    std::vector<Rational> coeffs;  // ascending powers of q
    std::vector<std::uint64_t> primes;
    std::vector<unsigned long long> counts;
    std::vector<std::uint64_t> check_primes;
    std::vector<unsigned long long> check_counts;
    long degree_bound = 0;
    Rational at(const Rational& q) const;
    std::string str() const;
};

enum class EulerMethod { Auto, Interpolation, Torus };

struct EvalOptions {
    ConvBudget budget;
    EulerMethod method = EulerMethod::Auto;
    int threads = 0;  // 0 reads NUM_THREADS
};

struct EulerResult {
    long chi = 0;
    EulerMethod method = EulerMethod::Interpolation;
    std::optional<PointCountPoly> poly;  // interpolation only
};

// Point counts at several primes, interpolated and evaluated at q = 1.
// Throws NonPolynomialCount, BadReduction, BudgetExceeded.
PointCountPoly point_count_poly(const Rep<Rational>& M, const ThetaMonomial& w, const EvalOptions& opt = {});
// Euler characteristic counted as fixed flags of a torus acting on a module whose
// arrows are compatible with a grading separating basis vectors; TorusNotApplicable otherwise.
long torus_euler(const Rep<Rational>& M, const ThetaMonomial& w);
EulerResult euler_eval(const Rep<Rational>& M, const ThetaMonomial& w, const EvalOptions& opt = {});
Rational eval_expr(const Rep<Rational>& M, const ConvExpr& e, const EvalOptions& opt = {});

// rho_Z through two independently reconstructed rational representatives.
struct RhoContext {
    const CrystalGraph& graph;
    EvalOptions eval;
    std::uint64_t seed = 0;
    std::map<std::size_t, std::vector<Rep<Rational>>> reps;
    std::map<std::pair<std::size_t, std::string>, long> cache;
    RhoContext(const CrystalGraph& g, const EvalOptions& e = {}, std::uint64_t s = 0) : graph(g), eval(e), seed(s) {}
    const std::vector<Rep<Rational>>& representatives(std::size_t node);
};
Rational rho_eval(RhoContext& ctx, std::size_t node, const ConvExpr& e);

struct SemicanonicalResult {
    std::vector<std::size_t> nodes;          // same-weight nodes, graph order
    std::vector<ConvExpr> functions;         // functions[k] belongs to nodes[k]
    std::vector<std::vector<Rational>> rho;  // rho[a][b] = rho_{nodes[b]}(functions[a])
};
// Throws DualityCheckFailed unless rho is the identity matrix.
SemicanonicalResult semicanonical_construct(RhoContext& ctx, const IVec& r);

}  // namespace gpa
