#include "gpa/convolution.hpp"

#include "gpa/catalog.hpp"
#include "gpa/parallel.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gpa {

// ---------------------------------------------------------------- monomials

std::string ThetaMonomial::str() const {
    std::string s;
    if (bottom) s = "[" + bottom->name + "]";
    for (const auto& [i, p] : factors) {
        if (!s.empty()) s += " ";
        s += std::to_string(i + 1);
        if (p != 1) s += "^" + std::to_string(p);
    }
    return s.empty() ? "1" : s;
}

bool ThetaMonomial::operator<(const ThetaMonomial& o) const {
    const std::string a = bottom ? bottom->name : std::string(), b = o.bottom ? o.bottom->name : std::string();
    if (a != b) return a < b;
    return factors < o.factors;
}

ThetaMonomial theta_word(const std::vector<int>& vertices) {
    ThetaMonomial m;
    for (int v : vertices) m.factors.push_back({v, 1});
    return m;
}

ThetaMonomial parse_word(const std::string& text, int n) {
    ThetaMonomial m;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        int v = 0, p = 1;
        try {
            auto caret = tok.find('^');
            std::size_t used = 0;
            v = std::stoi(tok.substr(0, caret), &used);
            if (used != (caret == std::string::npos ? tok.size() : caret)) throw std::invalid_argument(tok);
            if (caret != std::string::npos) {
                p = std::stoi(tok.substr(caret + 1), &used);
                if (used != tok.size() - caret - 1) throw std::invalid_argument(tok);
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad word entry '" + tok + "'");
        }
        if (v < 1 || v > n || p < 1) throw Error(ErrorKind::ParseError, "word entry out of range: " + tok);
        m.factors.push_back({v - 1, p});
    }
    return m;
}

ConvExpr ConvExpr::one() { return monomial(ThetaMonomial{}); }

ConvExpr ConvExpr::monomial(const ThetaMonomial& m, const Rational& c) {
    ConvExpr e;
    e.add(m, c);
    return e;
}

void ConvExpr::add(const ThetaMonomial& m, const Rational& c) {
    auto& slot = terms[m];
    slot += c;
    if (slot == 0) terms.erase(m);
}

ConvExpr ConvExpr::operator+(const ConvExpr& o) const {
    ConvExpr r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, c);
    return r;
}

ConvExpr ConvExpr::operator-(const ConvExpr& o) const { return *this + o.scaled(Rational(-1)); }

ConvExpr ConvExpr::scaled(const Rational& c) const {
    ConvExpr r;
    if (c == 0) return r;
    for (const auto& [m, x] : terms) r.terms[m] = x * c;
    return r;
}

ConvExpr ConvExpr::operator*(const ConvExpr& o) const {
    ConvExpr r;
    for (const auto& [a, x] : terms)
        for (const auto& [b, y] : o.terms) {
            if (b.bottom && (a.bottom || !a.factors.empty()))
                throw Error(ErrorKind::PreconditionViolated, "isomorphism-class factor must be the bottom factor");
            ThetaMonomial m = a;
            if (b.bottom) m.bottom = b.bottom;
            m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
            r.add(m, x * y);
        }
    return r;
}

std::string ConvExpr::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*(" + m.str() + ")";
    }
    return s;
}

ConvExpr serre_element(const CartanDatum& d, int i, int j) {
    if (i == j || d.C[i][j] > 0) throw Error(ErrorKind::PreconditionViolated, "Serre element needs i != j and c_ij <= 0");
    const long N = 1 - d.C[i][j];
    ConvExpr e;
    mpz_class binom = 1;
    for (long k = 0; k <= N; ++k) {
        if (k > 0) binom = binom * (N - k + 1) / k;
        std::vector<int> w(k, i);
        w.push_back(j);
        w.insert(w.end(), N - k, i);
        Rational c(binom);
        if ((N - k) % 2) c = -c;
        e.add(theta_word(w), c);
    }
    return e;
}

// ---------------------------------------------------------------- flag counting

namespace {

struct Level {
    int vertex = -1;  // -1 for the isomorphism-class factor
    int power = 0;
};

std::vector<Level> levels_of(const ThetaMonomial& w) {
    std::vector<Level> L;
    if (w.bottom) L.push_back({-1, 0});
    for (const auto& [i, p] : w.factors) {
        if (p < 1) throw Error(ErrorKind::PreconditionViolated, "monomial powers must be positive");
        L.push_back({i, p});
    }
    return L;
}

// dims[k] = dimension vector of U_k.
std::vector<IVec> level_dims(const DatumPtr& d, const ThetaMonomial& w) {
    const int n = d->n();
    std::vector<IVec> dims{IVec(n, 0)};
    for (const Level& l : levels_of(w)) {
        IVec x = dims.back();
        if (l.vertex < 0) {
            for (int v = 0; v < n; ++v) x[v] += w.bottom->module->dims[v];
        } else {
            x[l.vertex] += d->c(l.vertex) * l.power;
        }
        dims.push_back(x);
    }
    return dims;
}

long q_pow_capped(std::uint64_t q, long e, long cap) {
    long r = 1;
    for (long k = 0; k < e; ++k) {
        if (r > cap / static_cast<long>(q)) return cap + 1;
        r *= static_cast<long>(q);
    }
    return r;
}

bool iso_exact(const Rep<Fp>& U, const Rep<Fp>& N) {
    if (U.dims != N.dims) return false;
    if (hom_dim(U, U) != hom_dim(N, N)) return false;
    auto basis = hom_basis(N, U);
    const int n = U.n();
    auto invertible = [&](const HomElem<Fp>& f) {
        for (int v = 0; v < n; ++v)
            if (rank(f[v]) != static_cast<std::size_t>(U.dims[v])) return false;
        return true;
    };
    auto combine = [&](const std::vector<Fp>& c) {
        HomElem<Fp> f;
        for (int v = 0; v < n; ++v) f.emplace_back(U.dims[v], N.dims[v]);
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (int v = 0; v < n; ++v) f[v] = f[v] + basis[k][v].scaled(c[k]);
        return f;
    };
    const std::uint64_t q = Fp::modulus();
    const long h = static_cast<long>(basis.size());
    if (q_pow_capped(q, h, 4096) <= 4096) {
        std::vector<long> digit(h, 0);
        while (true) {
            std::vector<Fp> c;
            for (long x : digit) c.emplace_back(x);
            if (invertible(combine(c))) return true;
            long k = 0;
            while (k < h && ++digit[k] == static_cast<long>(q)) digit[k++] = 0;
            if (k == h) return false;
        }
    }
    Rng rng(0x5eed);
    for (int t = 0; t < 64; ++t) {
        std::vector<Fp> c;
        for (long k = 0; k < h; ++k) c.push_back(Field<Fp>::random(rng));
        if (invertible(combine(c))) return true;
    }
    return false;
}

struct FlagCounter {
    const ThetaMonomial& w;
    const ConvBudget& budget;
    std::vector<Level> L;
    std::vector<IVec> dims;
    std::optional<Rep<Fp>> iso;
    unsigned long long steps = 0;

    FlagCounter(const Rep<Fp>& M, const ThetaMonomial& word, const ConvBudget& b)
        : w(word), budget(b), L(levels_of(word)), dims(level_dims(M.datum, word)) {
        if (w.bottom) iso = reduce_mod(*w.bottom->module);
    }

    unsigned long long count(const Rep<Fp>& U, std::size_t k) {
        if (k == 0) return U.is_zero_module() ? 1 : 0;
        if (U.dim_vector() != dims[k]) return 0;
        const Level& lv = L[k - 1];
        if (lv.vertex < 0) return iso_exact(U, *iso) ? 1 : 0;
        if (k == 1) return is_E_power(U, lv.vertex, lv.power) ? 1 : 0;
        return over_kernels(U, k, lv.vertex, lv.power);
    }

    // Submodules U' with U/U' = E_i^p, parametrized by normal forms of surjections.
    unsigned long long over_kernels(const Rep<Fp>& U, std::size_t k, int i, int p) {
        const int c = static_cast<int>(U.datum->c(i));
        const std::size_t d = U.dims[i];
        Matrix<Fp> K = image_space(U, i);
        const std::size_t nN = d - K.cols();
        if (nN < static_cast<std::size_t>(c * p)) return 0;
        Matrix<Fp> C = complement_basis(K, d);
        Matrix<Fp> Pinv = *inverse(hstack(K, C));
        Matrix<Fp> proj = Pinv.block(K.cols(), 0, nN, d);
        const Matrix<Fp>& eps = U.mats[U.quiver().eps(i)];
        Matrix<Fp> epsN = proj * eps * C;
        auto chains = jordan_chains(epsN);
        std::vector<int> len;
        Matrix<Fp> J(nN, 0);
        for (const auto& [g, l] : chains) {
            Matrix<Fp> v = g;
            for (int t = 0; t < l; ++t) {
                J = hstack(J, v);
                v = epsN * v;
            }
            len.push_back(l);
        }
        int s = 0;
        while (s < static_cast<int>(len.size()) && len[s] == c) ++s;
        if (s < p) return 0;
        std::vector<std::size_t> start(len.size());
        for (std::size_t b = 1; b < len.size(); ++b) start[b] = start[b - 1] + len[b - 1];
        const Matrix<Fp> CJ = C * J;
        const std::uint64_t q = Fp::modulus();
        unsigned long long total = 0;

        std::vector<int> piv(p);
        for (int r = 0; r < p; ++r) piv[r] = r;
        while (true) {
            // Free slots: (block, row, power of eps) for f(generator of block).
            struct Slot {
                std::size_t block;
                int row, e;
            };
            std::vector<Slot> slots;
            std::vector<int> pivot_row(len.size(), -1);
            for (int r = 0; r < p; ++r) pivot_row[piv[r]] = r;
            for (std::size_t b = 0; b < len.size(); ++b) {
                if (pivot_row[b] >= 0) continue;
                for (int r = 0; r < p; ++r)
                    for (int e = c - len[b]; e < c; ++e) {
                        if (e == 0 && !(static_cast<int>(b) < s && piv[r] < static_cast<int>(b))) continue;
                        slots.push_back({b, r, e});
                    }
            }
            if (static_cast<long>(slots.size()) > budget.max_free_dim)
                throw Error(ErrorKind::BudgetExceeded, "kernel family has " + std::to_string(slots.size()) +
                                                           " parameters (cap " + std::to_string(budget.max_free_dim) + ")");
            std::vector<std::uint64_t> digit(slots.size(), 0);
            while (true) {
                if (++steps > budget.max_steps)
                    throw Error(ErrorKind::BudgetExceeded, "flag enumeration exceeds " + std::to_string(budget.max_steps) + " kernels");
                // f(eps^t g_b) has coordinate (r, e + t) from coefficient (r, e) of f(g_b).
                Matrix<Fp> F(static_cast<std::size_t>(p * c), nN);
                for (int r = 0; r < p; ++r) {
                    const std::size_t b = piv[r];
                    for (int t = 0; t < len[b]; ++t) F(r * c + t, start[b] + t) = Fp(1);
                }
                for (std::size_t x = 0; x < slots.size(); ++x) {
                    if (digit[x] == 0) continue;
                    const Slot& sl = slots[x];
                    for (int t = 0; sl.e + t < c && t < len[sl.block]; ++t)
                        F(sl.row * c + sl.e + t, start[sl.block] + t) = Fp(static_cast<long>(digit[x]));
                }
                Matrix<Fp> V = CJ * nullspace(F);
                std::vector<Matrix<Fp>> basis;
                for (int v = 0; v < U.n(); ++v)
                    basis.push_back(v == i ? hstack(K, V) : Matrix<Fp>::identity(U.dims[v]));
                total += count(make_witness(U, basis).sub, k - 1);
                std::size_t x = 0;
                while (x < digit.size() && ++digit[x] == q) digit[x++] = 0;
                if (x == digit.size()) break;
            }
            int r = p - 1;
            while (r >= 0 && piv[r] == s - p + r) --r;
            if (r < 0) break;
            ++piv[r];
            for (int t = r + 1; t < p; ++t) piv[t] = piv[t - 1] + 1;
        }
        return total;
    }
};

}  // namespace

unsigned long long flag_count_fq(const Rep<Fp>& M, const ThetaMonomial& w, const ConvBudget& budget) {
    FlagCounter fc(M, w, budget);
    return fc.count(M, fc.L.size());
}

long degree_bound(const DatumPtr& d, const IVec& dims, const ThetaMonomial& w) {
    auto D = level_dims(d, w);
    if (D.back() != dims) return -1;
    auto L = levels_of(w);
    long bound = 0;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const Level& l = L[k];
        if (l.vertex >= 0) bound += l.power * (D[k + 1][l.vertex] - d->c(l.vertex) * l.power);
    }
    return bound;
}

// ---------------------------------------------------------------- interpolation

Rational PointCountPoly::at(const Rational& q) const {
    Rational r = 0, pw = 1;
    for (const auto& c : coeffs) {
        r += c * pw;
        pw *= q;
    }
    return r;
}

std::string PointCountPoly::str() const {
    std::string s;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k] == 0) continue;
        if (!s.empty()) s += coeffs[k] > 0 ? " + " : " - ";
        else if (coeffs[k] < 0) s += "-";
        Rational a = abs(coeffs[k]);
        if (a != 1 || k == 0) s += a.get_str();
        if (k > 0) s += (a != 1 ? "*q" : "q") + (k > 1 ? "^" + std::to_string(k) : std::string());
    }
    return s.empty() ? "0" : s;
}

namespace {

// Invariants a good reduction must preserve.
template <class T>
std::vector<long> reduction_profile(const Rep<T>& M) {
    std::vector<long> out(M.dims.begin(), M.dims.end());
    for (const auto& m : M.mats) out.push_back(static_cast<long>(rank(m)));
    for (int i = 0; i < M.n(); ++i) {
        for (int x : jordan_type(M, i)) out.push_back(x);
        out.push_back(-1);
        out.push_back(static_cast<long>(image_space(M, i).cols()));
        out.push_back(static_cast<long>(sub_space(M, i).cols()));
    }
    return out;
}

bool denominators_ok(const Rep<Rational>& M, std::uint64_t p) {
    for (const auto& m : M.mats)
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (mpz_divisible_ui_p(m(r, c).get_den_mpz_t(), p)) return false;
    return true;
}

bool good_prime(const Rep<Rational>& M, const std::vector<long>& prof, std::uint64_t p) {
    if (!denominators_ok(M, p)) return false;
    FpModulus guard(p);
    Rep<Fp> R = reduce_mod(M);
    return check_relations(R).empty() && reduction_profile(R) == prof;
}

std::vector<Rational> interpolate(const std::vector<std::uint64_t>& xs, const std::vector<unsigned long long>& ys) {
    const std::size_t m = xs.size();
    std::vector<Rational> poly(m, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * Rational(static_cast<long>(xs[k]));
            }
            basis = next;
            denom *= Rational(static_cast<long>(xs[j])) - Rational(static_cast<long>(xs[k]));
        }
        Rational scale = Rational(mpz_class(std::to_string(ys[j]))) / denom;
        for (std::size_t t = 0; t < basis.size(); ++t) poly[t] += basis[t] * scale;
    }
    for (auto& c : poly) c.canonicalize();
    while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
    return poly;
}

}  // namespace

PointCountPoly point_count_poly(const Rep<Rational>& M, const ThetaMonomial& w, const EvalOptions& opt) {
    PointCountPoly P;
    P.degree_bound = degree_bound(M.datum, M.dim_vector(), w);
    if (P.degree_bound < 0) {
        P.coeffs = {Rational(0)};
        return P;
    }
    if (P.degree_bound > opt.budget.max_degree)
        throw Error(ErrorKind::BudgetExceeded, "degree bound " + std::to_string(P.degree_bound) + " exceeds " +
                                                   std::to_string(opt.budget.max_degree));
    const std::size_t need = static_cast<std::size_t>(P.degree_bound) + 1;
    const std::size_t total = need + static_cast<std::size_t>(std::max(1, opt.budget.check_primes));
    auto prof = reduction_profile(M);
    std::vector<long> iso_prof;
    if (w.bottom) iso_prof = reduction_profile(*w.bottom->module);
    auto good = [&](std::uint64_t p) {
        return good_prime(M, prof, p) && (!w.bottom || good_prime(*w.bottom->module, iso_prof, p));
    };
    std::vector<std::uint64_t> primes;
    if (!opt.budget.primes.empty()) {
        for (auto p : opt.budget.primes) {
            if (!is_prime(p)) throw Error(ErrorKind::PreconditionViolated, std::to_string(p) + " is not prime");
            if (good(p)) primes.push_back(p);
        }
        if (primes.size() < total)
            throw Error(ErrorKind::BadReduction, "only " + std::to_string(primes.size()) + " usable primes, need " +
                                                     std::to_string(total));
        primes.resize(total);
    } else {
        for (std::uint64_t p = 5; primes.size() < total; p += 2) {
            if (p > 100000) throw Error(ErrorKind::BadReduction, "no good primes below 100000");
            if (is_prime(p) && good(p)) primes.push_back(p);
        }
    }
    std::vector<unsigned long long> counts(total);
    parallel_for(total, thread_count(opt.threads), primes[0], [&](std::size_t k) {
        FpModulus guard(primes[k]);
        counts[k] = flag_count_fq(reduce_mod(M), w, opt.budget);
    });
    P.primes.assign(primes.begin(), primes.begin() + need);
    P.counts.assign(counts.begin(), counts.begin() + need);
    P.check_primes.assign(primes.begin() + need, primes.end());
    P.check_counts.assign(counts.begin() + need, counts.end());
    P.coeffs = interpolate(P.primes, P.counts);
    for (std::size_t k = 0; k < P.check_primes.size(); ++k) {
        Rational pred = P.at(Rational(static_cast<long>(P.check_primes[k])));
        if (pred != Rational(mpz_class(std::to_string(P.check_counts[k]))))
            throw Error(ErrorKind::NonPolynomialCount, "word " + w.str() + ": count at q=" +
                                                           std::to_string(P.check_primes[k]) + " is " +
                                                           std::to_string(P.check_counts[k]) + ", polynomial " +
                                                           P.str() + " predicts " + pred.get_str());
    }
    return P;
}

// ---------------------------------------------------------------- torus fixed points

long torus_euler(const Rep<Rational>& M, const ThetaMonomial& w) {
    if (w.bottom) throw Error(ErrorKind::TorusNotApplicable, "isomorphism-class factors are not torus stable");
    const auto& q = M.quiver();
    const int n = M.n();
    const long nb = M.total_dim();
    if (nb > 64) throw Error(ErrorKind::TorusNotApplicable, "more than 64 basis vectors");
    std::vector<long> off(n + 1, 0);
    for (int v = 0; v < n; ++v) off[v + 1] = off[v] + M.dims[v];
    const std::size_t A = q.arrows.size();
    // Weight equations w(target) - w(source) - chi(arrow) = 0 for every nonzero entry.
    std::vector<std::vector<Rational>> rows;
    std::vector<std::uint64_t> out(nb, 0);
    for (std::size_t a = 0; a < A; ++a) {
        const auto& m = M.mats[a];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                if (m(r, c) == 0) continue;
                const long t = off[q.arrows[a].tgt] + static_cast<long>(r), s = off[q.arrows[a].src] + static_cast<long>(c);
                std::vector<Rational> row(nb + A, Rational(0));
                row[t] += 1;
                row[s] -= 1;
                row[nb + a] -= 1;
                rows.push_back(row);
                out[s] |= std::uint64_t(1) << t;
            }
    }
    Matrix<Rational> E(rows.size(), nb + A);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < nb + A; ++c) E(r, c) = rows[r][c];
    Matrix<Rational> Z = nullspace(E);
    for (int v = 0; v < n; ++v)
        for (long x = off[v]; x < off[v + 1]; ++x)
            for (long y = x + 1; y < off[v + 1]; ++y) {
                bool differ = false;
                for (std::size_t k = 0; k < Z.cols() && !differ; ++k) differ = Z(x, k) != Z(y, k);
                if (!differ)
                    throw Error(ErrorKind::TorusNotApplicable, "no grading separates two basis vectors at vertex " +
                                                                   std::to_string(v + 1));
            }
    auto levels = levels_of(w);
    auto dims = level_dims(M.datum, w);
    if (dims.back() != M.dim_vector()) return 0;
    std::unordered_map<std::uint64_t, long> memo[65];
    auto vertex_mask = [&](int v) {
        std::uint64_t m = 0;
        for (long x = off[v]; x < off[v + 1]; ++x) m |= std::uint64_t(1) << x;
        return m;
    };
    auto stable = [&](std::uint64_t S) {
        for (long b = 0; b < nb; ++b)
            if ((S >> b & 1) && (out[b] & ~S)) return false;
        return true;
    };
    // Quotient spanned by Q (inside vertex i) is E_i^p.
    auto is_free_quotient = [&](std::uint64_t Q, int i, int p) {
        const long c = M.datum->c(i);
        std::vector<long> idx;
        for (long b = off[i]; b < off[i + 1]; ++b)
            if (Q >> b & 1) idx.push_back(b - off[i]);
        if (static_cast<long>(idx.size()) != c * p) return false;
        const auto& eps = M.mats[q.eps(i)];
        Matrix<Rational> e(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t s = 0; s < idx.size(); ++s) e(r, s) = eps(idx[r], idx[s]);
        return static_cast<long>(rank(e.pow(static_cast<int>(c - 1)))) == p;
    };
    std::function<long(std::uint64_t, std::size_t)> count = [&](std::uint64_t S, std::size_t k) -> long {
        if (k == 0) return S == 0 ? 1 : 0;
        auto it = memo[k].find(S);
        if (it != memo[k].end()) return it->second;
        const int i = levels[k - 1].vertex, p = levels[k - 1].power;
        const long c = M.datum->c(i);
        const std::uint64_t Si = S & vertex_mask(i);
        std::vector<long> pos;
        for (long b = 0; b < nb; ++b)
            if (Si >> b & 1) pos.push_back(b);
        long total = 0;
        const int m = static_cast<int>(pos.size()), r = static_cast<int>(c * p);
        if (m >= r) {
            std::vector<int> pick(r);
            for (int t = 0; t < r; ++t) pick[t] = t;
            while (true) {
                std::uint64_t Q = 0;
                for (int t : pick) Q |= std::uint64_t(1) << pos[t];
                const std::uint64_t Sub = S & ~Q;
                if (stable(Sub) && is_free_quotient(Q, i, p)) total += count(Sub, k - 1);
                int t = r - 1;
                while (t >= 0 && pick[t] == m - r + t) --t;
                if (t < 0) break;
                ++pick[t];
                for (int u = t + 1; u < r; ++u) pick[u] = pick[u - 1] + 1;
            }
        }
        memo[k][S] = total;
        return total;
    };
    const std::uint64_t all = nb == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << nb) - 1;
    if (levels.size() > 64) throw Error(ErrorKind::TorusNotApplicable, "word too long");
    return count(all, levels.size());
}

// ---------------------------------------------------------------- evaluation

EulerResult euler_eval(const Rep<Rational>& M, const ThetaMonomial& w, const EvalOptions& opt) {
    EulerResult res;
    if (w.factors.empty() && !w.bottom) {
        res.chi = M.is_zero_module() ? 1 : 0;
        return res;
    }
    if (degree_bound(M.datum, M.dim_vector(), w) < 0) return res;
    auto interpolate_chi = [&] {
        PointCountPoly P = point_count_poly(M, w, opt);
        Rational chi = P.at(Rational(1));
        if (chi.get_den() != 1)
            throw Error(ErrorKind::NonPolynomialCount, "non-integral value at q=1 for " + w.str() + ": " + chi.get_str());
        res.chi = chi.get_num().get_si();
        res.method = EulerMethod::Interpolation;
        res.poly = std::move(P);
    };
    switch (opt.method) {
        case EulerMethod::Interpolation:
            interpolate_chi();
            break;
        case EulerMethod::Torus:
            res.chi = torus_euler(M, w);
            res.method = EulerMethod::Torus;
            break;
        case EulerMethod::Auto:
            try {
                interpolate_chi();
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BudgetExceeded) throw;
                try {
                    res.chi = torus_euler(M, w);
                    res.method = EulerMethod::Torus;
                } catch (const Error& t) {
                    if (t.kind() == ErrorKind::TorusNotApplicable) throw e;
                    throw;
                }
            }
            break;
    }
    return res;
}

Rational eval_expr(const Rep<Rational>& M, const ConvExpr& e, const EvalOptions& opt) {
    Rational r = 0;
    for (const auto& [m, c] : e.terms) r += c * Rational(euler_eval(M, m, opt).chi);
    return r;
}

// ---------------------------------------------------------------- rho and semicanonical functions

const std::vector<Rep<Rational>>& RhoContext::representatives(std::size_t node) {
    auto it = reps.find(node);
    if (it != reps.end()) return it->second;
    const auto& b = graph.nodes.at(node);
    std::vector<Rep<Rational>> out;
    for (std::uint64_t k = 0; k < 2; ++k) {
        GenericPolicy p;
        p.seed = split_seed(seed, 11 + k, node);
        GenericContext ctx(p);
        Rep<Rational> R = reconstruct_from_key<Rational>(graph.datum, b.key, ctx);
        if (profile(R, true) != b.profile())
            throw Error(ErrorKind::GenericityExhausted, "representative of " + key_str(b.key) + " has profile " +
                                                            profile(R, true).str());
        out.push_back(std::move(R));
    }
    return reps.emplace(node, std::move(out)).first->second;
}

Rational rho_eval(RhoContext& ctx, std::size_t node, const ConvExpr& e) {
    const auto& R = ctx.representatives(node);
    std::vector<Rational> vals;
    for (std::size_t k = 0; k < R.size(); ++k) {
        Rational v = 0;
        for (const auto& [m, c] : e.terms) {
            auto key = std::make_pair(node * 2 + k, m.str());
            auto it = ctx.cache.find(key);
            long chi = it != ctx.cache.end() ? it->second : (ctx.cache[key] = euler_eval(R[k], m, ctx.eval).chi);
            v += c * Rational(chi);
        }
        vals.push_back(v);
    }
    if (vals[0] != vals[1])
        throw Error(ErrorKind::GenericityExhausted, "representatives of " + key_str(ctx.graph.nodes[node].key) +
                                                        " disagree: " + vals[0].get_str() + " vs " + vals[1].get_str());
    return vals[0];
}

namespace {

struct SemicanonicalBuilder {
    RhoContext& ctx;
    std::map<std::size_t, ConvExpr> done;
    std::set<std::size_t> active;

    const ConvExpr& function_of(std::size_t z) {
        if (auto it = done.find(z); it != done.end()) return it->second;
        const auto& g = ctx.graph;
        const auto& Z = g.nodes[z];
        if (Z.height == 0) return done[z] = ConvExpr::one();
        if (!active.insert(z).second)
            throw Error(ErrorKind::DualityCheckFailed, "cyclic correction at " + key_str(Z.key));
        int i = 0;
        while (i < g.datum->n() && Z.phi_star[i] == 0) ++i;
        if (i == g.datum->n()) throw Error(ErrorKind::DualityCheckFailed, "node " + key_str(Z.key) + " has phi* = 0");
        const long p = Z.phi_star[i];
        long z1 = static_cast<long>(z);
        for (long t = 0; t < p; ++t) {
            z1 = g.reverse(EdgeKind::Star, static_cast<std::size_t>(z1), i);
            if (z1 < 0) throw Error(ErrorKind::DualityCheckFailed, "missing f~* edge below " + key_str(Z.key));
        }
        ThetaMonomial top;
        top.factors.push_back({i, static_cast<int>(p)});
        const ConvExpr f = function_of(static_cast<std::size_t>(z1)) * ConvExpr::monomial(top);
        ConvExpr out = f;
        for (std::size_t y = 0; y < g.nodes.size(); ++y) {
            if (y == z || g.nodes[y].wt != Z.wt || g.nodes[y].phi_star[i] <= p) continue;
            Rational c = rho_eval(ctx, y, f);
            if (c != 0) out = out - function_of(y).scaled(c);
        }
        active.erase(z);
        return done[z] = out;
    }
};

}  // namespace

SemicanonicalResult semicanonical_construct(RhoContext& ctx, const IVec& r) {
    const auto& g = ctx.graph;
    if (height(r) > g.max_height)
        throw Error(ErrorKind::HeightInsufficient, "weight " + format_vec(r) + " lies above the graph");
    SemicanonicalBuilder b{ctx, {}, {}};
    SemicanonicalResult res;
    for (std::size_t z = 0; z < g.nodes.size(); ++z)
        if (g.nodes[z].wt == r) res.nodes.push_back(z);
    for (std::size_t z : res.nodes) res.functions.push_back(b.function_of(z));
    for (std::size_t a = 0; a < res.nodes.size(); ++a) {
        std::vector<Rational> row;
        for (std::size_t c = 0; c < res.nodes.size(); ++c) row.push_back(rho_eval(ctx, res.nodes[c], res.functions[a]));
        res.rho.push_back(row);
    }
    for (std::size_t a = 0; a < res.nodes.size(); ++a)
        for (std::size_t c = 0; c < res.nodes.size(); ++c)
            if (res.rho[a][c] != (a == c ? 1 : 0))
                throw Error(ErrorKind::DualityCheckFailed, "rho matrix entry (" + key_str(g.nodes[res.nodes[a]].key) +
                                                               ", " + key_str(g.nodes[res.nodes[c]].key) +
                                                               ") = " + res.rho[a][c].get_str());
    return res;
}

}  // namespace gpa
