#include "sft/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "sft/errors.hpp"
#include "sft/genfun.hpp"

namespace sft {

std::optional<std::size_t> AdjMatrix::index_of(const Word& w) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), w);
    if (it == labels.end() || *it != w) {
        it = std::find(labels.begin(), labels.end(), w);
        if (it == labels.end()) return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels.begin());
}

std::uint64_t AdjMatrix::max_row_sum() const {
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < size(); ++j) s += at(i, j);
        best = std::max(best, s);
    }
    return best;
}

AdjMatrix AdjMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows,
                               std::vector<Word> labels) {
    AdjMatrix A;
    const auto n = rows.size();
    if (labels.empty())
        for (std::size_t i = 0; i < n; ++i) labels.push_back(Word{static_cast<Symbol>(i)});
    if (labels.size() != n) throw DomainError("label count does not match matrix size");
    A.labels = std::move(labels);
    for (const auto& r : rows) {
        if (r.size() != n) throw DomainError("adjacency matrix must be square");
        A.entries.insert(A.entries.end(), r.begin(), r.end());
    }
    return A;
}

namespace {

std::uint64_t to_u64(const mpz_class& v) {
    if (!v.fits_ulong_p()) throw NumericError("adjacency entry overflows 64 bits");
    return v.get_ui();
}

AdjMatrix build_block_matrix(const ShiftSpec& spec, bool tilde) {
    const auto p = spec.block_length();
    AdjMatrix A;
    for (auto& e : enumerate_slice(p - 1, spec).entries) A.labels.push_back(std::move(e.word));
    if (A.labels.empty()) throw DomainError("no allowed words of length " + std::to_string(p - 1));
    const auto n = A.labels.size();
    A.entries.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto xy = star(A.labels[i], A.labels[j]);
            if (!xy || !is_allowed(*xy, spec)) continue;
            A.at(i, j) = to_u64(tilde ? multiplicity(*xy, spec) : k_value(*xy, spec));
        }
    return A;
}

}  // namespace

AdjMatrix build_adjacency(const ShiftSpec& spec) { return build_block_matrix(spec, false); }
AdjMatrix build_tilde_adjacency(const ShiftSpec& spec) { return build_block_matrix(spec, true); }

bool is_irreducible(const AdjMatrix& A) {
    const auto n = A.size();
    if (n == 0) return false;
    auto reach_all = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::deque<std::size_t> todo{0};
        seen[0] = 1;
        while (!todo.empty()) {
            const auto u = todo.front();
            todo.pop_front();
            for (std::size_t v = 0; v < n; ++v) {
                const auto e = forward ? A.at(u, v) : A.at(v, u);
                if (e > 0 && !seen[v]) {
                    seen[v] = 1;
                    todo.push_back(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    if (n == 1) return A.at(0, 0) > 0;
    return reach_all(true) && reach_all(false);
}

PowerIteration power_iteration(const AdjMatrix& A, double tol, std::size_t max_iter) {
    const auto n = A.size();
    PowerIteration out;
    std::vector<long double> v(n, 1.0L), w(n);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        long double lo = std::numeric_limits<long double>::infinity();
        long double hi = 0.0L;
        long double top = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            long double s = v[i];
            for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(A.at(i, j)) * v[j];
            w[i] = s;
            const long double ratio = s / v[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            top = std::max(top, s);
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / top;
        out.iterations = it;
        out.theta = static_cast<double>((lo + hi) / 2 - 1);
        if (hi - lo <= static_cast<long double>(tol) * std::max<long double>(1.0L, hi)) {
            out.converged = true;
            break;
        }
    }
    out.vector.assign(v.begin(), v.end());
    return out;
}

namespace {

mpq_class upper_bracket(const AdjMatrix& A) {
    return mpq_class(static_cast<unsigned long>(A.max_row_sum() + 1));
}

void cross_check(PerronRoot& root, const AdjMatrix& A) {
    const auto pw = power_iteration(A);
    root.theta_power = pw.theta;
    root.route_agreement = std::fabs(root.theta - root.theta_power);
    if (!pw.converged)
        throw NumericError("power iteration did not converge");
    if (root.route_agreement > 1e-9)
        throw NumericError("Perron root routes disagree: combinatorial " +
                           std::to_string(root.theta) + " vs power iteration " +
                           std::to_string(root.theta_power));
}

// Characteristic polynomial det(zI - A) by Faddeev-LeVerrier.
Poly characteristic_polynomial(const AdjMatrix& A) {
    const auto n = A.size();
    std::vector<mpq_class> a(n * n), m(n * n, mpq_class(0)), am(n * n);
    for (std::size_t i = 0; i < n * n; ++i) a[i] = static_cast<unsigned long>(A.entries[i]);
    std::vector<mpq_class> c(n + 1, mpq_class(0));
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t t = 0; t < n; ++t) s += a[i * n + t] * m[t * n + j];
                am[i * n + j] = s;
            }
        m = am;
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[n - k + 1];
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr += a[i * n + t] * m[t * n + i];
        c[n - k] = -tr / static_cast<unsigned long>(k);
    }
    return Poly(std::move(c));
}

}  // namespace

PerronRoot perron_root(const AdjMatrix& A) {
    if (!is_irreducible(A)) throw DomainError("adjacency matrix is not irreducible");
    PerronRoot root;
    root.route = "det(zI - A)";
    root.certificate = largest_real_root(characteristic_polynomial(A), mpq_class(0), upper_bracket(A));
    root.theta = root.certificate.value;
    cross_check(root, A);
    return root;
}

PerronRoot perron_root(const ShiftSpec& spec, bool allow_reducible) {
    const auto A = build_adjacency(spec);
    if (!allow_reducible && !is_irreducible(A))
        throw DomainError("adjacency matrix is not irreducible");
    const auto sol = solve_F(spec);
    PerronRoot root;
    const mpq_class lo(1);
    const mpq_class hi = upper_bracket(A);
    if (sol.mode == SystemMode::reduced) {
        const RatFun f = RatFun::z() - RatFun(static_cast<long>(spec.q())) + R_of_z(spec, sol);
        root.route = "z - q + R(z)";
        root.certificate = largest_real_zero(f, lo, hi);
    } else {
        root.route = "poles of F(z)";
        root.certificate = largest_real_root(sol.F.den(), lo, hi);
    }
    root.theta = root.certificate.value;
    cross_check(root, A);
    return root;
}

namespace {

bool is_zero(long double x) { return x == 0.0L; }
bool is_zero(const mpq_class& x) { return x == 0; }
long double magnitude(long double x) { return std::fabs(x); }
long double magnitude(const mpq_class& x) { return std::fabs(x.get_d()); }

// Gaussian elimination with partial pivoting; solves M x = b in place.
template <class T>
std::vector<T> linear_solve(std::vector<std::vector<T>> m, std::vector<T> b) {
    const auto n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (magnitude(m[r][k]) > magnitude(m[piv][k])) piv = r;
        if (is_zero(m[piv][k])) throw NumericError("singular system when evaluating at theta");
        std::swap(m[k], m[piv]);
        std::swap(b[k], b[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (is_zero(m[r][k])) continue;
            const T f = m[r][k] / m[k][k];
            for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
            b[r] -= f * b[k];
        }
    }
    std::vector<T> x(n);
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

template <class T>
T eval_poly(const CorrelationPoly& p, const T& x) {
    T acc = 0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
        acc = acc * x + T(static_cast<long>(*it));
    return acc;
}

template <class T>
T eval_rat(const RatFun& f, const T& x) {
    return f.eval(x);
}

// Closed-form eigenvectors evaluated at theta, with R already extended so
// every repeated word has full block length.
template <class T>
void closed_form_vectors(const ShiftSpec& ext, const std::vector<Word>& labels, const T& theta,
                         std::vector<T>& U, std::vector<T>& V) {
    const auto l = ext.repeated.size();
    const auto s = ext.forbidden.size();
    const auto n = l + s;
    U.assign(labels.size(), T(1));
    V.assign(labels.size(), T(1));
    if (n == 0) return;

    const auto P = build_P(ext, true);
    std::vector<std::vector<T>> Pt(n, std::vector<T>(n)), Qt(n, std::vector<T>(n));
    std::vector<T> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = i < l ? T(theta * (T(1) - T(1) / T(static_cast<long>(ext.repeated[i].multiplicity))))
                     : T(-theta);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Pt[i][j] = eval_rat(P(i, j), theta);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Qt[i][j] = Pt[j][i] * d[j] / d[i];
    const auto Rs = linear_solve(Pt, std::vector<T>(n, T(1)));
    const auto Ss = linear_solve(Qt, std::vector<T>(n, T(1)));

    std::vector<Word> w = ext.repeated_words();
    w.insert(w.end(), ext.forbidden.begin(), ext.forbidden.end());
    for (std::size_t x = 0; x < labels.size(); ++x) {
        const auto& X = labels[x];
        T u = 1;
        T v = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const T cu = eval_poly(correlation_poly(w[i].drop_front(), X), theta);
            const T cv = eval_poly(correlation_poly(X, w[i]), theta);
            if (i < l) {
                const T wt = T(1) - T(1) / T(static_cast<long>(ext.repeated[i].multiplicity));
                u -= theta * wt * Rs[i] * cu;
                v -= theta * wt * Ss[i] * cv;
            } else {
                u += theta * Rs[i] * cu;
                v += theta * Ss[i] * cv;
            }
        }
        U[x] = u;
        V[x] = v;
    }
}

void normalize_pair(PerronVectors& out) {
    auto positive = [](std::vector<double> x) {
        double s = 0;
        for (auto v : x) s += v;
        if (s < 0)
            for (auto& v : x) v = -v;
        for (auto& v : x) v /= std::fabs(s);
        return x;
    };
    out.U_normalized = positive(out.U);
    out.V_normalized = positive(out.V);
    double dot = 0;
    for (std::size_t i = 0; i < out.U.size(); ++i) dot += out.U_normalized[i] * out.V_normalized[i];
    for (auto& v : out.V_normalized) v /= dot;
}

}  // namespace

PerronVectors perron_vectors(const ShiftSpec& spec, const PerronRoot& root) {
    const auto ext = extend_R_tilde(spec);
    PerronVectors out;
    out.labels = build_adjacency(spec).labels;
    if (root.certificate.is_integer()) {
        const mpq_class theta(*root.certificate.exact_integer);
        std::vector<mpq_class> U, V;
        closed_form_vectors(ext, out.labels, theta, U, V);
        for (const auto& u : U) out.U.push_back(u.get_d());
        for (const auto& v : V) out.V.push_back(v.get_d());
        out.U_exact = std::move(U);
        out.V_exact = std::move(V);
    } else {
        std::vector<long double> U, V;
        closed_form_vectors(ext, out.labels, static_cast<long double>(root.theta), U, V);
        for (auto u : U) out.U.push_back(static_cast<double>(u));
        for (auto v : V) out.V.push_back(static_cast<double>(v));
    }
    normalize_pair(out);
    return out;
}

PerronVectors perron_vectors(const ShiftSpec& spec) {
    return perron_vectors(spec, perron_root(spec));
}

std::optional<PropertyPWitness> property_p_witness(const ShiftSpec& spec,
                                                   std::size_t length_bound) {
    const auto p = spec.block_length();
    if (length_bound == 0) length_bound = 3 * p;
    const auto A = build_adjacency(spec);
    const auto n = A.size();
    // Edges of multiplicity one: the p-block X*Y contains no repeated word.
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (A.at(i, j) == 0) continue;
            if (multiplicity(*star(A.labels[i], A.labels[j]), spec) == 1) adj[i].push_back(j);
        }
    if (length_bound < p) return std::nullopt;
    const auto max_edges = length_bound - (p - 1);
    for (std::size_t y = 0; y < n; ++y) {
        // Shortest closed walk at y in the multiplicity-one graph.
        std::vector<std::size_t> parent(n, n), dist(n, 0);
        std::deque<std::size_t> todo;
        for (auto v : adj[y])
            if (parent[v] == n) {
                parent[v] = y;
                dist[v] = 1;
                todo.push_back(v);
            }
        while (!todo.empty() && parent[y] == n) {
            const auto u = todo.front();
            todo.pop_front();
            if (dist[u] >= max_edges) continue;
            for (auto v : adj[u])
                if (parent[v] == n) {
                    parent[v] = u;
                    dist[v] = dist[u] + 1;
                    todo.push_back(v);
                }
        }
        if (parent[y] == n) continue;
        std::vector<std::size_t> path{y};
        for (auto u = parent[y]; u != y; u = parent[u]) path.push_back(u);
        path.push_back(y);
        std::reverse(path.begin(), path.end());
        Word w = A.labels[path[0]];
        for (std::size_t k = 1; k < path.size(); ++k) w.push_back(A.labels[path[k]].back());
        if (w.size() > length_bound) continue;
        if (multiplicity(w, spec) != 1) continue;
        return PropertyPWitness{A.labels[y], A.labels[y], w, w};
    }
    return std::nullopt;
}

Normalization normalization(const ShiftSpec& spec, const PerronRoot& root,
                            const PerronVectors& vec) {
    Normalization out;
    for (std::size_t i = 0; i < vec.U.size(); ++i) out.dot += vec.U[i] * vec.V[i];
    const auto R = R_of_z(spec);
    const auto dR = R.derivative();
    const auto e = spec.block_length() - 1;
    if (root.certificate.is_integer()) {
        const mpq_class theta(*root.certificate.exact_integer);
        mpq_class pw = 1;
        for (std::size_t k = 0; k < e; ++k) pw *= theta;
        out.formula_exact = pw * (1 + dR.eval(theta));
        out.formula = out.formula_exact->get_d();
    } else {
        const long double theta = root.theta;
        out.formula = static_cast<double>(std::pow(theta, static_cast<long double>(e)) *
                                          (1.0L + dR.eval(theta)));
    }
    out.agree = std::fabs(out.dot - out.formula) <= 1e-9 * std::max(1.0, std::fabs(out.formula));
    out.property_p = property_p_witness(spec).has_value();
    return out;
}

double right_residual(const AdjMatrix& A, double theta, const std::vector<double>& V) {
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        long double s = 0;
        for (std::size_t j = 0; j < A.size(); ++j) s += static_cast<long double>(A.at(i, j)) * V[j];
        worst = std::max(worst, static_cast<double>(std::fabs(s - theta * static_cast<long double>(V[i]))));
        scale = std::max(scale, std::fabs(V[i]));
    }
    return scale > 0 ? worst / scale : worst;
}

double left_residual(const AdjMatrix& A, double theta, const std::vector<double>& U) {
    double worst = 0, scale = 0;
    for (std::size_t j = 0; j < A.size(); ++j) {
        long double s = 0;
        for (std::size_t i = 0; i < A.size(); ++i) s += static_cast<long double>(A.at(i, j)) * U[i];
        worst = std::max(worst, static_cast<double>(std::fabs(s - theta * static_cast<long double>(U[j]))));
        scale = std::max(scale, std::fabs(U[j]));
    }
    return scale > 0 ? worst / scale : worst;
}

double entropy(const ShiftSpec& spec) { return std::log(perron_root(spec).theta); }

SpectralReport spectral_report(const ShiftSpec& spec) {
    SpectralReport r;
    r.A = build_adjacency(spec);
    r.root = perron_root(spec);
    r.vectors = perron_vectors(spec, r.root);
    r.norm = normalization(spec, r.root, r.vectors);
    r.witness = property_p_witness(spec);
    r.entropy = std::log(r.root.theta);
    r.R = R_of_z(spec);
    r.residual_right = right_residual(r.A, r.root.theta, r.vectors.V);
    r.residual_left = left_residual(r.A, r.root.theta, r.vectors.U);
    // Largest n with q^n within 2^16 keeps the estimate cheap.
    std::size_t n = 1;
    double states = static_cast<double>(spec.q());
    while (n < 24 && states * static_cast<double>(spec.q()) <= 65536.0) {
        ++n;
        states *= static_cast<double>(spec.q());
    }
    const auto f = oracle_counts(spec, n);
    r.estimate_n = n;
    r.entropy_estimate = f.f[n] > 0 ? std::log(f.f[n].get_d()) / static_cast<double>(n) : 0.0;
    return r;
}

}  // namespace sft
