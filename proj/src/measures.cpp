#include "sft/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sft/errors.hpp"
#include "sft/genfun.hpp"

namespace sft {

double StochMat::row_defect() const {
    double worst = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < size(); ++j) s += at(i, j);
        worst = std::max(worst, std::fabs(s - 1));
    }
    return worst;
}

double StochMat::stationarity_defect() const {
    double worst = 0;
    for (std::size_t j = 0; j < size(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < size(); ++i) s += stationary[i] * at(i, j);
        worst = std::max(worst, std::fabs(s - stationary[j]));
    }
    return worst;
}

namespace {

// One-dimensional kernel of M (n x n) over Q, or nullopt.
std::optional<std::vector<mpq_class>> kernel_vector(std::vector<std::vector<mpq_class>> m) {
    const auto n = m.size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = row; r < n; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == n) continue;
        std::swap(m[row], m[piv]);
        const mpq_class lead = m[row][c];
        for (auto& x : m[row]) x /= lead;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][c] == 0) continue;
            const mpq_class f = m[r][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    if (pivot_col.size() + 1 != n) return std::nullopt;
    std::size_t free_col = 0;
    while (free_col < n &&
           std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end())
        ++free_col;
    std::vector<mpq_class> x(n, mpq_class(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free_col];
    return x;
}

// Scales U to sum 1 and V so that U.V = 1, flipping signs to make both positive.
template <class T>
void normalize_exact(std::vector<T>& U, std::vector<T>& V) {
    T su = 0, sv = 0;
    for (const auto& u : U) su += u;
    for (const auto& v : V) sv += v;
    for (auto& u : U) u /= su;
    if (sv < 0)
        for (auto& v : V) v = -v;
    T dot = 0;
    for (std::size_t i = 0; i < U.size(); ++i) dot += U[i] * V[i];
    for (auto& v : V) v /= dot;
}

std::vector<double> to_doubles(const std::vector<mpq_class>& x) {
    std::vector<double> out;
    for (const auto& v : x) out.push_back(v.get_d());
    return out;
}

AdjMatrix transposed(const AdjMatrix& A) {
    AdjMatrix T = A;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) T.at(i, j) = A.at(j, i);
    return T;
}

}  // namespace

PerronPair perron_pair(const AdjMatrix& A) {
    PerronPair out;
    out.root = perron_root(A);
    const auto n = A.size();
    if (out.root.certificate.is_integer()) {
        const mpq_class theta(*out.root.certificate.exact_integer);
        std::vector<std::vector<mpq_class>> right(n, std::vector<mpq_class>(n)), left = right;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                right[i][j] = static_cast<unsigned long>(A.at(i, j));
                left[i][j] = static_cast<unsigned long>(A.at(j, i));
            }
        for (std::size_t i = 0; i < n; ++i) {
            right[i][i] -= theta;
            left[i][i] -= theta;
        }
        auto V = kernel_vector(right);
        auto U = kernel_vector(left);
        if (!U || !V) throw NumericError("Perron eigenspace is not one-dimensional");
        normalize_exact(*U, *V);
        out.U = to_doubles(*U);
        out.V = to_doubles(*V);
        out.U_exact = std::move(U);
        out.V_exact = std::move(V);
    } else {
        auto V = power_iteration(A).vector;
        auto U = power_iteration(transposed(A)).vector;
        normalize_exact(U, V);
        out.U = std::move(U);
        out.V = std::move(V);
    }
    return out;
}

StochMat shannon_parry_matrix(const AdjMatrix& A, double theta, const std::vector<double>& U,
                              const std::vector<double>& V) {
    const auto n = A.size();
    StochMat P;
    P.labels = A.labels;
    P.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (V[i] == 0.0) throw NumericError("zero entry in right Perron vector");
        for (std::size_t j = 0; j < n; ++j)
            P.entries[i * n + j] = static_cast<double>(A.at(i, j)) * V[j] / (theta * V[i]);
    }
    for (std::size_t i = 0; i < n; ++i) P.stationary.push_back(U[i] * V[i]);
    return P;
}

StochMat shannon_parry_matrix(const AdjMatrix& A, const PerronPair& pair) {
    auto P = shannon_parry_matrix(A, pair.root.theta, pair.U, pair.V);
    if (pair.U_exact && pair.V_exact) {
        const auto n = A.size();
        const mpq_class theta(*pair.root.certificate.exact_integer);
        const auto& U = *pair.U_exact;
        const auto& V = *pair.V_exact;
        std::vector<mpq_class> e(n * n), rho(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                e[i * n + j] = mpq_class(static_cast<unsigned long>(A.at(i, j))) * V[j] / (theta * V[i]);
            rho[i] = U[i] * V[i];
        }
        P.exact = std::move(e);
        P.stationary_exact = std::move(rho);
    }
    return P;
}

StochMat shannon_parry_matrix(const AdjMatrix& A) { return shannon_parry_matrix(A, perron_pair(A)); }

void validate_cylinder(const AdjMatrix& A, const Cylinder& c) {
    if (c.vertices.empty()) throw DomainError("cylinder has no vertices");
    for (auto v : c.vertices)
        if (v >= A.size()) throw DomainError("cylinder vertex out of range");
    if (!c.branches.empty() && c.branches.size() != c.edges())
        throw DomainError("cylinder needs one branch index per edge");
    for (std::size_t k = 0; k < c.edges(); ++k) {
        const auto a = A.at(c.vertices[k], c.vertices[k + 1]);
        if (a == 0) throw DomainError("cylinder uses a missing edge");
        if (!c.branches.empty() && (c.branches[k] < 1 || c.branches[k] > a))
            throw DomainError("branch index " + std::to_string(c.branches[k]) + " outside 1.." +
                              std::to_string(a));
    }
}

Cylinder parse_cylinder(const ShiftSpec& spec, const AdjMatrix& A, const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    if (parts.empty()) throw DomainError("empty cylinder");

    auto label = [&](const std::string& s) {
        const auto idx = A.index_of(spec.alphabet.parse(s));
        if (!idx) throw DomainError("'" + s + "' is not a vertex label");
        return *idx;
    };

    Cylinder c;
    const bool edge_form = parts.front().find('*') != std::string::npos;
    if (!edge_form) {
        if (parts.size() != 1) throw DomainError("vertex cylinder must be a single word");
        const auto w = spec.alphabet.parse(parts.front());
        const auto k = spec.block_length() - 1;
        if (w.size() < k) throw DomainError("vertex word shorter than the label length");
        for (std::size_t i = 0; i + k <= w.size(); ++i) {
            const auto idx = A.index_of(w.substr(i, k));
            if (!idx) throw DomainError("vertex word passes through a forbidden label");
            c.vertices.push_back(*idx);
        }
        validate_cylinder(A, c);
        return c;
    }
    for (const auto& part : parts) {
        const auto star_pos = part.find('*');
        if (star_pos == std::string::npos) throw DomainError("edge step '" + part + "' lacks '*'");
        const auto hash = part.find('#', star_pos);
        const auto x = part.substr(0, star_pos);
        const auto y = part.substr(star_pos + 1, hash == std::string::npos ? std::string::npos
                                                                           : hash - star_pos - 1);
        std::uint64_t j = 1;
        if (hash != std::string::npos) {
            try {
                j = std::stoull(part.substr(hash + 1));
            } catch (const std::exception&) {
                throw DomainError("bad branch index in '" + part + "'");
            }
        }
        const auto xi = label(x);
        const auto yi = label(y);
        if (c.vertices.empty()) {
            c.vertices.push_back(xi);
        } else if (c.vertices.back() != xi) {
            throw DomainError("edge steps do not chain at '" + part + "'");
        }
        c.vertices.push_back(yi);
        c.branches.push_back(j);
    }
    validate_cylinder(A, c);
    return c;
}

std::string render_cylinder(const ShiftSpec& spec, const AdjMatrix& A, const Cylinder& c) {
    if (c.branches.empty()) {
        Word w = A.labels[c.vertices.front()];
        for (std::size_t k = 1; k < c.vertices.size(); ++k) w.push_back(A.labels[c.vertices[k]].back());
        return spec.render(w);
    }
    std::string out;
    for (std::size_t k = 0; k < c.edges(); ++k) {
        if (k) out += ",";
        out += spec.render(A.labels[c.vertices[k]]) + "*" + spec.render(A.labels[c.vertices[k + 1]]) +
               "#" + std::to_string(c.branches[k]);
    }
    return out;
}

std::string to_string(MeasureRoute r) {
    switch (r) {
        case MeasureRoute::parry: return "parry";
        case MeasureRoute::combinatorial: return "combinatorial";
        case MeasureRoute::markov: return "markov";
    }
    return "parry";
}

MeasureRoute parse_route(const std::string& s) {
    if (s == "parry") return MeasureRoute::parry;
    if (s == "combinatorial") return MeasureRoute::combinatorial;
    if (s == "markov" || s == "shannon_parry") return MeasureRoute::markov;
    throw DomainError("unknown measure route '" + s + "'");
}

ParryData parry_data(const ShiftSpec& spec) {
    ParryData d;
    d.A = build_adjacency(spec);
    d.root = perron_root(spec);
    d.vectors = perron_vectors(spec, d.root);
    d.norm = normalization(spec, d.root, d.vectors);
    d.p = spec.block_length();
    PerronPair pair;
    pair.root = d.root;
    pair.U = d.vectors.U_normalized;
    pair.V = d.vectors.V_normalized;
    if (d.vectors.U_exact && d.vectors.V_exact) {
        auto U = *d.vectors.U_exact;
        auto V = *d.vectors.V_exact;
        normalize_exact(U, V);
        pair.U_exact = std::move(U);
        pair.V_exact = std::move(V);
    }
    d.P = shannon_parry_matrix(d.A, pair);
    d.normalized = std::move(pair);
    return d;
}

namespace {

mpz_class edge_multiplicity(const AdjMatrix& A, const std::vector<std::size_t>& v) {
    mpz_class out = 1;
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        out *= static_cast<unsigned long>(A.at(v[k], v[k + 1]));
    return out;
}

// Measure of one edge cylinder over the vertex path (branch-independent).
MeasureReport edge_measure(const ParryData& d, const std::vector<std::size_t>& v,
                           MeasureRoute route) {
    MeasureReport r;
    r.route = route;
    const auto n = v.size() - 1;
    const auto x1 = v.front();
    const auto xl = v.back();
    const bool exact = d.root.certificate.is_integer() && d.P.exact.has_value();
    switch (route) {
        case MeasureRoute::parry: {
            const auto& np = d.normalized;
            r.value = np.U[x1] * np.V[xl] / std::pow(d.root.theta, static_cast<double>(n));
            if (exact && np.U_exact && np.V_exact) {
                const mpq_class theta(*d.root.certificate.exact_integer);
                mpq_class pw = 1;
                for (std::size_t k = 0; k < n; ++k) pw *= theta;
                r.exact = (*np.U_exact)[x1] * (*np.V_exact)[xl] / pw;
            }
            break;
        }
        case MeasureRoute::combinatorial: {
            r.value = d.vectors.U[x1] * d.vectors.V[xl] /
                      (std::pow(d.root.theta, static_cast<double>(n)) * d.norm.formula);
            if (exact && d.norm.formula_exact) {
                const mpq_class theta(*d.root.certificate.exact_integer);
                mpq_class pw = 1;
                for (std::size_t k = 0; k < n; ++k) pw *= theta;
                r.exact = (*d.vectors.U_exact)[x1] * (*d.vectors.V_exact)[xl] /
                          (pw * *d.norm.formula_exact);
            }
            break;
        }
        case MeasureRoute::markov: {
            const auto m = markov_measure(d.P, v);
            const auto k = edge_multiplicity(d.A, v);
            r.value = m.value / k.get_d();
            if (m.exact) r.exact = *m.exact / mpq_class(k);
            break;
        }
    }
    if (r.exact) r.value = r.exact->get_d();
    return r;
}

}  // namespace

MeasureReport markov_measure(const StochMat& P, const std::vector<std::size_t>& v) {
    MeasureReport r;
    r.route = MeasureRoute::markov;
    r.value = P.stationary[v.front()];
    for (std::size_t k = 0; k + 1 < v.size(); ++k) r.value *= P.at(v[k], v[k + 1]);
    if (P.exact && P.stationary_exact) {
        mpq_class e = (*P.stationary_exact)[v.front()];
        for (std::size_t k = 0; k + 1 < v.size(); ++k) e *= (*P.exact)[v[k] * P.size() + v[k + 1]];
        r.exact = e;
        r.value = e.get_d();
    }
    return r;
}

MeasureReport cylinder_measure(const ParryData& d, const Cylinder& c, MeasureRoute route) {
    validate_cylinder(d.A, c);
    auto r = edge_measure(d, c.vertices, route);
    if (c.branches.empty() && c.edges() > 0) {
        // A vertex word: total mass of all edge cylinders above it.
        const auto k = edge_multiplicity(d.A, c.vertices);
        r.value *= k.get_d();
        if (r.exact) {
            *r.exact *= mpq_class(k);
            r.value = r.exact->get_d();
        }
    }
    return r;
}

Cylinder project_pi(const Cylinder& c) { return Cylinder{c.vertices, {}}; }

mpz_class preimage_count(const AdjMatrix& A, const std::vector<std::size_t>& vertices) {
    return edge_multiplicity(A, vertices);
}

namespace {

template <class F>
void for_each_path(const AdjMatrix& A, std::size_t vertices, F&& f) {
    std::vector<std::size_t> path;
    auto rec = [&](auto&& self) -> void {
        if (path.size() == vertices) {
            f(path);
            return;
        }
        for (std::size_t v = 0; v < A.size(); ++v) {
            if (!path.empty() && A.at(path.back(), v) == 0) continue;
            path.push_back(v);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
}

// Branch tuples to visit for a vertex path: all of them when there are at
// most 16, otherwise the all-first and all-last tuples.
std::vector<std::vector<std::uint64_t>> branch_tuples(const AdjMatrix& A,
                                                      const std::vector<std::size_t>& v) {
    std::vector<std::uint64_t> sizes;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        sizes.push_back(A.at(v[k], v[k + 1]));
        total *= sizes.back();
        if (total > 16) break;
    }
    std::vector<std::vector<std::uint64_t>> out;
    if (total > 16) {
        std::vector<std::uint64_t> first, last;
        for (std::size_t k = 0; k + 1 < v.size(); ++k) {
            first.push_back(1);
            last.push_back(A.at(v[k], v[k + 1]));
        }
        out.push_back(first);
        if (last != first) out.push_back(last);
        return out;
    }
    std::vector<std::uint64_t> cur(sizes.size(), 1);
    while (true) {
        out.push_back(cur);
        std::size_t k = 0;
        while (k < cur.size() && cur[k] == sizes[k]) cur[k++] = 1;
        if (k == cur.size()) break;
        ++cur[k];
    }
    return out;
}

void compare(ConsistencyReport& rep, const std::string& what, const MeasureReport& a,
             const MeasureReport& b, double tol) {
    ++rep.checked;
    if (a.exact && b.exact) {
        if (*a.exact != *b.exact) rep.violations.push_back(what);
        return;
    }
    rep.exact = false;
    const double err = std::fabs(a.value - b.value);
    rep.max_error = std::max(rep.max_error, err);
    if (err > tol) rep.violations.push_back(what);
}

}  // namespace

ConsistencyReport pushforward_check(const ParryData& d, std::size_t n_max, double tol) {
    ConsistencyReport rep;
    rep.exact = d.P.exact.has_value();
    for (std::size_t k = 1; k <= n_max; ++k)
        for_each_path(d.A, k, [&](const std::vector<std::size_t>& v) {
            const auto nu = markov_measure(d.P, v);
            MeasureReport sum;
            sum.value = 0;
            if (rep.exact) sum.exact = mpq_class(0);
            const auto tuples = branch_tuples(d.A, v);
            const auto total = preimage_count(d.A, v);
            if (mpz_class(static_cast<unsigned long>(tuples.size())) == total) {
                for (const auto& t : tuples) {
                    const auto mu = cylinder_measure(d, Cylinder{v, t}, MeasureRoute::parry);
                    sum.value += mu.value;
                    if (sum.exact && mu.exact) *sum.exact += *mu.exact; else sum.exact.reset();
                }
            } else {
                // Edge cylinders above a vertex word all carry the same mass.
                const auto mu = cylinder_measure(d, Cylinder{v, tuples.front()}, MeasureRoute::parry);
                sum.value = mu.value * total.get_d();
                if (mu.exact) sum.exact = *mu.exact * mpq_class(total); else sum.exact.reset();
            }
            if (sum.exact) sum.value = sum.exact->get_d();
            compare(rep, "vertex path of length " + std::to_string(k), nu, sum, tol);
        });
    return rep;
}

ConsistencyReport kolmogorov_check(const ParryData& d, std::size_t n_max, MeasureRoute route,
                                   double tol) {
    ConsistencyReport rep;
    rep.exact = d.P.exact.has_value();
    for (std::size_t k = 1; k <= n_max + 1; ++k)
        for_each_path(d.A, k, [&](const std::vector<std::size_t>& v) {
            for (const auto& t : branch_tuples(d.A, v)) {
                const auto base = cylinder_measure(d, Cylinder{v, t}, route);
                MeasureReport sum;
                sum.value = 0;
                if (rep.exact) sum.exact = mpq_class(0);
                auto ext = v;
                ext.push_back(0);
                auto et = t;
                et.push_back(1);
                for (std::size_t z = 0; z < d.A.size(); ++z) {
                    const auto a = d.A.at(v.back(), z);
                    if (a == 0) continue;
                    ext.back() = z;
                    for (std::uint64_t j = 1; j <= a; ++j) {
                        et.back() = j;
                        const auto mu = cylinder_measure(d, Cylinder{ext, et}, route);
                        sum.value += mu.value;
                        if (sum.exact && mu.exact) *sum.exact += *mu.exact; else sum.exact.reset();
                    }
                }
                if (sum.exact) sum.value = sum.exact->get_d();
                compare(rep, "edge cylinder with " + std::to_string(k - 1) + " edges", base, sum, tol);
            }
        });
    return rep;
}

AdjMatrix lift_rational_stochastic(const std::vector<std::vector<mpq_class>>& P,
                                   std::vector<Word> labels) {
    const auto n = P.size();
    mpz_class L = 1;
    for (const auto& row : P) {
        if (row.size() != n) throw DomainError("stochastic matrix must be square");
        mpq_class s = 0;
        for (const auto& e : row) {
            if (e < 0) throw DomainError("stochastic matrix has a negative entry");
            s += e;
            if (e > 0) {
                mpq_class c = e;
                c.canonicalize();
                mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
            }
        }
        if (s != 1) throw DomainError("stochastic matrix row does not sum to 1");
    }
    std::vector<std::vector<std::uint64_t>> rows(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mpq_class v = P[i][j] * mpq_class(L);
            v.canonicalize();
            if (v.get_den() != 1 || !v.get_num().fits_ulong_p())
                throw NumericError("lifted entry is not a machine integer");
            rows[i][j] = v.get_num().get_ui();
        }
    return AdjMatrix::from_rows(rows, std::move(labels));
}

std::vector<mpz_class> avoiding_path_counts(const AdjMatrix& A, const Cylinder& W,
                                            std::size_t n_max) {
    validate_cylinder(A, W);
    if (W.branches.empty() || W.edges() == 0)
        throw DomainError("hole must be an edge word with at least one edge");
    struct Edge {
        std::size_t from, to;
        std::uint64_t branch;
        bool operator==(const Edge&) const = default;
    };
    const auto k = W.edges();
    std::vector<Edge> w;
    for (std::size_t i = 0; i < k; ++i) w.push_back({W.vertices[i], W.vertices[i + 1], W.branches[i]});
    std::vector<std::size_t> fail(k, 0);
    for (std::size_t i = 1, m = 0; i < k; ++i) {
        while (m > 0 && !(w[i] == w[m])) m = fail[m - 1];
        if (w[i] == w[m]) ++m;
        fail[i] = m;
    }
    auto delta = [&](std::size_t m, const Edge& e) {
        while (m > 0 && !(w[m] == e)) m = fail[m - 1];
        return w[m] == e ? m + 1 : std::size_t{0};
    };

    const auto n = A.size();
    // counts[v * k + m]: paths ending at v whose longest suffix matching a prefix of W has length m.
    std::vector<mpz_class> counts(n * k, mpz_class(0)), next(n * k);
    for (std::size_t v = 0; v < n; ++v) counts[v * k] = 1;
    std::vector<mpz_class> h{mpz_class(static_cast<unsigned long>(n))};
    for (std::size_t step = 1; step <= n_max; ++step) {
        std::fill(next.begin(), next.end(), mpz_class(0));
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t m = 0; m < k; ++m) {
                const auto& c = counts[v * k + m];
                if (c == 0) continue;
                for (std::size_t u = 0; u < n; ++u) {
                    const auto a = A.at(v, u);
                    if (a == 0) continue;
                    std::uint64_t special = 0;
                    std::vector<std::uint64_t> seen;
                    for (const auto& e : w)
                        if (e.from == v && e.to == u &&
                            std::find(seen.begin(), seen.end(), e.branch) == seen.end()) {
                            seen.push_back(e.branch);
                            ++special;
                            const auto m2 = delta(m, e);
                            if (m2 < k) next[u * k + m2] += c;
                        }
                    if (a > special) next[u * k] += c * (a - special);
                }
            }
        counts.swap(next);
        mpz_class total = 0;
        for (const auto& c : counts) total += c;
        h.push_back(total);
    }
    return h;
}

EscapeReport escape_rate(const ShiftSpec& spec, const Cylinder& W, std::size_t n_max,
                         std::uint64_t budget) {
    if (n_max < 2) throw DomainError("escape rate needs n_max >= 2");
    const auto A = build_adjacency(spec);
    EscapeReport r;
    r.h = avoiding_path_counts(A, W, n_max);
    r.theta = perron_root(spec).theta;
    auto log_ratio = [](const mpz_class& a, const mpz_class& b) -> double {
        if (a == 0 || b == 0) return -INFINITY;
        return std::log(mpq_class(a, b).get_d());
    };
    r.log_lambda = log_ratio(r.h[n_max], r.h[n_max - 1]);
    r.rho = std::log(r.theta) - r.log_lambda;

    r.w = A.labels[W.vertices.front()];
    for (std::size_t i = 1; i < W.vertices.size(); ++i) r.w.push_back(A.labels[W.vertices[i]].back());
    r.w_multiplicity = multiplicity(r.w, spec);

    ShiftSpec holed;
    holed.alphabet = spec.alphabet;
    for (const auto& a : spec.forbidden)
        if (!a.contains(r.w)) holed.forbidden.push_back(a);
    holed.forbidden.push_back(r.w);
    holed.repeated = spec.repeated;
    try {
        holed = validate_spec(std::move(holed));
    } catch (const SpecError&) {
        return r;  // a repeated word contains w; tau is not defined
    }
    const auto p = spec.block_length();
    const auto N = n_max + p - 1;
    auto tau = oracle_counts(holed, N, budget).f;
    r.log_theta_w = log_ratio(tau[n_max], tau[n_max - 1]);
    bool labels_plain = true;
    for (const auto& X : A.labels) labels_plain = labels_plain && multiplicity(X, spec) == 1;
    if (r.w_multiplicity == 1 && labels_plain) {
        bool ok = true;
        for (std::size_t n = p; n <= N; ++n) ok = ok && r.h[n - p + 1] == tau[n];
        r.tau_consistent = ok;
    }
    r.tau = std::move(tau);
    return r;
}

}  // namespace sft
