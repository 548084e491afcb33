#include "sft/ratfield.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "sft/errors.hpp"

namespace sft {

Poly::Poly(const mpq_class& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<mpq_class> coefficients) : c_(std::move(coefficients)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

Poly Poly::monomial(const mpq_class& c, std::size_t k) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(k + 1, mpq_class(0));
    p.c_[k] = c;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpq_class(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<mpq_class> out(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(out);
    trim();
    return *this;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

Poly Poly::shifted(std::size_t k) const {
    if (is_zero()) return {};
    Poly p;
    p.c_.assign(k, mpq_class(0));
    p.c_.insert(p.c_.end(), c_.begin(), c_.end());
    return p;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpq_class> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return Poly(std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    Poly p = *this;
    const mpq_class lead = leading();
    for (auto& c : p.c_) c /= lead;
    return p;
}

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

long double Poly::eval(long double x) const {
    long double acc = 0.0L;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + static_cast<long double>(it->get_d());
    return acc;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<mpq_class> rem = a.c_;
    std::vector<mpq_class> quo(a.c_.size() - b.c_.size() + 1, mpq_class(0));
    const mpq_class lead = b.leading();
    const auto db = b.c_.size() - 1;
    for (std::size_t k = quo.size(); k-- > 0;) {
        const mpq_class c = rem[k + db] / lead;
        quo[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * b.c_[j];
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly operator/(const Poly& a, const Poly& b) {
    auto [q, r] = Poly::divmod(a, b);
    if (!r.is_zero()) throw NumericError("inexact polynomial division");
    return q;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const mpq_class& c = c_[k];
        if (c == 0) continue;
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = mag == 1;
        if (k == 0 || !unit) {
            out << mag.get_str();
            if (k > 0) out << "*";
        }
        if (k >= 1) out << var;
        if (k >= 2) out << "^" << k;
    }
    return out.str();
}

std::vector<std::string> Poly::to_strings() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.get_str());
    return out;
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw NumericError("rational function with zero denominator");
    canonicalize();
}

void RatFun::canonicalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
    const mpq_class lead = den_.leading();
    if (lead != 1) {
        num_ = num_ * Poly(1 / lead);
        den_ = den_ * Poly(1 / lead);
    }
}

RatFun& RatFun::operator+=(const RatFun& o) {
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    canonicalize();
    return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun& RatFun::operator*=(const RatFun& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    canonicalize();
    return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) { return *this *= o.inverse(); }

RatFun RatFun::inverse() const {
    if (num_.is_zero()) throw NumericError("inverse of zero rational function");
    return RatFun(den_, num_);
}

RatFun RatFun::derivative() const {
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

mpq_class RatFun::eval(const mpq_class& x) const {
    const mpq_class d = den_.eval(x);
    if (d == 0) throw NumericError("rational function has a pole at " + x.get_str());
    mpq_class out = num_.eval(x) / d;
    out.canonicalize();
    return out;
}

long double RatFun::eval(long double x) const {
    const long double d = den_.eval(x);
    if (d == 0.0L) throw NumericError("rational function has a pole at evaluation point");
    return num_.eval(x) / d;
}

std::string RatFun::to_string(const std::string& var) const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RatMat::RatMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, RatFun()) {}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFun(1);
    return m;
}

RatMat RatMat::transpose() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch in product");
    RatMat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            RatFun acc;
            for (std::size_t k = 0; k < cols_; ++k)
                if (!(*this)(i, k).is_zero() && !o(k, j).is_zero()) acc += (*this)(i, k) * o(k, j);
            out(i, j) = acc;
        }
    out.row_labels = row_labels;
    out.col_labels = o.col_labels;
    return out;
}

namespace {

Poly lcm(const Poly& a, const Poly& b) {
    return (a * b) / Poly::gcd(a, b);
}

}  // namespace

RatMat RatMat::solve(const RatMat& b) const {
    if (rows_ != cols_) throw DomainError("solve needs a square matrix");
    if (b.rows_ != rows_) throw DomainError("right-hand side has the wrong number of rows");
    const std::size_t n = rows_;
    const std::size_t w = n + b.cols_;

    // Clear denominators row by row so elimination runs in Q[z].
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(w));
    for (std::size_t i = 0; i < n; ++i) {
        Poly d(1);
        for (std::size_t j = 0; j < n; ++j) d = lcm(d, (*this)(i, j).den());
        for (std::size_t j = 0; j < b.cols_; ++j) d = lcm(d, b(i, j).den());
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = (*this)(i, j);
            m[i][j] = e.num() * (d / e.den());
        }
        for (std::size_t j = 0; j < b.cols_; ++j) {
            const auto& e = b(i, j);
            m[i][n + j] = e.num() * (d / e.den());
        }
    }

    // Bareiss forward elimination.
    Poly prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t r = k; r < n; ++r)
            if (!m[r][k].is_zero() && (piv == n || m[r][k].degree() < m[piv][k].degree())) piv = r;
        if (piv == n) throw NumericError("singular matrix");
        std::swap(m[k], m[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < w; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = Poly{};
        }
        prev = m[k][k];
    }

    RatMat x(n, b.cols_);
    for (std::size_t c = 0; c < b.cols_; ++c) {
        for (std::size_t i = n; i-- > 0;) {
            RatFun acc(m[i][n + c]);
            for (std::size_t j = i + 1; j < n; ++j)
                if (!m[i][j].is_zero()) acc -= RatFun(m[i][j]) * x(j, c);
            x(i, c) = acc / RatFun(m[i][i]);
        }
    }
    x.row_labels = col_labels;
    x.col_labels = b.col_labels;
    return x;
}

RatMat RatMat::inverse() const {
    auto id = identity(rows_);
    id.col_labels = row_labels;
    return solve(id);
}

std::vector<RatFun> RatMat::row_sums() const {
    std::vector<RatFun> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
    return out;
}

std::vector<mpq_class> series_coeffs(const RatFun& f, std::size_t n_max) {
    std::vector<mpq_class> out(n_max + 1, mpq_class(0));
    if (f.is_zero()) return out;
    const auto dn = static_cast<std::size_t>(f.num().degree());
    const auto dd = static_cast<std::size_t>(f.den().degree());
    if (dn > dd) throw DomainError("rational function is not proper in 1/z");
    // In w = 1/z: f = w^(dd-dn) * Nr(w) / Dr(w) with reversed coefficient lists.
    const auto& nc = f.num().coefficients();
    const auto& dc = f.den().coefficients();
    const std::size_t shift = dd - dn;
    if (shift > n_max) return out;
    std::vector<mpq_class> s(n_max + 1 - shift, mpq_class(0));
    for (std::size_t n = 0; n < s.size(); ++n) {
        mpq_class acc = n <= dn ? nc[dn - n] : mpq_class(0);
        for (std::size_t k = 1; k <= std::min(n, dd); ++k) acc -= dc[dd - k] * s[n - k];
        s[n] = acc / dc[dd];
    }
    for (std::size_t n = 0; n < s.size(); ++n) out[n + shift] = s[n];
    return out;
}

std::vector<Poly> sturm_sequence(const Poly& p) {
    std::vector<Poly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        auto r = Poly::divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    if (seq.back().is_zero()) seq.pop_back();
    return seq;
}

namespace {

std::size_t sign_variations(const std::vector<Poly>& seq, const mpq_class& x) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& p : seq) {
        const int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

std::size_t sturm_count(const std::vector<Poly>& seq, const mpq_class& a, const mpq_class& b) {
    const auto va = sign_variations(seq, a);
    const auto vb = sign_variations(seq, b);
    return va > vb ? va - vb : 0;
}

RootCertificate largest_real_root(const Poly& p, const mpq_class& lo, const mpq_class& hi,
                                  const mpq_class& tol) {
    if (p.degree() < 1) throw NumericError("no real root: polynomial is constant");
    if (lo > hi) throw DomainError("empty root bracket");
    RootCertificate cert;
    cert.squarefree = (p / Poly::gcd(p, p.derivative())).monic();
    const auto& sq = cert.squarefree;
    const auto seq = sturm_sequence(sq);

    mpq_class a = lo;
    mpq_class b = hi;
    if (sturm_count(seq, a, b) == 0) {
        if (sq.eval(lo) != 0)
            throw NumericError("no real root in [" + lo.get_str() + ", " + hi.get_str() + "]");
        b = lo;
    }
    while (b - a > tol) {
        mpq_class mid = (a + b) / 2;
        mid.canonicalize();
        if (sturm_count(seq, mid, b) >= 1) {
            a = mid;
        } else if (sq.eval(mid) == 0) {
            a = b = mid;
        } else {
            b = mid;
        }
    }
    cert.lo = a;
    cert.hi = b;

    mpz_class k = a.get_num() / a.get_den();  // floor for a > 0; adjusted below
    if (k > a) k -= 1;
    for (; k <= b; k += 1) {
        if (k >= a && sq.eval(mpq_class(k)) == 0) {
            cert.exact_integer = k;
            cert.lo = cert.hi = mpq_class(k);
        }
    }
    if (cert.exact_integer) {
        cert.value = cert.exact_integer->get_d();
    } else {
        mpq_class mid = (cert.lo + cert.hi) / 2;
        cert.value = mid.get_d();
    }
    return cert;
}

RootCertificate largest_real_zero(const RatFun& f, const mpq_class& lo, const mpq_class& hi,
                                  const mpq_class& tol) {
    return largest_real_root(f.num(), lo, hi, tol);
}

std::string to_exact_string(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return c.get_str();
}

double to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace sft
