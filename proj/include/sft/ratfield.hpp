#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sft {

// Polynomial in z with exact rational coefficients, ascending powers.
// Always trimmed: the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(const mpq_class& c);  // NOLINT: constants convert implicitly
    Poly(long c) : Poly(mpq_class(c)) {}
    explicit Poly(std::vector<mpq_class> coefficients);

    static Poly z() { return monomial(1, 1); }
    static Poly monomial(const mpq_class& c, std::size_t k);

    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<mpq_class>& coefficients() const noexcept { return c_; }
    mpq_class coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
    mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    Poly operator-() const;

    // Multiply by z^k.
    Poly shifted(std::size_t k) const;
    Poly derivative() const;
    Poly monic() const;

    mpq_class eval(const mpq_class& x) const;
    long double eval(long double x) const;

    // Quotient and remainder; throws DomainError on division by zero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    // Monic gcd (zero when both inputs are zero).
    static Poly gcd(Poly a, Poly b);

    std::string to_string(const std::string& var = "z") const;
    // Ascending coefficients as exact strings.
    std::vector<std::string> to_strings() const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<mpq_class> c_;
};

Poly operator/(const Poly& a, const Poly& b);  // exact division; throws if not exact

// Rational function num/den in canonical form: gcd removed and the
// denominator monic, so equal functions compare equal.
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(const Poly& p) : num_(p), den_(1) {}  // NOLINT
    RatFun(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT
    RatFun(long c) : num_(c), den_(1) {}  // NOLINT
    RatFun(Poly num, Poly den);

    static RatFun z() { return RatFun(Poly::z()); }

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }

    RatFun& operator+=(const RatFun& o);
    RatFun& operator-=(const RatFun& o);
    RatFun& operator*=(const RatFun& o);
    RatFun& operator/=(const RatFun& o);
    friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
    friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
    friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
    friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
    RatFun operator-() const { return RatFun(-num_, den_); }

    RatFun derivative() const;
    RatFun inverse() const;

    // Throws NumericError at a pole.
    mpq_class eval(const mpq_class& x) const;
    long double eval(long double x) const;

    std::string to_string(const std::string& var = "z") const;

    friend bool operator==(const RatFun&, const RatFun&) = default;

private:
    void canonicalize();
    Poly num_;
    Poly den_;
};

// Dense matrix over the rational-function field with optional labels.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols);
    static RatMat identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    RatFun& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RatFun& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    RatMat transpose() const;
    RatMat operator*(const RatMat& o) const;
    friend bool operator==(const RatMat& a, const RatMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // Exact inverse via fraction-free elimination; throws NumericError if singular.
    RatMat inverse() const;
    // Solves this * X = B exactly.
    RatMat solve(const RatMat& b) const;
    std::vector<RatFun> row_sums() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<RatFun> data_;
};

// Coefficients c_0..c_nmax of f(z) = sum_n c_n z^{-n}. Throws DomainError
// when f has positive powers of z.
std::vector<mpq_class> series_coeffs(const RatFun& f, std::size_t n_max);

struct RootCertificate {
    double value = 0.0;
    mpq_class lo;  // root lies in [lo, hi]
    mpq_class hi;
    std::optional<mpz_class> exact_integer;  // set when the root is an integer
    Poly squarefree;                         // polynomial whose root was isolated

    bool is_integer() const { return exact_integer.has_value(); }
};

// Sturm sequence of a square-free polynomial.
std::vector<Poly> sturm_sequence(const Poly& p);
// Distinct real roots of the sequence's polynomial in (a, b].
std::size_t sturm_count(const std::vector<Poly>& seq, const mpq_class& a, const mpq_class& b);

// Largest real zero of p in [lo, hi], isolated to width <= tol.
// Throws NumericError when there is none.
RootCertificate largest_real_root(const Poly& p, const mpq_class& lo, const mpq_class& hi,
                                  const mpq_class& tol = mpq_class(1, 1000000000000L));

// Largest real zero of the canonical numerator of f in [lo, hi].
RootCertificate largest_real_zero(const RatFun& f, const mpq_class& lo, const mpq_class& hi,
                                  const mpq_class& tol = mpq_class(1, 1000000000000L));

std::string to_exact_string(const mpq_class& q);
double to_double(const mpq_class& q);

}  // namespace sft
