#pragma once

/**
 * @file scalar.hpp
 * @brief Roots of unity as elements of Q/Z and exact arithmetic in Q(zeta_N).
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twyd {

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero in cyclotomic field") {}
};

inline int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

/// exp(2 pi i k/n) kept as the reduced fraction k/n with 0 <= k < n.
class Root {
public:
    Root() = default;
    Root(int64_t k, int64_t n) {
        if (n <= 0) throw std::invalid_argument("Root: order must be positive");
        k = mod_floor(k, n);
        int64_t g = std::gcd(k, n);
        if (g == 0) g = n;
        k_ = k / g;
        n_ = n / g;
        if (k_ == 0) n_ = 1;
    }

    static Root one() { return Root(); }
    static Root minus_one() { return Root(1, 2); }

    int64_t num() const { return k_; }
    /// Multiplicative order.
    int64_t order() const { return n_; }
    bool is_one() const { return k_ == 0; }

    /// Exponent of this root written over zeta_m; m must be a multiple of order().
    int64_t exponent_over(int64_t m) const {
        if (m % n_ != 0) throw std::invalid_argument("Root: order does not divide modulus");
        return k_ * (m / n_);
    }

    Root operator*(const Root& o) const {
        int64_t n = lcm64(n_, o.n_);
        return Root(k_ * (n / n_) + o.k_ * (n / o.n_), n);
    }
    Root& operator*=(const Root& o) { return *this = *this * o; }
    Root operator/(const Root& o) const { return *this * o.inv(); }
    Root inv() const { return Root(-k_, n_); }
    Root pow(int64_t e) const {
        __int128 k = static_cast<__int128>(k_) * e;
        int64_t r = static_cast<int64_t>(k % n_);
        return Root(r, n_);
    }

    /// All L-th roots of this root of unity.
    std::vector<Root> roots(int64_t L) const {
        std::vector<Root> out;
        for (int64_t s = 0; s < L; ++s) out.emplace_back(k_ + s * n_, n_ * L);
        return out;
    }

    bool operator==(const Root& o) const { return k_ == o.k_ && n_ == o.n_; }
    auto operator<=>(const Root& o) const {
        if (auto c = n_ <=> o.n_; c != 0) return c;
        return k_ <=> o.k_;
    }

    std::string str() const {
        return "zeta(" + std::to_string(n_) + ")^" + std::to_string(k_);
    }

private:
    int64_t k_ = 0;
    int64_t n_ = 1;
};

namespace detail {

inline int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

/// Reduction data for Q(zeta_n): red[e] is zeta^e written in the power basis of length phi(n).
struct CycloField {
    int64_t n = 1;
    int64_t phi = 1;
    std::vector<int64_t> poly;  // monic cyclotomic polynomial, poly[phi] = 1
    std::vector<std::vector<int64_t>> red;
};

inline std::vector<int64_t> cyclotomic_poly(int64_t n);

inline std::vector<int64_t> cyclotomic_poly_uncached(int64_t n) {
    // x^n - 1 divided by Phi_d for every proper divisor d of n
    std::vector<int64_t> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<int64_t> den = cyclotomic_poly(d);
        int64_t dn = static_cast<int64_t>(num.size()) - 1, dd = static_cast<int64_t>(den.size()) - 1;
        std::vector<int64_t> q(dn - dd + 1, 0);
        for (int64_t i = dn; i >= dd; --i) {
            int64_t c = num[i];
            q[i - dd] = c;
            if (c == 0) continue;
            for (int64_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = q;
    }
    return num;
}

inline std::vector<int64_t> cyclotomic_poly(int64_t n) {
    static std::mutex mu;
    static std::map<int64_t, std::vector<int64_t>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto p = cyclotomic_poly_uncached(n);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(n, p);
    return p;
}

inline std::shared_ptr<const CycloField> field(int64_t n) {
    static std::mutex mu;
    static std::map<int64_t, std::shared_ptr<const CycloField>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto f = std::make_shared<CycloField>();
    f->n = n;
    f->poly = cyclotomic_poly(n);
    f->phi = static_cast<int64_t>(f->poly.size()) - 1;
    f->red.assign(n, std::vector<int64_t>(f->phi, 0));
    std::vector<int64_t> cur(f->phi, 0);
    cur[0] = 1;
    for (int64_t e = 0; e < n; ++e) {
        f->red[e] = cur;
        // multiply by x and reduce
        int64_t top = cur[f->phi - 1];
        for (int64_t i = f->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int64_t i = 0; i < f->phi; ++i) cur[i] -= top * f->poly[i];
    }
    std::lock_guard<std::mutex> lk(mu);
    auto [it, _] = cache.emplace(n, f);
    return it->second;
}

}  // namespace detail

/// Element of Q(zeta_N) in the reduced power basis 1, zeta_N, ..., zeta_N^{phi(N)-1}.
class Cyclo {
public:
    Cyclo() : n_(1), c_(1) {}
    Cyclo(long v) : n_(1), c_{mpq_class(v)} {}
    Cyclo(int v) : Cyclo(static_cast<long>(v)) {}
    explicit Cyclo(const mpq_class& v) : n_(1), c_{v} { c_[0].canonicalize(); }

    Cyclo(int64_t conductor, std::vector<mpq_class> coeffs) : n_(conductor), c_(std::move(coeffs)) {
        if (static_cast<int64_t>(c_.size()) != detail::field(n_)->phi)
            throw std::invalid_argument("Cyclo: coefficient count must equal phi(N)");
    }

    static Cyclo root_of_unity(int64_t N, int64_t k) {
        if (N < 1) throw std::invalid_argument("root_of_unity: N must be >= 1");
        auto f = detail::field(N);
        const auto& r = f->red[mod_floor(k, N)];
        std::vector<mpq_class> c(r.begin(), r.end());
        return Cyclo(N, std::move(c));
    }
    static Cyclo from(const Root& r) { return root_of_unity(r.order(), r.num()); }

    /// Sum of a_j zeta_L^j for an unreduced exponent array of length L.
    static Cyclo from_group_ring(int64_t L, const std::vector<int64_t>& a) {
        auto f = detail::field(L);
        std::vector<int64_t> acc(f->phi, 0);
        for (int64_t j = 0; j < L; ++j) {
            if (a[j] == 0) continue;
            const auto& r = f->red[j];
            for (int64_t t = 0; t < f->phi; ++t) acc[t] += a[j] * r[t];
        }
        std::vector<mpq_class> c(acc.begin(), acc.end());
        return Cyclo(L, std::move(c));
    }

    int64_t conductor() const { return n_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    bool is_one() const { return is_rational() && c_[0] == 1; }

    /// Image in Q(zeta_M); M must be a multiple of the conductor.
    Cyclo embed(int64_t M) const {
        if (M == n_) return *this;
        if (M % n_ != 0) throw std::invalid_argument("Cyclo::embed: target conductor not a multiple");
        auto f = detail::field(M);
        std::vector<mpq_class> out(f->phi);
        int64_t step = M / n_;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const auto& r = f->red[(static_cast<int64_t>(i) * step) % M];
            for (int64_t t = 0; t < f->phi; ++t)
                if (r[t] != 0) out[t] += c_[i] * r[t];
        }
        return Cyclo(M, std::move(out));
    }

    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Cyclo operator+(const Cyclo& o) const {
        if (n_ == o.n_) {
            Cyclo r = *this;
            for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
            return r;
        }
        int64_t m = lcm64(n_, o.n_);
        return embed(m) + o.embed(m);
    }
    Cyclo operator-(const Cyclo& o) const { return *this + (-o); }
    Cyclo operator*(const Cyclo& o) const {
        if (n_ != o.n_) {
            if (is_rational()) return o.scaled(c_[0]);
            if (o.is_rational()) return scaled(o.c_[0]);
            int64_t m = lcm64(n_, o.n_);
            return embed(m) * o.embed(m);
        }
        auto f = detail::field(n_);
        std::vector<mpq_class> acc(n_);
        std::vector<char> used(n_, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) continue;
                size_t e = (i + j) % static_cast<size_t>(n_);
                acc[e] += c_[i] * o.c_[j];
                used[e] = 1;
            }
        }
        std::vector<mpq_class> out(f->phi);
        for (int64_t e = 0; e < n_; ++e) {
            if (!used[e] || acc[e] == 0) continue;
            const auto& r = f->red[e];
            for (int64_t t = 0; t < f->phi; ++t)
                if (r[t] != 0) out[t] += acc[e] * r[t];
        }
        return Cyclo(n_, std::move(out));
    }
    Cyclo scaled(const mpq_class& s) const {
        Cyclo r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    Cyclo operator/(const Cyclo& o) const { return *this * o.inv(); }

    Cyclo inv() const {
        if (is_zero()) throw DivisionByZero();
        if (is_rational()) return Cyclo(1 / c_[0]);
        // single term c*zeta^j
        int nz = 0;
        size_t pos = 0;
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) ++nz, pos = i;
        if (nz == 1) {
            Cyclo r = root_of_unity(n_, -static_cast<int64_t>(pos));
            return r.scaled(1 / c_[pos]);
        }
        return inv_general();
    }

    Cyclo pow(int64_t e) const {
        if (e < 0) return inv().pow(-e);
        Cyclo base = *this, r(1);
        while (e > 0) {
            if (e & 1) r *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return r;
    }

    bool operator==(const Cyclo& o) const {
        if (n_ == o.n_) return c_ == o.c_;
        int64_t m = lcm64(n_, o.n_);
        return embed(m).c_ == o.embed(m).c_;
    }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    /// The root of unity equal to this element, if any.
    std::optional<Root> as_root() const {
        if (is_rational()) {
            if (c_[0] == 1) return Root::one();
            if (c_[0] == -1) return Root::minus_one();
            return std::nullopt;
        }
        auto f = detail::field(n_);
        for (int64_t j = 0; j < n_; ++j) {
            const auto& r = f->red[j];
            bool plus = true, minus = true;
            for (int64_t t = 0; t < f->phi && (plus || minus); ++t) {
                if (c_[t] != r[t]) plus = false;
                if (c_[t] != -r[t]) minus = false;
            }
            if (plus) return Root(j, n_);
            if (minus) return Root(j, n_) * Root::minus_one();
        }
        return std::nullopt;
    }

    std::string str() const {
        if (auto r = as_root()) return r->str();
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            mpq_class v = c_[i];
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            if (v < 0) v = -v;
            first = false;
            if (i == 0) {
                os << v.get_str();
            } else {
                if (v != 1) os << v.get_str() << "*";
                os << "zeta(" << n_ << ")^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }

private:
    Cyclo inv_general() const {
        auto f = detail::field(n_);
        int64_t p = f->phi;
        // columns: this * zeta^t
        std::vector<std::vector<mpq_class>> M(p, std::vector<mpq_class>(p + 1));
        for (int64_t t = 0; t < p; ++t) {
            Cyclo col = *this * root_of_unity(n_, t);
            for (int64_t s = 0; s < p; ++s) M[s][t] = col.c_[s];
        }
        M[0][p] = 1;
        for (int64_t col = 0, row = 0; col < p; ++col, ++row) {
            int64_t piv = row;
            while (piv < p && M[piv][col] == 0) ++piv;
            if (piv == p) throw DivisionByZero();
            std::swap(M[piv], M[row]);
            mpq_class iv = 1 / M[row][col];
            for (int64_t j = col; j <= p; ++j) M[row][j] *= iv;
            for (int64_t i = 0; i < p; ++i) {
                if (i == row || M[i][col] == 0) continue;
                mpq_class fct = M[i][col];
                for (int64_t j = col; j <= p; ++j) M[i][j] -= fct * M[row][j];
            }
        }
        std::vector<mpq_class> out(p);
        for (int64_t s = 0; s < p; ++s) out[s] = M[s][p];
        return Cyclo(n_, std::move(out));
    }

    int64_t n_;
    std::vector<mpq_class> c_;
};

inline Cyclo root_of_unity(int64_t N, int64_t k) { return Cyclo::root_of_unity(N, k); }

/// Multiplicative order of a, or nullopt when a is not a root of unity.
inline std::optional<int64_t> as_root_of_unity(const Cyclo& a) {
    if (auto r = a.as_root()) return r->order();
    return std::nullopt;
}

}  // namespace twyd
