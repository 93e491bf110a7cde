#pragma once

// Exact coefficient fields. A field object is a small copyable context; its
// value_type is a plain scalar and all arithmetic goes through the context,
// in the style of residue/modulus pairs.

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace curvedual {

template <class F>
concept Field = std::copyable<F> && requires(const F& f, const typename F::value_type& a, std::int64_t n,
                                             std::string_view s, std::mt19937_64& rng) {
    typename F::value_type;
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.from_int(n) } -> std::same_as<typename F::value_type>;
    { f.normalize(a) } -> std::same_as<typename F::value_type>;
    { f.add(a, a) } -> std::same_as<typename F::value_type>;
    { f.sub(a, a) } -> std::same_as<typename F::value_type>;
    { f.mul(a, a) } -> std::same_as<typename F::value_type>;
    { f.neg(a) } -> std::same_as<typename F::value_type>;
    { f.inv(a) } -> std::same_as<typename F::value_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.equal(a, a) } -> std::same_as<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.parse(s) } -> std::same_as<std::optional<typename F::value_type>>;
    { f.random(rng) } -> std::same_as<typename F::value_type>;
    { f.characteristic() } -> std::same_as<std::uint64_t>;
    { f.cardinality() } -> std::same_as<std::uint64_t>;
    { f.name() } -> std::same_as<std::string>;
    { f == f } -> std::same_as<bool>;
};

template <Field F>
using Scalar = typename F::value_type;

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class Rationals {
public:
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(std::int64_t n) const { return value_type(static_cast<long>(n)); }
    value_type normalize(value_type a) const
    {
        a.canonicalize();
        return a;
    }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const
    {
        if (sgn(a) == 0) fail(ErrorKind::InvalidArgument, "division by zero");
        return value_type(1) / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    /// acc -= c * b, without building a fresh temporary for the product twice.
    void sub_mul(value_type& acc, const value_type& c, const value_type& b) const { acc -= c * b; }

    std::string to_string(const value_type& a) const { return a.get_str(); }

    std::optional<value_type> parse(std::string_view s) const
    {
        if (s.empty()) return std::nullopt;
        std::size_t slash = s.find('/');
        auto digits = [](std::string_view d, bool allow_sign) {
            if (d.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (d[0] == '-' || d[0] == '+')) i = 1;
            if (i == d.size()) return false;
            for (; i < d.size(); ++i)
                if (d[i] < '0' || d[i] > '9') return false;
            return true;
        };
        if (slash == std::string_view::npos) {
            if (!digits(s, true)) return std::nullopt;
        } else if (!digits(s.substr(0, slash), true) || !digits(s.substr(slash + 1), false)) {
            return std::nullopt;
        }
        std::string text(s);
        if (text[0] == '+') text.erase(0, 1);
        value_type v;
        if (v.set_str(text, 10) != 0) return std::nullopt;
        if (slash != std::string_view::npos && v.get_den() == 0) return std::nullopt;
        v.canonicalize();
        return v;
    }

    template <class Rng>
    value_type random(Rng& rng) const
    {
        std::uniform_int_distribution<int> d(-9, 9);
        return value_type(d(rng));
    }

    std::uint64_t characteristic() const { return 0; }
    std::uint64_t cardinality() const { return 0; }
    std::string name() const { return "Q"; }
    bool operator==(const Rationals&) const { return true; }
};

/// GF(p^e). For e == 1 elements are residues 0..p-1. For e > 1 an element is
/// encoded by its base-p digit vector over a primitive modulus, and
/// multiplication uses discrete log tables; elements below p form the prime
/// subfield.
class FiniteField {
public:
    using value_type = std::uint32_t;

    static constexpr std::uint64_t max_table_size = 1u << 20;

    explicit FiniteField(std::uint64_t p, unsigned e = 1) : p_(static_cast<std::uint32_t>(p)), e_(e)
    {
        if (p > (1ull << 31) || !is_prime(p)) fail(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not a prime below 2^31");
        if (e == 0) fail(ErrorKind::InvalidArgument, "extension degree must be positive");
        if (e > 1) tables_ = build_tables(p_, e_);
    }

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return e_; }
    bool is_prime_field() const { return e_ == 1; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type normalize(value_type a) const { return a; }
    value_type from_int(std::int64_t n) const
    {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<value_type>(r);
    }

    value_type add(value_type a, value_type b) const
    {
        if (e_ == 1) {
            std::uint64_t s = std::uint64_t(a) + b;
            return static_cast<value_type>(s >= p_ ? s - p_ : s);
        }
        if (p_ == 2) return a ^ b;
        value_type out = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i) {
            value_type da = a % p_, db = b % p_;
            a /= p_;
            b /= p_;
            out += ((da + db) % p_) * scale;
            scale *= p_;
        }
        return out;
    }

    value_type neg(value_type a) const
    {
        if (e_ == 1) return a == 0 ? 0 : p_ - a;
        if (p_ == 2) return a;
        value_type out = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i) {
            value_type d = a % p_;
            a /= p_;
            out += ((p_ - d) % p_) * scale;
            scale *= p_;
        }
        return out;
    }

    value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }

    value_type mul(value_type a, value_type b) const
    {
        if (e_ == 1) return static_cast<value_type>((std::uint64_t(a) * b) % p_);
        if (a == 0 || b == 0) return 0;
        const auto& t = *tables_;
        std::uint64_t k = std::uint64_t(t.log[a]) + t.log[b];
        if (k >= t.q - 1) k -= t.q - 1;
        return t.exp[k];
    }

    value_type inv(value_type a) const
    {
        if (a == 0) fail(ErrorKind::InvalidArgument, "division by zero");
        if (e_ == 1) {
            // Fermat: a^(p-2)
            std::uint64_t r = 1, b = a, k = p_ - 2;
            while (k) {
                if (k & 1) r = (r * b) % p_;
                b = (b * b) % p_;
                k >>= 1;
            }
            return static_cast<value_type>(r);
        }
        const auto& t = *tables_;
        return t.exp[(t.q - 1 - t.log[a]) % (t.q - 1)];
    }

    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }
    void sub_mul(value_type& acc, value_type c, value_type b) const { acc = sub(acc, mul(c, b)); }

    /// Prime-subfield elements print as integers; others as powers of the
    /// primitive root z in brackets.
    std::string to_string(value_type a) const
    {
        if (a < p_) return std::to_string(a);
        return "[z^" + std::to_string(tables_->log[a]) + "]";
    }

    std::optional<value_type> parse(std::string_view s) const
    {
        if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
        if (e_ > 1 && !s.empty() && s[0] == 'z') {
            std::uint64_t k = 1;
            if (s.size() > 1) {
                if (s.size() < 3 || s[1] != '^') return std::nullopt;
                auto k_opt = parse_uint(s.substr(2));
                if (!k_opt) return std::nullopt;
                k = *k_opt;
            }
            return tables_->exp[k % (tables_->q - 1)];
        }
        bool negative = false;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            negative = s[0] == '-';
            s.remove_prefix(1);
        }
        auto v = parse_uint(s);
        if (!v) return std::nullopt;
        value_type r = static_cast<value_type>(*v % p_);
        return negative ? neg(r) : r;
    }

    template <class Rng>
    value_type random(Rng& rng) const
    {
        std::uniform_int_distribution<std::uint64_t> d(0, cardinality() - 1);
        return static_cast<value_type>(d(rng));
    }

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t cardinality() const
    {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e_; ++i) q *= p_;
        return q;
    }
    std::string name() const
    {
        if (e_ == 1) return "F" + std::to_string(p_);
        return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
    }
    bool operator==(const FiniteField& o) const { return p_ == o.p_ && e_ == o.e_; }

    /// Coefficients (low to high, monic) of the modulus defining the extension.
    std::vector<std::uint32_t> modulus() const
    {
        if (e_ == 1) return {0, 1};
        return tables_->modulus;
    }

private:
    struct Tables {
        std::uint64_t q = 0;
        std::vector<value_type> exp;
        std::vector<std::uint32_t> log;
        std::vector<std::uint32_t> modulus;
    };

    static std::optional<std::uint64_t> parse_uint(std::string_view s)
    {
        if (s.empty() || s.size() > 18) return std::nullopt;
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        return v;
    }

    // Search monic moduli of degree e in lexicographic order until one has x
    // of multiplicative order q - 1; such a modulus is irreducible and
    // primitive.
    static std::shared_ptr<const Tables> build_tables(std::uint32_t p, unsigned e)
    {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) {
            q *= p;
            if (q > max_table_size) fail(ErrorKind::TooLarge, "extension field too large for table arithmetic");
        }
        auto encode = [&](const std::vector<std::uint32_t>& d) {
            std::uint64_t c = 0;
            for (unsigned i = e; i-- > 0;) c = c * p + d[i];
            return static_cast<value_type>(c);
        };
        for (std::uint64_t code = 1; code < q; ++code) {
            std::vector<std::uint32_t> low(e);
            std::uint64_t c = code;
            for (unsigned i = 0; i < e; ++i) {
                low[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            if (low[0] == 0) continue;
            auto t = std::make_shared<Tables>();
            t->q = q;
            t->exp.assign(q - 1, 0);
            t->log.assign(q, 0);
            std::vector<std::uint32_t> cur(e, 0);
            cur[0] = 1;
            bool primitive = true;
            for (std::uint64_t k = 0; k < q - 1; ++k) {
                value_type enc = encode(cur);
                if (k > 0 && enc == 1) {
                    primitive = false;
                    break;
                }
                t->exp[k] = enc;
                t->log[enc] = static_cast<std::uint32_t>(k);
                // cur *= x modulo x^e + low(x)
                std::uint32_t top = cur[e - 1];
                for (unsigned i = e - 1; i > 0; --i) cur[i] = cur[i - 1];
                cur[0] = 0;
                for (unsigned i = 0; i < e; ++i) cur[i] = static_cast<std::uint32_t>((cur[i] + std::uint64_t(p - low[i]) * top) % p);
            }
            if (!primitive || encode(cur) != 1) continue;
            t->modulus = low;
            t->modulus.push_back(1);
            return t;
        }
        fail(ErrorKind::InvalidArgument, "no primitive modulus found");
    }

    std::uint32_t p_;
    unsigned e_;
    std::shared_ptr<const Tables> tables_;
};

template <class F>
inline constexpr bool is_finite_field_v = std::same_as<F, FiniteField>;

static_assert(Field<Rationals>);
static_assert(Field<FiniteField>);

} // namespace curvedual
