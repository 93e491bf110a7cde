#pragma once

// Finite exponent windows: the k-space span{t_i^e : lo_i <= e < hi_i} with
// coordinates ordered branch-major, exponent ascending.

#include <cstddef>
#include <optional>
#include <vector>

#include "laurent.hpp"
#include "linalg.hpp"

namespace curvedual::detail {

class Window {
public:
    Window(std::vector<int> lo, std::vector<int> hi) : lo_(std::move(lo)), hi_(std::move(hi))
    {
        offset_.reserve(lo_.size());
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            offset_.push_back(dim_);
            if (hi_[i] > lo_[i]) dim_ += static_cast<std::size_t>(hi_[i] - lo_[i]);
        }
    }

    std::size_t branches() const { return lo_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<int>& lo() const { return lo_; }
    const std::vector<int>& hi() const { return hi_; }
    int lo(std::size_t i) const { return lo_[i]; }
    int hi(std::size_t i) const { return hi_[i]; }
    bool contains(std::size_t i, int e) const { return e >= lo_[i] && e < hi_[i]; }
    std::size_t col(std::size_t i, int e) const { return offset_[i] + static_cast<std::size_t>(e - lo_[i]); }

    /// (branch, exponent) of a coordinate.
    std::pair<std::size_t, int> at(std::size_t c) const
    {
        for (std::size_t i = 0; i < lo_.size(); ++i) {
            std::size_t width = hi_[i] > lo_[i] ? static_cast<std::size_t>(hi_[i] - lo_[i]) : 0;
            if (c < offset_[i] + width) return {i, lo_[i] + static_cast<int>(c - offset_[i])};
        }
        fail(ErrorKind::InvalidArgument, "window coordinate out of range");
    }

    /// Coordinates of f modulo t^hi. Returns nullopt if f has a term below lo.
    template <Field F>
    std::optional<Vec<F>> embed(const BranchElement<F>& f) const
    {
        Vec<F> v = zero_vec(f.field(), dim_);
        for (std::size_t i = 0; i < lo_.size(); ++i)
            for (const auto& t : f.terms(i)) {
                if (t.exponent >= hi_[i]) break;
                if (t.exponent < lo_[i]) return std::nullopt;
                v[col(i, t.exponent)] = t.coeff;
            }
        return v;
    }

    template <Field F>
    Vec<F> embed_or_throw(const BranchElement<F>& f) const
    {
        auto v = embed(f);
        if (!v) fail(ErrorKind::InvalidArgument, "element " + f.to_string() + " lies outside the working window");
        return *v;
    }

    template <Field F>
    Vec<F> unit(const F& field, std::size_t i, int e) const
    {
        Vec<F> v = zero_vec(field, dim_);
        v[col(i, e)] = field.one();
        return v;
    }

    template <Field F>
    BranchElement<F> element(const F& field, const Vec<F>& v, bool differential) const
    {
        std::vector<std::vector<typename BranchElement<F>::Term>> raw(lo_.size());
        for (std::size_t i = 0; i < lo_.size(); ++i)
            for (int e = lo_[i]; e < hi_[i]; ++e) {
                const auto& c = v[col(i, e)];
                if (!field.is_zero(c)) raw[i].push_back({e, c});
            }
        return BranchElement<F>::from_terms(field, std::move(raw), differential);
    }

    /// Lowest exponent on branch i carrying a nonzero coordinate of v.
    template <Field F>
    std::optional<int> lowest(const F& field, const Vec<F>& v, std::size_t i) const
    {
        for (int e = lo_[i]; e < hi_[i]; ++e)
            if (!field.is_zero(v[col(i, e)])) return e;
        return std::nullopt;
    }

private:
    std::vector<int> lo_, hi_;
    std::vector<std::size_t> offset_;
    std::size_t dim_ = 0;
};

} // namespace curvedual::detail
