#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/numeric.hpp"

namespace locc {

/// Largest product-spectrum length any tensor operation will materialize.
inline constexpr std::size_t default_tensor_cap = 10'000'000;

/// Schmidt coefficient spectrum of a bipartite pure state: nonnegative,
/// descending, unit sum. Trailing zeros are retained, so size() and rank()
/// may differ. Immutable after construction.
template <class S>
class schmidt_vector {
  public:
    using scalar_type = S;

    const std::vector<S>& coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    /// Number of coefficients above the zero threshold.
    std::size_t rank() const { return rank_; }
    const S& operator[](std::size_t i) const { return coeffs_[i]; }

    bool operator==(const schmidt_vector&) const = default;

  private:
    struct trusted_tag {};
    schmidt_vector(trusted_tag, std::vector<S> sorted, std::size_t rank)
        : coeffs_(std::move(sorted)), rank_(rank) {}

    std::vector<S> coeffs_;
    std::size_t rank_ = 0;

    template <class T>
    friend schmidt_vector<T> make_state(std::vector<T>, const numeric_config<T>&);
    template <class T>
    friend schmidt_vector<T> tensor(const schmidt_vector<T>&, const schmidt_vector<T>&,
                                    std::size_t);
    template <class T>
    friend schmidt_vector<T> pad(const schmidt_vector<T>&, std::size_t);
};

/// Canonicalizes raw coefficients: sorts descending and normalizes to unit
/// sum. Entries within tolerance of zero are clamped; genuinely negative
/// entries and all-zero input are rejected.
template <class S>
schmidt_vector<S> make_state(std::vector<S> raw, const numeric_config<S>& cfg = {}) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < -cfg.eps)
            raise(errc::negative_coefficient,
                  "coeffs[" + std::to_string(i) + "] is negative");
        if (raw[i] < S(0)) raw[i] = S(0);
    }
    S sum{};
    for (const S& v : raw) sum += v;
    if (raw.empty() || !cfg.positive(sum)) raise(errc::zero_vector, "all coefficients are zero");

    // skipping the division when the sum is already 1 within tolerance makes
    // canonicalization idempotent bit for bit in the floating backend
    if (!cfg.eq(sum, S(1)))
        for (S& v : raw) v /= sum;
    std::sort(raw.begin(), raw.end(), std::greater<S>());
    std::size_t rank = 0;
    while (rank < raw.size() && cfg.positive(raw[rank])) ++rank;
    return schmidt_vector<S>(typename schmidt_vector<S>::trusted_tag{}, std::move(raw), rank);
}

/// Spectrum of the joint state: all pairwise products, sorted descending.
template <class S>
schmidt_vector<S> tensor(const schmidt_vector<S>& u, const schmidt_vector<S>& v,
                         std::size_t cap = default_tensor_cap) {
    const std::size_t n = u.size() * v.size();
    if (u.size() != 0 && n / u.size() != v.size())
        raise(errc::size_overflow, "tensor product size overflows");
    if (n > cap)
        raise(errc::size_overflow,
              "tensor product has " + std::to_string(n) + " entries, cap is " +
                  std::to_string(cap));
    std::vector<S> prod;
    prod.reserve(n);
    for (const S& a : u.coeffs())
        for (const S& b : v.coeffs()) prod.push_back(a * b);
    std::sort(prod.begin(), prod.end(), std::greater<S>());
    return schmidt_vector<S>(typename schmidt_vector<S>::trusted_tag{}, std::move(prod),
                             u.rank() * v.rank());
}

template <class S>
schmidt_vector<S> tensor_power(const schmidt_vector<S>& u, unsigned k,
                               std::size_t cap = default_tensor_cap) {
    if (k < 1) raise(errc::size_overflow, "tensor power requires k >= 1");
    std::size_t total = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (total > cap / std::max<std::size_t>(u.size(), 1))
            raise(errc::size_overflow, "tensor power exceeds the entry cap");
        total *= u.size();
    }
    schmidt_vector<S> out = u;
    for (unsigned i = 1; i < k; ++i) out = tensor(out, u, cap);
    return out;
}

/// Extends with zeros to length n; never shrinks.
template <class S>
schmidt_vector<S> pad(const schmidt_vector<S>& u, std::size_t n) {
    if (n < u.size())
        raise(errc::shrink_not_allowed, "pad target " + std::to_string(n) +
                                            " is below current length " +
                                            std::to_string(u.size()));
    std::vector<S> c = u.coeffs();
    c.resize(n, S(0));
    return schmidt_vector<S>(typename schmidt_vector<S>::trusted_tag{}, std::move(c), u.rank());
}

/// Full prefix-sum trace of a majorization check. `ok` iff the source's
/// prefix sums never exceed the target's; `first_violation` is the earliest
/// offending k (1-indexed).
template <class S>
struct oracle_report {
    bool ok = false;
    std::vector<std::pair<S, S>> prefix_pairs;
    std::optional<std::size_t> first_violation;
    std::pair<std::size_t, std::size_t> sizes{0, 0};
};

/// Nielsen's dominance check: every prefix sum of x at most the matching
/// prefix sum of y. The shorter spectrum is padded with zeros internally.
template <class S>
oracle_report<S> majorization_report(const schmidt_vector<S>& x, const schmidt_vector<S>& y,
                                     const numeric_config<S>& cfg = {}) {
    oracle_report<S> rep;
    rep.sizes = {x.size(), y.size()};
    const std::size_t n = std::max(x.size(), y.size());
    rep.prefix_pairs.reserve(n);
    S px{}, py{};
    for (std::size_t k = 0; k < n; ++k) {
        if (k < x.size()) px += x[k];
        if (k < y.size()) py += y[k];
        rep.prefix_pairs.emplace_back(px, py);
        if (!rep.first_violation && !cfg.leq(px, py)) rep.first_violation = k + 1;
    }
    rep.ok = !rep.first_violation.has_value();
    return rep;
}

template <class S>
bool majorized_by(const schmidt_vector<S>& x, const schmidt_vector<S>& y,
                  const numeric_config<S>& cfg = {}) {
    return majorization_report(x, y, cfg).ok;
}

/// Equality of spectra up to zero padding and tolerance.
template <class S>
bool spectra_equal(const schmidt_vector<S>& x, const schmidt_vector<S>& y,
                   const numeric_config<S>& cfg = {}) {
    const std::size_t n = std::max(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        S a = i < x.size() ? x[i] : S(0);
        S b = i < y.size() ? y[i] : S(0);
        if (!cfg.eq(a, b)) return false;
    }
    return true;
}

/// Entropy of entanglement in bits. Reported in floating point in both
/// backends; a uniform spectrum short-circuits to log2(rank) so maximally
/// entangled states carry exact costs.
template <class S>
double entropy(const schmidt_vector<S>& u, const numeric_config<S>& cfg = {}) {
    if (u.rank() == 0) return 0.0;
    bool uniform = true;
    for (std::size_t i = 1; i < u.rank() && uniform; ++i) uniform = (u[i] == u[0]);
    if (uniform) return std::log2(static_cast<double>(u.rank()));
    double h = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!cfg.positive(u[i])) continue;
        double p = to_double(u[i]);
        h -= p * std::log2(p);
    }
    return h;
}

/// Uniform spectrum (1/d, ..., 1/d): the maximally entangled state of rank d.
template <class S>
schmidt_vector<S> uniform_state(std::size_t d, const numeric_config<S>& cfg = {}) {
    std::vector<S> c(d, scalar_from_ratio<S>(1, static_cast<std::int64_t>(d)));
    return make_state(std::move(c), cfg);
}

/// Effective Schmidt rank of a pair: both spectra are compared as d x d
/// states with d = max of the two ranks.
template <class S>
std::size_t common_dimension(const schmidt_vector<S>& x, const schmidt_vector<S>& y) {
    return std::max(x.rank(), y.rank());
}

/// Coefficient at 1-indexed position i of the zero-padded spectrum.
template <class S>
S padded_coeff(const schmidt_vector<S>& x, std::size_t i) {
    return i <= x.size() ? x[i - 1] : S(0);
}

template <class S>
S prefix_sum(const schmidt_vector<S>& x, std::size_t k) {
    S s{};
    for (std::size_t i = 0; i < k && i < x.size(); ++i) s += x[i];
    return s;
}

}  // namespace locc
