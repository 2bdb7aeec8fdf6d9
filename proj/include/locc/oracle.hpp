#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "locc/nielsen.hpp"
#include "locc/schmidt.hpp"

namespace locc {

/// Knobs for the brute-force searches. `resolution` is the grid step for
/// catalyst enumeration (must divide 1); `seed` offsets the deterministic
/// sampling sequence of the partner search. rank 0 derives the witness rank
/// from the inputs (2 for catalysts, the pair dimension for partners).
template <class S>
struct search_config {
    S resolution = scalar_from_ratio<S>(1, 100);
    std::size_t max_samples = 10'000;
    std::uint64_t seed = 0;
    std::size_t rank = 0;
};

/// Brute-force certificate for a joint conversion: tensors both lists, pads
/// and runs the full prefix-sum dominance check.
template <class S>
oracle_report<S> verify(const std::vector<schmidt_vector<S>>& sources,
                        const std::vector<schmidt_vector<S>>& targets,
                        const numeric_config<S>& cfg = {},
                        std::size_t cap = default_tensor_cap) {
    if (sources.empty() || targets.empty())
        throw std::invalid_argument("verify requires nonempty source and target lists");
    schmidt_vector<S> s = sources.front();
    for (std::size_t i = 1; i < sources.size(); ++i) s = tensor(s, sources[i], cap);
    schmidt_vector<S> t = targets.front();
    for (std::size_t i = 1; i < targets.size(); ++i) t = tensor(t, targets[i], cap);
    return majorization_report(s, t, cfg);
}

template <class S>
struct catalyst_search_result {
    std::optional<schmidt_vector<S>> catalyst;
    std::size_t examined = 0;       // grid points actually checked
    bool short_circuited = false;   // necessary condition ruled the search out
};

namespace detail {

/// Enumerates partitions of n into exactly r descending positive parts, in
/// descending lexicographic order. Calls f(parts) until it returns true.
template <class F>
bool for_each_partition(std::size_t n, std::size_t r, F&& f) {
    if (r == 0 || n < r) return false;
    std::vector<std::size_t> parts(r);
    // walk with remaining budget; parts[i] <= parts[i-1]
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t idx,
                                                            std::size_t left) -> bool {
        if (idx + 1 == parts.size()) {
            if (left >= 1 && (idx == 0 || left <= parts[idx - 1])) {
                parts[idx] = left;
                return f(parts);
            }
            return false;
        }
        std::size_t hi = idx == 0 ? left : std::min(left, parts[idx - 1]);
        std::size_t remaining_slots = parts.size() - idx - 1;
        for (std::size_t v = hi; v >= 1; --v) {
            if (left - v < remaining_slots) continue;  // not enough left for positives
            parts[idx] = v;
            if (rec(idx + 1, left - v)) return true;
        }
        return false;
    };
    return rec(0, n);
}

template <class S>
std::size_t grid_steps(const S& resolution) {
    if constexpr (is_exact_scalar_v<S>) {
        S inv = S(1) / resolution;
        if (denominator(inv) != 1 || inv < 1)
            throw std::invalid_argument("resolution must divide 1");
        return inv.template convert_to<std::size_t>();
    } else {
        double inv = 1.0 / resolution;
        auto n = static_cast<std::size_t>(inv + 0.5);
        if (n < 1) throw std::invalid_argument("resolution must divide 1");
        return n;
    }
}

}  // namespace detail

/// Exhaustive grid search for a catalyst chi with psi (x) chi -> phi (x) chi.
/// Comparable pairs need no catalyst (a product state suffices); pairs that
/// violate the necessary condition are ruled out without touching the grid.
/// A negative result is an exhausted budget, never a nonexistence proof.
template <class S>
catalyst_search_result<S> catalyst_search(const schmidt_vector<S>& psi,
                                          const schmidt_vector<S>& phi,
                                          const search_config<S>& cfg,
                                          const numeric_config<S>& num = {},
                                          std::size_t cap = default_tensor_cap) {
    catalyst_search_result<S> result;
    if (majorized_by(psi, phi, num)) {
        result.catalyst = make_state<S>({S(1)}, num);
        return result;
    }
    if (!catalysis_necessary(psi, phi, num)) {
        result.short_circuited = true;
        return result;
    }
    const std::size_t steps = detail::grid_steps(cfg.resolution);
    const std::size_t rank = cfg.rank ? cfg.rank : 2;
    detail::for_each_partition(steps, rank, [&](const std::vector<std::size_t>& parts) {
        ++result.examined;
        std::vector<S> c;
        c.reserve(parts.size());
        for (std::size_t p : parts)
            c.push_back(scalar_from_ratio<S>(static_cast<std::int64_t>(p), 1) * cfg.resolution);
        schmidt_vector<S> chi = make_state(std::move(c), num);
        if (verify<S>({psi, chi}, {phi, chi}, num, cap).ok) {
            result.catalyst = chi;
            return true;
        }
        return false;
    });
    return result;
}

template <class S>
struct partner_search_result {
    std::optional<std::pair<schmidt_vector<S>, schmidt_vector<S>>> partner;
    std::size_t examined = 0;
};

namespace detail {

/// Deterministic low-discrepancy point in [0,1)^k: an integer Weyl sequence
/// over denominator 2^20, identical in both numeric backends.
template <class S>
std::vector<S> weyl_point(std::uint64_t index, std::size_t k) {
    static constexpr std::uint64_t q = 1u << 20;
    static constexpr std::uint64_t strides[] = {643371, 902533, 341163, 786433,
                                                566927, 274177, 127117, 995329};
    std::vector<S> u(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t v = (index * strides[j % 8] + 12345 * (j + 1)) % q;
        u[j] = scalar_from_ratio<S>(static_cast<std::int64_t>(v), static_cast<std::int64_t>(q));
    }
    return u;
}

/// Maps k-1 unit-interval points to a descending simplex point via sorted
/// spacings. Returns nullopt on degenerate collisions.
template <class S>
std::optional<schmidt_vector<S>> simplex_point(std::vector<S> u, const numeric_config<S>& num) {
    std::sort(u.begin(), u.end());
    std::vector<S> parts;
    parts.reserve(u.size() + 1);
    S prev{};
    for (const S& x : u) {
        parts.push_back(x - prev);
        prev = x;
    }
    parts.push_back(S(1) - prev);
    for (const S& p : parts)
        if (!num.positive(p)) return std::nullopt;
    return make_state(std::move(parts), num);
}

}  // namespace detail

/// Samples auxiliary incomparable pairs (psi2, phi2) from a seeded
/// low-discrepancy sequence until one makes the joint conversion
/// psi (x) psi2 -> phi (x) phi2 verify, or the budget runs out. The trivial
/// swap (phi, psi) is excluded.
template <class S>
partner_search_result<S> coop_partner_search(const schmidt_vector<S>& psi,
                                             const schmidt_vector<S>& phi,
                                             const search_config<S>& cfg,
                                             const numeric_config<S>& num = {},
                                             std::size_t cap = default_tensor_cap) {
    if (majorized_by(psi, phi, num) || majorized_by(phi, psi, num))
        raise(errc::not_incomparable, "partner search needs an incomparable input pair");
    partner_search_result<S> result;
    const std::size_t r = cfg.rank >= 2 ? cfg.rank : common_dimension(psi, phi);
    const double e_gap = entropy(psi, num) - entropy(phi, num);
    for (std::size_t i = 0; i < cfg.max_samples; ++i) {
        ++result.examined;
        const std::uint64_t base = cfg.seed * 0x9e3779b9ull + 1 + 2 * i;
        auto pa = detail::simplex_point(detail::weyl_point<S>(base, r - 1), num);
        auto pb = detail::simplex_point(detail::weyl_point<S>(base + 1, r - 1), num);
        if (!pa || !pb) continue;
        // entropy monotonicity is necessary for the joint conversion
        if (entropy(*pa, num) - entropy(*pb, num) < -e_gap) continue;
        if (majorized_by(*pa, *pb, num) || majorized_by(*pb, *pa, num)) continue;
        if (spectra_equal(*pa, phi, num) && spectra_equal(*pb, psi, num)) continue;
        if (verify<S>({psi, *pa}, {phi, *pb}, num, cap).ok) {
            result.partner = std::make_pair(*pa, *pb);
            return result;
        }
    }
    return result;
}

/// One affine inequality: coeffs . x  (< | <=)  bound.
template <class S>
struct linear_constraint {
    std::vector<S> coeffs;
    S bound{};
    bool strict = true;
};

/// Feasibility of a small affine system by Fourier-Motzkin elimination.
/// Exact in the rational backend; sampling picks each coordinate at a chosen
/// quantile of its residual interval, so the default (midpoints) is strictly
/// interior whenever the open system is feasible at all.
template <class S>
class fm_system {
  public:
    fm_system(std::vector<linear_constraint<S>> cons,
              const std::vector<std::pair<S, S>>& box) {
        nvars_ = box.size();
        for (std::size_t v = 0; v < nvars_; ++v) {
            linear_constraint<S> lo{std::vector<S>(nvars_, S(0)), -box[v].first, true};
            lo.coeffs[v] = S(-1);
            linear_constraint<S> hi{std::vector<S>(nvars_, S(0)), box[v].second, true};
            hi.coeffs[v] = S(1);
            cons.push_back(std::move(lo));
            cons.push_back(std::move(hi));
        }
        eliminate(std::move(cons));
    }

    bool feasible() const { return feasible_; }

    /// quantiles: one value in (0,1) per variable.
    std::optional<std::vector<S>> sample(const std::vector<S>& quantiles) const {
        if (!feasible_) return std::nullopt;
        std::vector<S> x(nvars_);
        for (std::size_t v = 0; v < nvars_; ++v) {
            std::optional<S> lo, hi;
            bool lo_strict = false, hi_strict = false;
            for (const auto& b : levels_[v].lowers) {
                S val = b.constant;
                for (std::size_t j = 0; j < v; ++j) val += b.coeffs[j] * x[j];
                if (!lo || val > *lo) {
                    lo = val;
                    lo_strict = b.strict;
                } else if (val == *lo) {
                    lo_strict = lo_strict || b.strict;
                }
            }
            for (const auto& b : levels_[v].uppers) {
                S val = b.constant;
                for (std::size_t j = 0; j < v; ++j) val += b.coeffs[j] * x[j];
                if (!hi || val < *hi) {
                    hi = val;
                    hi_strict = b.strict;
                } else if (val == *hi) {
                    hi_strict = hi_strict || b.strict;
                }
            }
            // box bounds were injected, so both sides exist
            if (!lo || !hi) return std::nullopt;
            if (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict))) return std::nullopt;
            x[v] = *lo + (*hi - *lo) * quantiles[v];
        }
        return x;
    }

  private:
    struct bound {
        std::vector<S> coeffs;  // over variables 0..v-1
        S constant{};
        bool strict = false;
    };
    struct level {
        std::vector<bound> lowers, uppers;
    };

    void eliminate(std::vector<linear_constraint<S>> cons) {
        levels_.resize(nvars_);
        for (std::size_t v = nvars_; v-- > 1;) {
            std::vector<linear_constraint<S>> next;
            std::vector<bound> lows, ups;
            for (auto& c : cons) {
                const S& a = c.coeffs[v];
                if (a == S(0)) {
                    next.push_back(std::move(c));
                    continue;
                }
                bound b;
                b.coeffs.assign(c.coeffs.begin(), c.coeffs.begin() + v);
                for (S& cc : b.coeffs) cc = -cc / a;
                b.constant = c.bound / a;
                b.strict = c.strict;
                if (a > S(0))
                    ups.push_back(std::move(b));   // x_v <= bound expr
                else
                    lows.push_back(std::move(b));  // x_v >= bound expr (inequality flips)
            }
            for (const auto& l : lows) {
                for (const auto& u : ups) {
                    // l.expr (<|<=) x_v (<|<=) u.expr  =>  l.expr - u.expr < 0
                    linear_constraint<S> c;
                    c.coeffs.assign(nvars_, S(0));
                    for (std::size_t j = 0; j < v; ++j) c.coeffs[j] = l.coeffs[j] - u.coeffs[j];
                    c.bound = u.constant - l.constant;
                    c.strict = l.strict || u.strict;
                    next.push_back(std::move(c));
                }
            }
            levels_[v].lowers = std::move(lows);
            levels_[v].uppers = std::move(ups);
            cons = std::move(next);
        }
        // ground level: bounds on x_0 plus pure constants
        for (auto& c : cons) {
            const S& a = c.coeffs[0];
            if (a == S(0)) {
                if (c.bound < S(0) || (c.strict && c.bound == S(0))) feasible_ = false;
                continue;
            }
            bound b;
            b.constant = c.bound / a;
            b.strict = c.strict;
            if (a > S(0))
                levels_[0].uppers.push_back(std::move(b));
            else
                levels_[0].lowers.push_back(std::move(b));
        }
        if (feasible_) {
            std::vector<S> mid(nvars_, scalar_from_ratio<S>(1, 2));
            feasible_ = sample(mid).has_value();
        }
    }

    std::size_t nvars_ = 0;
    std::vector<level> levels_;
    bool feasible_ = true;
};

/// A strictly interior feasible point of an affine system over a bounded
/// open box, midpoint-biased; nullopt when the system is infeasible.
template <class S>
std::optional<std::vector<S>> feasible_point(std::vector<linear_constraint<S>> constraints,
                                             const std::vector<std::pair<S, S>>& box) {
    fm_system<S> fm(std::move(constraints), box);
    return fm.sample(std::vector<S>(box.size(), scalar_from_ratio<S>(1, 2)));
}

}  // namespace locc
