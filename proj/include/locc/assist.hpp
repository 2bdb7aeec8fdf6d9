#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "locc/nielsen.hpp"
#include "locc/oracle.hpp"
#include "locc/schmidt.hpp"

namespace locc {

/// An entanglement-assisted conversion plan: psi (x) auxiliary -> phi (x)
/// residual deterministically. The residual is a product state, so
/// cost_bits = entropy(auxiliary) is the entanglement consumed.
template <class S>
struct assist_plan {
    schmidt_vector<S> source, target, auxiliary, residual;
    std::optional<S> c;  // largest coefficient of a 2x2 auxiliary
    double cost_bits = 0.0;
};

/// Bound relating first and last coefficients of incomparable pairs:
/// a1 + b_d < 1 and b1 + a_d < 1, strictly.
template <class S>
bool theorem_bounds(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                    const numeric_config<S>& cfg = {}) {
    const std::size_t d = common_dimension(psi, phi);
    detail::require_dimension<S>(d);
    const S one(1);
    return cfg.lt(padded_coeff(psi, 1) + padded_coeff(phi, d), one) &&
           cfg.lt(padded_coeff(phi, 1) + padded_coeff(psi, d), one);
}

/// Feasibility of assisting with the next-lower-rank maximally entangled
/// state: a1 * k / (d-1) <= sum of the k largest target coefficients, for
/// every k < d. Equivalent to full majorization of the product spectra.
template <class S>
bool maxent_assist_feasible(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                            const numeric_config<S>& cfg = {}) {
    const std::size_t d = common_dimension(psi, phi);
    detail::require_dimension<S>(d);
    const S a1 = padded_coeff(psi, 1);
    const S dm1 = scalar_from_ratio<S>(static_cast<std::int64_t>(d) - 1, 1);
    S bsum{};
    for (std::size_t k = 1; k <= d - 1; ++k) {
        bsum += padded_coeff(phi, k);
        if (!cfg.leq(a1 * scalar_from_ratio<S>(static_cast<std::int64_t>(k), 1) / dm1, bsum))
            return false;
    }
    return true;
}

/// Plan using the uniform (d-1)-state as auxiliary. Every returned plan is
/// re-checked against the brute-force majorization oracle.
template <class S>
assist_plan<S> maxent_assist_plan(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                                  const numeric_config<S>& cfg = {}) {
    if (!maxent_assist_feasible(psi, phi, cfg))
        raise(errc::infeasible_assist,
              "maximally entangled assist is infeasible for this pair");
    const std::size_t d = common_dimension(psi, phi);
    assist_plan<S> plan{psi, phi, uniform_state<S>(d - 1, cfg), make_state<S>({S(1)}, cfg),
                        std::nullopt, 0.0};
    if (!verify<S>({psi, plan.auxiliary}, {phi, plan.residual}, cfg).ok)
        throw std::logic_error("assist criterion and product majorization disagree");
    if (plan.auxiliary.size() == 2) plan.c = plan.auxiliary[0];
    plan.cost_bits = entropy(plan.auxiliary, cfg);
    return plan;
}

/// Result of the exact search for the largest feasible c of a 2x2 auxiliary
/// (c, 1-c). When nothing below 1 binds, the supremum is open at 1 and the
/// returned value is capped just below it.
template <class S>
struct max_c_result {
    S c{};
    bool open_at_one = false;
};

namespace detail {

/// Majorization of psi (x) (c, 1-c) against the padded target, evaluated for
/// an arbitrary c (no state construction, so out-of-domain c is handled).
template <class S>
bool feasible_at_c(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi, const S& c,
                   const numeric_config<S>& cfg) {
    std::vector<S> prod;
    prod.reserve(2 * psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        prod.push_back(psi[i] * c);
        prod.push_back(psi[i] * (S(1) - c));
    }
    std::sort(prod.begin(), prod.end(), std::greater<S>());
    S px{}, py{};
    for (std::size_t k = 0; k < prod.size(); ++k) {
        px += prod[k];
        py += k < phi.size() ? phi[k] : S(0);
        if (!cfg.leq(px, py)) return false;
    }
    return true;
}

}  // namespace detail

/// Exact supremum of c in [1/2, 1) with tensor(psi, (c, 1-c)) majorized by
/// the padded target. Every prefix constraint is linear in c, so the
/// supremum is the minimum of the binding upper bounds; no search needed.
template <class S>
max_c_result<S> max_c_oracle(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                             const numeric_config<S>& cfg = {}) {
    const std::size_t m = psi.size();
    std::vector<S> a_prefix(m + 1, S(0));  // top-j sums of psi
    for (std::size_t j = 1; j <= m; ++j) a_prefix[j] = a_prefix[j - 1] + psi[j - 1];

    const S half = scalar_from_ratio<S>(1, 2);
    std::optional<S> min_upper;
    S max_lower = half;
    // top-k of the product spectrum = max_j [ c*A_j + (1-c)*A_{k-j} ]
    for (std::size_t k = 1; k <= 2 * m; ++k) {
        const S t_k = prefix_sum(phi, k);
        const std::size_t j_lo = k > m ? k - m : 0;
        const std::size_t j_hi = std::min(k, m);
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const S slope = a_prefix[j] - a_prefix[k - j];
            const S rhs = t_k - a_prefix[k - j];
            if (slope == S(0)) {
                if (rhs < S(0))
                    raise(errc::no_feasible_c, "a constant prefix constraint is violated");
                continue;
            }
            const S bound = rhs / slope;
            if (slope > S(0)) {
                if (!min_upper || bound < *min_upper) min_upper = bound;
            } else if (bound > max_lower) {
                max_lower = bound;
            }
        }
    }
    if (min_upper && *min_upper < S(1)) {
        if (*min_upper < max_lower)
            raise(errc::no_feasible_c, "no c in [1/2, 1) satisfies the prefix constraints");
        return {*min_upper, false};
    }
    // supremum open at 1: cap strictly below
    S cap = S(1) - scalar_from_ratio<S>(1, 1 << 20);
    if (cap <= max_lower) cap = (max_lower + S(1)) / S(2);
    if (!detail::feasible_at_c(psi, phi, cap, cfg))
        raise(errc::no_feasible_c, "no c in [1/2, 1) satisfies the prefix constraints");
    return {cap, true};
}

/// Raised when the closed-form c0 and the exact oracle disagree; carries
/// both values plus a working plan built from the oracle's c.
template <class S>
class formula_mismatch_error : public error {
  public:
    formula_mismatch_error(S formula_c, S oracle_c, assist_plan<S> oracle_plan)
        : error(errc::formula_mismatch, "closed-form c0 disagrees with the exact oracle"),
          formula_c(std::move(formula_c)),
          oracle_c(std::move(oracle_c)),
          oracle_plan(std::move(oracle_plan)) {}

    S formula_c, oracle_c;
    assist_plan<S> oracle_plan;
};

namespace detail {

template <class S>
assist_plan<S> plan_from_c(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                           const S& c, const numeric_config<S>& cfg) {
    assist_plan<S> plan{psi, phi, make_state<S>({c, S(1) - c}, cfg),
                        make_state<S>({S(1)}, cfg), c, 0.0};
    plan.cost_bits = entropy(plan.auxiliary, cfg);
    return plan;
}

}  // namespace detail

/// Cheapest 2x2 assist for a rank-3 incomparable pair. The closed form
/// depends on the case label and is trusted only after it matches the exact
/// oracle; the plan is verified at c0 and refuted at c0 + 1e-6.
template <class S>
assist_plan<S> minimal_assist_3x3(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                                  const numeric_config<S>& cfg = {}) {
    const conversion_verdict v = classify(psi, phi, cfg);
    if (!v.incomparable() || !v.case3x3)
        raise(errc::not_incomparable, "minimal assist requires a rank-3 incomparable pair");

    const S a1 = psi[0], a2 = psi[1], b1 = phi[0], b2 = phi[1];
    const S c0 = *v.case3x3 == rank3_case::case_a ? (b1 + b2) / (a1 + a2) : b1 / a1;

    const max_c_result<S> oracle = max_c_oracle(psi, phi, cfg);
    const S slack = cfg.exact() ? S(0) : S(10) * cfg.eps;
    using std::abs;
    if (oracle.open_at_one || abs(oracle.c - c0) > slack)
        throw formula_mismatch_error<S>(c0, oracle.c,
                                        detail::plan_from_c(psi, phi, oracle.c, cfg));

    assist_plan<S> plan = detail::plan_from_c(psi, phi, c0, cfg);
    const S delta = scalar_from_ratio<S>(1, 1'000'000);
    if (!detail::feasible_at_c(psi, phi, c0, cfg))
        throw std::logic_error("minimal assist fails at its own c0");
    if (detail::feasible_at_c(psi, phi, c0 + delta, cfg))
        throw std::logic_error("minimal assist is not maximal: c0 + 1e-6 still verifies");
    return plan;
}

/// Sufficient condition for promoting psi (with a uniform (d-1) helper) to
/// the rank-d maximally entangled state: a1 <= (d-1)/d.
template <class S>
bool corollary1_feasible(const schmidt_vector<S>& psi, std::size_t d,
                         const numeric_config<S>& cfg = {}) {
    if (d < 2 || psi.size() > d)
        raise(errc::rank_mismatch, "promotion target must have d >= 2 and d >= len(psi)");
    const bool ok = cfg.leq(psi[0], scalar_from_ratio<S>(static_cast<std::int64_t>(d) - 1,
                                                         static_cast<std::int64_t>(d)));
    if (ok &&
        !verify<S>({psi, uniform_state<S>(d - 1, cfg)}, {uniform_state<S>(d, cfg)}, cfg).ok)
        throw std::logic_error("promotion criterion and product majorization disagree");
    return ok;
}

/// The 2x2 state ((d-1)/d, 1/d) that lifts a uniform (d-1)-state to a
/// uniform d-state.
template <class S>
schmidt_vector<S> promotion_state(std::size_t d, const numeric_config<S>& cfg = {}) {
    if (d < 2) raise(errc::rank_mismatch, "promotion state needs d >= 2");
    return make_state<S>({scalar_from_ratio<S>(static_cast<std::int64_t>(d) - 1,
                                               static_cast<std::int64_t>(d)),
                          scalar_from_ratio<S>(1, static_cast<std::int64_t>(d))},
                         cfg);
}

/// The d-1 two-qubit states whose joint spectrum is majorized by the rank-d
/// maximally entangled state; verified before returning.
template <class S>
std::vector<schmidt_vector<S>> maxent_chain(std::size_t d, const numeric_config<S>& cfg = {},
                                            std::size_t cap = default_tensor_cap) {
    if (d < 2) raise(errc::rank_mismatch, "chain needs d >= 2");
    std::vector<schmidt_vector<S>> chain;
    chain.reserve(d - 1);
    for (std::size_t i = 1; i <= d - 1; ++i) chain.push_back(promotion_state<S>(d - i + 1, cfg));
    if (!verify<S>(chain, {uniform_state<S>(d, cfg)}, cfg, cap).ok)
        throw std::logic_error("chain product is not majorized by the uniform target");
    return chain;
}

}  // namespace locc
