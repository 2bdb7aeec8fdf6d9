#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "locc/schmidt.hpp"

namespace locc {

enum class direction { forward, backward, both, neither };

/// The two ways a rank-3 pair can be incomparable. case_a: the source has
/// the smaller top coefficient but the larger two-term prefix; case_b is the
/// mirror image.
enum class rank3_case { case_a, case_b };

inline const char* to_string(direction d) {
    switch (d) {
        case direction::forward: return "forward";
        case direction::backward: return "backward";
        case direction::both: return "both";
        case direction::neither: return "neither";
    }
    return "?";
}

struct conversion_verdict {
    direction dir = direction::neither;
    bool strong = false;                      // meaningful only when dir == neither
    std::optional<rank3_case> case3x3;        // set for incomparable rank-3 pairs

    bool incomparable() const { return dir == direction::neither; }
    bool convertible_forward() const {
        return dir == direction::forward || dir == direction::both;
    }
};

namespace detail {

template <class S>
void require_dimension(std::size_t d) {
    if (d < 2) raise(errc::rank_mismatch, "pair has effective dimension < 2");
}

/// Strong incomparability on an already-incomparable pair: first and last
/// coefficients strictly ordered the same way. Borderline equalities fail.
template <class S>
bool strong_condition(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                      const numeric_config<S>& cfg) {
    const std::size_t d = common_dimension(psi, phi);
    const S a1 = padded_coeff(psi, 1), b1 = padded_coeff(phi, 1);
    const S ad = padded_coeff(psi, d), bd = padded_coeff(phi, d);
    return (cfg.lt(a1, b1) && cfg.lt(ad, bd)) || (cfg.lt(b1, a1) && cfg.lt(bd, ad));
}

}  // namespace detail

/// Deterministic LOCC classification of an ordered pair (Nielsen criterion).
/// Equal spectra report `both`; incomparable rank-3 pairs carry their case
/// label, which is provably exhaustive and exclusive.
template <class S>
conversion_verdict classify(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                            const numeric_config<S>& cfg = {}) {
    const bool fwd = majorized_by(psi, phi, cfg);
    const bool bwd = majorized_by(phi, psi, cfg);
    conversion_verdict v;
    if (fwd && bwd) {
        v.dir = direction::both;
    } else if (fwd) {
        v.dir = direction::forward;
    } else if (bwd) {
        v.dir = direction::backward;
    } else {
        v.dir = direction::neither;
        v.strong = detail::strong_condition(psi, phi, cfg);
        if (psi.rank() == 3 && phi.rank() == 3) {
            const S a1 = psi[0], b1 = phi[0];
            const S a12 = psi[0] + psi[1], b12 = phi[0] + phi[1];
            if (cfg.lt(a1, b1) && cfg.lt(b12, a12))
                v.case3x3 = rank3_case::case_a;
            else if (cfg.lt(b1, a1) && cfg.lt(a12, b12))
                v.case3x3 = rank3_case::case_b;
            else
                throw std::logic_error(
                    "incomparable rank-3 pair matches neither case; numeric inconsistency");
        }
    }
    return v;
}

/// Incomparable with strictly ordered first AND last coefficients in the
/// same direction; such pairs stay incomparable under any number of copies.
template <class S>
bool is_strongly_incomparable(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                              const numeric_config<S>& cfg = {}) {
    detail::require_dimension<S>(common_dimension(psi, phi));
    if (majorized_by(psi, phi, cfg) || majorized_by(phi, psi, cfg)) return false;
    return detail::strong_condition(psi, phi, cfg);
}

/// Necessary condition for any catalyst to enable psi -> phi:
/// a1 <= b1 and a_d >= b_d. False means no catalyst can ever work.
template <class S>
bool catalysis_necessary(const schmidt_vector<S>& psi, const schmidt_vector<S>& phi,
                         const numeric_config<S>& cfg = {}) {
    const std::size_t d = common_dimension(psi, phi);
    detail::require_dimension<S>(d);
    return cfg.leq(padded_coeff(psi, 1), padded_coeff(phi, 1)) &&
           cfg.leq(padded_coeff(phi, d), padded_coeff(psi, d));
}

/// Smallest k <= k_max with psi^(x k) majorized by phi^(x k), if any.
template <class S>
std::optional<unsigned> multi_copy_convertible(const schmidt_vector<S>& psi,
                                               const schmidt_vector<S>& phi, unsigned k_max,
                                               const numeric_config<S>& cfg = {},
                                               std::size_t cap = default_tensor_cap) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    for (unsigned k = 1; k <= k_max; ++k) {
        if (majorized_by(tensor_power(psi, k, cap), tensor_power(phi, k, cap), cfg)) return k;
    }
    return std::nullopt;
}

}  // namespace locc
