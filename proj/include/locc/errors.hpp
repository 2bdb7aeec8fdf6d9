#pragma once

#include <stdexcept>
#include <string>

namespace locc {

/// Failure categories surfaced by the library. Input-shaped problems and
/// domain infeasibilities are kept apart so callers can map them to
/// different exit paths.
enum class errc {
    negative_coefficient,
    zero_vector,
    size_overflow,
    shrink_not_allowed,
    rank_mismatch,
    not_incomparable,
    case_mismatch,
    infeasible_assist,
    no_feasible_c,
    formula_mismatch,
    empty_window,
    oracle_rejected,
    degenerate_source,
    infeasible_split,
    boundary_case,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::negative_coefficient: return "NegativeCoefficient";
        case errc::zero_vector: return "ZeroVector";
        case errc::size_overflow: return "SizeOverflow";
        case errc::shrink_not_allowed: return "ShrinkNotAllowed";
        case errc::rank_mismatch: return "RankMismatch";
        case errc::not_incomparable: return "NotIncomparable";
        case errc::case_mismatch: return "CaseMismatch";
        case errc::infeasible_assist: return "InfeasibleAssist";
        case errc::no_feasible_c: return "NoFeasibleC";
        case errc::formula_mismatch: return "FormulaMismatch";
        case errc::empty_window: return "EmptyWindow";
        case errc::oracle_rejected: return "OracleRejected";
        case errc::degenerate_source: return "DegenerateSource";
        case errc::infeasible_split: return "InfeasibleSplit";
        case errc::boundary_case: return "BoundaryCase";
    }
    return "UnknownError";
}

/// True for outcomes where the requested construction does not exist for the
/// given states, as opposed to malformed input.
inline bool is_infeasibility(errc c) {
    switch (c) {
        case errc::not_incomparable:
        case errc::case_mismatch:
        case errc::infeasible_assist:
        case errc::no_feasible_c:
        case errc::formula_mismatch:
        case errc::empty_window:
        case errc::oracle_rejected:
        case errc::degenerate_source:
        case errc::infeasible_split:
        case errc::boundary_case: return true;
        default: return false;
    }
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace locc
