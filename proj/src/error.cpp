#include "cuspdet/error.hpp"

namespace cuspdet {

const char* errc_name(Errc c) noexcept
{
    switch (c) {
    case Errc::domain: return "domain";
    case Errc::pole: return "pole";
    case Errc::overflow: return "overflow";
    case Errc::non_convergence: return "non_convergence";
    case Errc::not_hyperbolic: return "not_hyperbolic";
    case Errc::unknown_name: return "unknown_name";
    case Errc::budget_exceeded: return "budget_exceeded";
    case Errc::index: return "index";
    case Errc::expansion_mismatch: return "expansion_mismatch";
    case Errc::tail_unbounded: return "tail_unbounded";
    case Errc::truncation_insufficient: return "truncation_insufficient";
    case Errc::alpha_collision: return "alpha_collision";
    case Errc::nonpositive_eigenvalue: return "nonpositive_eigenvalue";
    case Errc::singularity: return "singularity";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    }
    return "unknown";
}

}  // namespace cuspdet
