#pragma once

#include <stdexcept>
#include <string>

namespace cuspdet {

enum class Errc {
    domain,
    pole,
    overflow,
    non_convergence,
    not_hyperbolic,
    unknown_name,
    budget_exceeded,
    index,
    expansion_mismatch,
    tail_unbounded,
    truncation_insufficient,
    alpha_collision,
    nonpositive_eigenvalue,
    singularity,
    io,
    parse,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Thrown by the quadrature driver; keeps what it had when it gave up.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best, double achieved)
        : Error(Errc::non_convergence, what), best_estimate(best), achieved_error(achieved) {}
    double best_estimate;
    double achieved_error;
};

}  // namespace cuspdet
