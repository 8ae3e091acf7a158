#ifndef STGR_TYPES_HPP
#define STGR_TYPES_HPP

#include <stdexcept>
#include <string>

namespace stgr {

enum class Family { Stiefel, Grassmann };

inline const char* family_name(Family f) {
    return f == Family::Stiefel ? "stiefel" : "grassmann";
}

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotUnitary : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Divergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DecompositionResidual : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooFewPoints : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Which manifold family we work on, with frame width k and ambient
/// dimension n. The Grassmann convention here is k <= n/2; larger k is
/// rejected rather than silently replaced by the complement.
struct SpaceSpec {
    Family family;
    int k;
    int n;

    SpaceSpec(Family f, int k_, int n_) : family(f), k(k_), n(n_) {
        if (k < 1 || n < 1)
            throw InvalidSpec("SpaceSpec: k and n must be positive");
        if (family == Family::Stiefel && k > n)
            throw InvalidSpec("SpaceSpec: Stiefel requires k <= n, got k=" +
                              std::to_string(k) + " n=" + std::to_string(n));
        if (family == Family::Grassmann && 2 * k > n)
            throw InvalidSpec("SpaceSpec: Grassmann requires k <= n/2, got k=" +
                              std::to_string(k) + " n=" + std::to_string(n));
    }

    // U(k) is the Stiefel manifold with square frames.
    bool unitary_group() const { return family == Family::Stiefel && k == n; }

    bool operator==(const SpaceSpec& o) const {
        return family == o.family && k == o.k && n == o.n;
    }
};

} // namespace stgr

#endif
