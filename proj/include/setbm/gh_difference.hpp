#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setbm/convex_set.hpp"
#include "setbm/embedding.hpp"

namespace setbm {

enum class GhCase { BothSingleton, CaseI, CaseII, NotExists };

const char* to_string(GhCase c);

struct GhResult {
    GhCase ghcase = GhCase::NotExists;
    std::optional<ConvexSet> value;        // absent only for NotExists
    std::optional<EmbeddedElement> witness;  // the support-difference vector that classified
    double residual = 0.0;                   // Hausdorff residual of the verified equation
};

struct GhOptions {
    // Absolute tolerance for the support-likeness margin; the Minkowski
    // verification uses tol * (1 + diam A + diam B).
    double tol = 1e-7;
};

// Closed-form interval gH-difference (d = 1):
// C = [min(a1-b1, a2-b2), max(a1-b1, a2-b2)]; always exists.
GhResult gh_diff_interval(const ConvexSet& a, const ConvexSet& b, const GhOptions& opts = {});

// Grid classifier: s1 = j(A) - j(B) and s2 = -s1 are tested for
// support-likeness; a candidate case is accepted only after its defining
// Minkowski equation verifies on the exact representations.
GhResult gh_diff(const ConvexSet& a, const ConvexSet& b, const GridPtr& grid,
                 const GhOptions& opts = {});

struct GhIdentityCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

// Checks B(-)A = -(A(-)B), A(-)A = {0}, (A+B)(-)B = A, A(-)(A+B) = -B.
std::vector<GhIdentityCheck> check_gh_identities(const ConvexSet& a, const ConvexSet& b,
                                                 const GridPtr& grid,
                                                 const GhOptions& opts = {});

}  // namespace setbm
