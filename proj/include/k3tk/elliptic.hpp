#pragma once

// Exact elliptic invariants of the triple-conic configurations
// (x0 x2 - a1 x1^2)(x0 x2 - a2 x1^2)(x0 x2 - a3 x1^2): Weierstrass
// coefficients from the roots, discriminant, cross-ratio, and j, with the two
// j routes cross-checked against each other.

#include "k3tk/rational.hpp"

#include <array>
#include <optional>
#include <string>

namespace k3tk::ell {

struct ConicTriple {
    std::array<Rat, 3> alpha;
};

struct WeierstrassData {
    Rat A;
    Rat B;
};

struct EllipticInvariants {
    std::optional<Rat> lambda;  // cross-ratio; empty = infinite
    Rat discriminant;
    std::optional<Rat> j;  // empty = infinite (degenerate)
    bool degenerate = false;
};

/// Coefficients of the depressed cubic prod(x - alpha_i) after the shift
/// x -> x + s1/3: A = s2 - s1^2/3 and B = s1 s2/3 - 2 s1^3/27 - s3. This is
/// the unique sign convention under which 4A^3 + 27B^2 equals
/// -prod (alpha_i - alpha_j)^2, which the invariants below rely on.
inline WeierstrassData weierstrass_from_roots(const ConicTriple& t) {
    const Rat &a1 = t.alpha[0], &a2 = t.alpha[1], &a3 = t.alpha[2];
    Rat s1 = a1 + a2 + a3;
    Rat s2 = a1 * a2 + a2 * a3 + a3 * a1;
    Rat s3 = a1 * a2 * a3;
    return {s2 - s1 * s1 / 3, s1 * s2 / 3 - Rat(2) * s1 * s1 * s1 / 27 - s3};
}

inline EllipticInvariants invariants(const ConicTriple& t) {
    const Rat &a1 = t.alpha[0], &a2 = t.alpha[1], &a3 = t.alpha[2];
    WeierstrassData w = weierstrass_from_roots(t);
    EllipticInvariants inv;
    inv.discriminant = Rat(4) * w.A * w.A * w.A + Rat(27) * w.B * w.B;
    Rat product = -(a1 - a2) * (a1 - a2) * (a2 - a3) * (a2 - a3) * (a3 - a1) * (a3 - a1);
    if (inv.discriminant != product)
        throw std::logic_error("discriminant identity failed; arithmetic bug");
    inv.degenerate = (inv.discriminant == 0);
    if (a2 != a3) inv.lambda = (a1 - a3) / (a2 - a3);
    if (inv.degenerate) return inv;  // lambda in {0,1,inf}; j infinite

    const Rat& lam = *inv.lambda;
    Rat n = lam * lam - lam + 1;
    Rat jr = Rat(256) * n * n * n / (lam * lam * (lam - 1) * (lam - 1));
    // Weierstrass route, denominator Delta (not 27 B^2): the normalization
    // consistent with the cross-ratio formula.
    Rat jw = Rat(1728) * Rat(4) * w.A * w.A * w.A / inv.discriminant;
    if (jr != jw) throw std::logic_error("the two j computations disagree; arithmetic bug");
    inv.j = jr;
    return inv;
}

}  // namespace k3tk::ell
