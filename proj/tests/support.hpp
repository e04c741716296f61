#pragma once

// Shared test helpers: deterministic generators and the independent
// quadrature oracle for the beta density.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "trustnet/rating.hpp"
#include "trustnet/rng.hpp"
#include "trustnet/trust.hpp"

// Absolute-tolerance comparison; doctest's Approx is relative.
#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace testsupport {

using Rng = trustnet::SplitMix64;

inline trustnet::RatingVector random_vector(Rng& rng, std::uint64_t max_count = 1000) {
    return {rng.next_below(max_count + 1), rng.next_below(max_count + 1)};
}

// Integral of beta_pdf over [0,1] by composite Simpson after the p = sin^2(u)
// substitution, folded about p = 1/2 via f(1-p | a,b) = f(p | b,a) so that
// only the p -> 0 end needs the tiny trim the density's preconditions force.
// Smooth integrand for a,b >= 1/2; error well under 1e-8 at n = 4096.
inline double beta_integral(double alpha, double beta) {
    const double lo = 1e-9;
    const double hi = std::numbers::pi / 4.0;
    const int n = 4096;
    const double h = (hi - lo) / n;
    const auto integrand = [alpha, beta](double u) {
        const double s = std::sin(u);
        const double c = std::cos(u);
        const double p = s * s;
        return (trustnet::beta_pdf(p, alpha, beta) + trustnet::beta_pdf(p, beta, alpha)) * 2.0 *
               s * c;
    };
    double sum = integrand(lo) + integrand(hi);
    for (int i = 1; i < n; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lo + i * h);
    }
    return sum * h / 3.0;
}

}  // namespace testsupport
