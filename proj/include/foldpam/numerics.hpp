#pragma once

#include <functional>

namespace foldpam {

// Amplitude/parameter pair for the incomplete elliptic integrals, using the
// parameter convention m = k^2 and the F(phi\m) notation.
struct EllipticArgs {
    double phi;  // amplitude, radians, in [0, pi/2]
    double m;    // parameter (modulus squared), in [0, 1]
};

// F(phi\m) = integral_0^phi dt / sqrt(1 - m sin^2 t).
// Throws domain_error on invalid args and solve_error for the divergent
// combination phi = pi/2, m = 1.
double ellip_f(const EllipticArgs& args);

// E(phi\m) = integral_0^phi sqrt(1 - m sin^2 t) dt.
double ellip_e(const EllipticArgs& args);

// Brent's method on [lo, hi]; f(lo) and f(hi) must have opposite signs.
// Stops when |f(x)| <= tol or the bracket width falls below tol.
double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol);

namespace detail {
// Carlson symmetric forms, exposed for tests.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
}  // namespace detail

}  // namespace foldpam
