#include "turinv/dispersion.hpp"

#include <cmath>

namespace turinv {

double growth_rate(const ModelParams& p, double q) {
    const double q2 = q * q;
    const double a11 = -p.d_n * q2 - p.r;
    const double a12 = p.chi0 * q2;
    const double a21 = 1.0;
    const double a22 = -p.d_c * q2 - 1.0;
    const double tr = a11 + a22;
    const double det = a11 * a22 - a12 * a21;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) return 0.5 * (tr + std::sqrt(disc));
    return 0.5 * tr;
}

DispersionReport dispersion_scan(const ModelParams& p, double L, int m_max) {
    if (!(p.r > 0.0)) throw ModelError("dispersion scan requires r > 0");
    if (!(L > 0.0) || m_max < 1)
        throw ModelError("dispersion scan needs L > 0 and m_max >= 1");
    DispersionReport rep;
    double best = -1e300;
    for (int m = 0; m <= m_max; ++m) {
        const double q = m * M_PI / L;
        const double g = growth_rate(p, q);
        rep.modes.push_back(m);
        rep.q_values.push_back(q);
        rep.growth.push_back(g);
        if (g > best) {
            best = g;
            rep.m_star = m;
            rep.q_star = q;
        }
        if (m >= 1 && g > 0.0) rep.unstable = true;
    }
    return rep;
}

double critical_chi0(double d_n, double d_c, double r) {
    return d_n + r * d_c + 2.0 * std::sqrt(r * d_n * d_c);
}

}  // namespace turinv
