// Linear stability of the homogeneous state (n,c) = (1,1) on [0,L] with
// no-flux boundaries. Perturbation mode cos(qx), q = m pi / L, evolves with
// the 2x2 Jacobian
//     [ -d_n q^2 - r   chi0 q^2   ]
//     [      1        -d_c q^2 - 1]
// (identical for both models: n/c = 1 at the state). The scan reports the
// largest real part of its eigenvalues per mode; a positive value at some
// m >= 1 marks a pattern-forming regime.

#pragma once

#include <vector>

#include "turinv/model.hpp"

namespace turinv {

struct DispersionReport {
    std::vector<int> modes;       // m = 0..m_max
    std::vector<double> q_values; // q = m pi / L
    std::vector<double> growth;   // max Re eigenvalue at q
    int m_star = 0;               // argmax growth
    double q_star = 0.0;
    bool unstable = false;        // some m >= 1 grows
};

// Growth rate of a single wavenumber q.
double growth_rate(const ModelParams& p, double q);

// Scan modes m = 0..m_max on a domain of length L. p.k is ignored.
DispersionReport dispersion_scan(const ModelParams& p, double L, int m_max);

// Critical chemotactic sensitivity above which some continuous wavenumber
// grows: chi0* = d_n + r d_c + 2 sqrt(r d_n d_c), attained at
// q*^2 = sqrt(r / (d_n d_c)).
double critical_chi0(double d_n, double d_c, double r);

}  // namespace turinv
