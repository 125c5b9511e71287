#pragma once

#include <array>
#include <vector>

#include "landau/spectral.hpp"

namespace landau {

using Tensor3 = std::array<std::array<double, 3>, 3>;

// Observables of one state. All integrals use the rectangle rule h^3 sum_j.
struct MomentSet {
    double t = 0.0;
    double rho = 0.0;
    Vec3 u{};
    double temp = 0.0;
    Tensor3 P{};  // pressure tensor, integral of (v-u)(v-u)^T f
    double m4 = 0.0;  // integral of |v|^4 f
    double entropy = 0.0;
    double rel_entropy = 0.0;
    int nonpos_count = 0;  // nodes with f <= 0, skipped in the entropy sums
};

/// Fills rho, u, temp, P and m4. Throws DegenerateStateError if rho <= 0.
MomentSet moments(const DistributionField& f);

struct EntropyValue {
    double value = 0.0;
    int nonpos_count = 0;
};

// h^3 sum of f log f over nodes with f > 0.
EntropyValue entropy(const DistributionField& f);

// h^3 sum of f log(f/m) over nodes with f > 0; m must be positive everywhere.
EntropyValue relative_entropy(const DistributionField& f, const DistributionField& m);

/// moments() plus entropy and relative entropy against `reference`.
MomentSet measure(const DistributionField& f, const DistributionField& reference, double t);

struct ErrorNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

ErrorNorms error_norms(const DistributionField& f, const DistributionField& ref);

/// h sum_{j_z} f, on the (x, y) lattice in row-major order with shifted indices.
std::vector<double> projection_xy(const DistributionField& f);

/// f(0, 0, v_z) for every j_z.
std::vector<double> cross_section_z(const DistributionField& f);

}  // namespace landau
