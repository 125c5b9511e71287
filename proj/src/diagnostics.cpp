#include "landau/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "landau/errors.hpp"

namespace landau {

namespace {

void require_same_grid(const DistributionField& a, const DistributionField& b) {
    if (!(a.grid == b.grid)) throw GridMismatchError("fields live on different grids");
}

}  // namespace

MomentSet moments(const DistributionField& f) {
    const auto& grid = f.grid;
    const int half = grid.n() / 2;
    const double dv = grid.cell_volume();

    double mass = 0.0;
    Vec3 flux{0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (int jx = -half; jx < half; ++jx) {
        for (int jy = -half; jy < half; ++jy) {
            for (int jz = -half; jz < half; ++jz) {
                const double w = f.values[i++];
                const Vec3 v = grid.coordinate({jx, jy, jz});
                mass += w;
                for (int a = 0; a < 3; ++a) flux[a] += v[a] * w;
            }
        }
    }
    MomentSet out;
    out.rho = dv * mass;
    if (!(out.rho > 0.0)) throw DegenerateStateError("state has non-positive mass");
    for (int a = 0; a < 3; ++a) out.u[a] = dv * flux[a] / out.rho;

    Tensor3 second{};
    double fourth = 0.0;
    i = 0;
    for (int jx = -half; jx < half; ++jx) {
        for (int jy = -half; jy < half; ++jy) {
            for (int jz = -half; jz < half; ++jz) {
                const double w = f.values[i++];
                const Vec3 v = grid.coordinate({jx, jy, jz});
                const Vec3 c{v[0] - out.u[0], v[1] - out.u[1], v[2] - out.u[2]};
                for (int a = 0; a < 3; ++a) {
                    for (int b = a; b < 3; ++b) second[a][b] += c[a] * c[b] * w;
                }
                const double r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
                fourth += r2 * r2 * w;
            }
        }
    }
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            out.P[a][b] = dv * second[a][b];
            out.P[b][a] = out.P[a][b];
        }
    }
    out.temp = (out.P[0][0] + out.P[1][1] + out.P[2][2]) / (3.0 * out.rho);
    out.m4 = dv * fourth;
    return out;
}

EntropyValue entropy(const DistributionField& f) {
    EntropyValue out;
    double sum = 0.0;
    for (double v : f.values) {
        if (v > 0.0) {
            sum += v * std::log(v);
        } else {
            ++out.nonpos_count;
        }
    }
    out.value = f.grid.cell_volume() * sum;
    return out;
}

EntropyValue relative_entropy(const DistributionField& f, const DistributionField& m) {
    require_same_grid(f, m);
    if (std::any_of(m.values.begin(), m.values.end(), [](double v) { return !(v > 0.0); })) {
        throw InvalidReferenceError("relative entropy reference must be positive at every node");
    }
    EntropyValue out;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double v = f.values[i];
        if (v > 0.0) {
            sum += v * std::log(v / m.values[i]);
        } else {
            ++out.nonpos_count;
        }
    }
    out.value = f.grid.cell_volume() * sum;
    return out;
}

MomentSet measure(const DistributionField& f, const DistributionField& reference, double t) {
    MomentSet out = moments(f);
    out.t = t;
    const auto h = entropy(f);
    const auto rel = relative_entropy(f, reference);
    out.entropy = h.value;
    out.rel_entropy = rel.value;
    out.nonpos_count = h.nonpos_count;
    return out;
}

ErrorNorms error_norms(const DistributionField& f, const DistributionField& ref) {
    require_same_grid(f, ref);
    ErrorNorms out;
    double l1 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double d = std::abs(f.values[i] - ref.values[i]);
        l1 += d;
        l2 += d * d;
        out.linf = std::max(out.linf, d);
    }
    const double dv = f.grid.cell_volume();
    out.l1 = dv * l1;
    out.l2 = std::sqrt(dv * l2);
    return out;
}

std::vector<double> projection_xy(const DistributionField& f) {
    const auto n = static_cast<std::size_t>(f.grid.n());
    std::vector<double> out(n * n, 0.0);
    for (std::size_t xy = 0; xy < n * n; ++xy) {
        double sum = 0.0;
        for (std::size_t z = 0; z < n; ++z) sum += f.values[xy * n + z];
        out[xy] = f.grid.h() * sum;
    }
    return out;
}

std::vector<double> cross_section_z(const DistributionField& f) {
    const int n = f.grid.n();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int jz = -n / 2; jz < n / 2; ++jz) out[jz + n / 2] = f[{0, 0, jz}];
    return out;
}

}  // namespace landau
