#include "lppl/linear.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lppl/error.hpp"

namespace lppl {

namespace {

enum class Failure { None, TooShort, Domain, Singular };

double dot(const double* __restrict a, const double* __restrict b, std::size_t n) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void subtract_scaled(double* __restrict v, const double* __restrict q, double c, std::size_t n) {
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
}

// Thin QR of the n x 4 design matrix by modified Gram-Schmidt with one
// reorthogonalization pass, then back substitution. The design matrix is
// rebuilt on every call, so the column buffers are kept per thread.
Failure solve(std::span<const double> values, double tc, double m, double omega,
              double condition_limit, LinearFit& out) {
    const std::size_t n = values.size();
    if (n < 5) return Failure::TooShort;
    if (!(tc > static_cast<double>(n - 1)) || !std::isfinite(tc)) return Failure::Domain;

    thread_local std::vector<double> storage;
    storage.resize(8 * n);
    double* x[4] = {storage.data(), storage.data() + n, storage.data() + 2 * n,
                    storage.data() + 3 * n};
    double* q[4] = {storage.data() + 4 * n, storage.data() + 5 * n, storage.data() + 6 * n,
                    storage.data() + 7 * n};

    for (std::size_t i = 0; i < n; ++i) {
        const double log_dt = std::log(tc - static_cast<double>(i));
        const double f = std::exp(m * log_dt);
        const double arg = omega * log_dt;
        x[0][i] = 1.0;
        x[1][i] = f;
        x[2][i] = f * std::cos(arg);
        x[3][i] = f * std::sin(arg);
    }

    std::array<double, 4> norm{};
    Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
    for (int j = 0; j < 4; ++j) {
        norm[j] = std::sqrt(dot(x[j], x[j], n));
        if (!(norm[j] > 0.0) || !std::isfinite(norm[j])) return Failure::Singular;
        double* v = q[j];
        for (std::size_t i = 0; i < n; ++i) v[i] = x[j][i];
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                const double c = dot(q[k], v, n);
                r(k, j) += c;
                subtract_scaled(v, q[k], c, n);
            }
        }
        const double len = std::sqrt(dot(v, v, n));
        if (!(len > 0.0)) return Failure::Singular;
        r(j, j) = len;
        for (std::size_t i = 0; i < n; ++i) v[i] /= len;
    }

    // Condition number of the column-equilibrated matrix X D^-1 equals that of R D^-1.
    Eigen::Matrix4d r_scaled = r;
    for (int j = 0; j < 4; ++j) r_scaled.col(j) /= norm[j];
    const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4d>(r_scaled).singularValues();
    const double condition = sv[3] > 0.0 ? sv[0] / sv[3] : INFINITY;
    if (!(condition <= condition_limit)) return Failure::Singular;

    Eigen::Vector4d qtp;
    for (int k = 0; k < 4; ++k) qtp[k] = dot(q[k], values.data(), n);
    const Eigen::Vector4d beta = r.triangularView<Eigen::Upper>().solve(qtp);

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = values[i] - (beta[0] + beta[1] * x[1][i] + beta[2] * x[2][i] +
                                      beta[3] * x[3][i]);
        ssr += e * e;
    }

    out.A = beta[0];
    out.B = beta[1];
    out.C1 = beta[2];
    out.C2 = beta[3];
    out.ssr = ssr;
    out.condition = condition;
    return Failure::None;
}

}  // namespace

LinearFit solve_linear(std::span<const double> values, double tc, double m, double omega,
                       double condition_limit) {
    LinearFit fit;
    switch (solve(values, tc, m, omega, condition_limit, fit)) {
        case Failure::None: return fit;
        case Failure::TooShort:
            throw Error(ErrorKind::InvalidArgument, "solve_linear needs at least 5 observations");
        case Failure::Domain:
            throw Error(ErrorKind::Domain, "solve_linear requires tc beyond the last index");
        case Failure::Singular:
            throw Error(ErrorKind::RankDeficient,
                        "design matrix numerically singular at tc=" + std::to_string(tc) +
                            " m=" + std::to_string(m) + " omega=" + std::to_string(omega));
    }
    return fit;
}

std::optional<LinearFit> try_solve_linear(std::span<const double> values, double tc, double m,
                                          double omega, double condition_limit) {
    LinearFit fit;
    if (solve(values, tc, m, omega, condition_limit, fit) != Failure::None) return std::nullopt;
    return fit;
}

}  // namespace lppl
