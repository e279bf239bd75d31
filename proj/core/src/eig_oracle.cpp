#include "cknlab/eig_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "cknlab/errors.hpp"
#include "cknlab/extremals.hpp"
#include "cknlab/spectrum.hpp"

namespace cknlab {

namespace {

constexpr double kUpper = 1e3;
constexpr double kTol = 1e-10;

double sech2(double x) {
    x = std::abs(x);
    const double e = std::exp(-2.0 * x);
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

struct Pencil {
    double off = 0.0;             // off-diagonal of A
    std::vector<double> diag_a;   // diagonal of A
    std::vector<double> diag_b;   // diagonal of B
    std::vector<double> t;        // interior nodes
};

Pencil build(const CknParams& P, int i, const GridSpec& g) {
    const double h = g.h(), tau = P.tau(i);
    Pencil pc;
    const int n = g.M - 2;
    pc.off = -1.0 / (h * h);
    pc.diag_a.assign(n, 2.0 / (h * h) + tau);
    pc.diag_b.resize(n);
    pc.t.resize(n);
    for (int k = 0; k < n; ++k) {
        pc.t[k] = g.t(k + 1);
        pc.diag_b[k] = P.beta * sech2(P.gamma * pc.t[k]);
    }
    return pc;
}

long count_below(const Pencil& pc, double lambda) {
    const double off2 = pc.off * pc.off;
    long neg = 0;
    double q = 1.0;
    for (std::size_t k = 0; k < pc.diag_a.size(); ++k) {
        const double a = pc.diag_a[k] - lambda * pc.diag_b[k];
        q = (k == 0) ? a : a - off2 / q;
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++neg;
    }
    return neg;
}

double bisect_kth(const Pencil& pc, int k) {
    double lo = 0.0, hi = kUpper;
    if (count_below(pc, hi) <= k) throw NumericalError("generalized_eigenvalues: no bracket in (0, 1e3)");
    while (hi - lo > kTol * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(pc, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_on(const Pencil& pc, int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) out[k] = bisect_kth(pc, k);
    return out;
}

using SpMat = Eigen::SparseMatrix<double>;

SpMat shifted(const Pencil& pc, double sigma) {
    const int n = static_cast<int>(pc.diag_a.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * n);
    for (int k = 0; k < n; ++k) {
        trip.emplace_back(k, k, pc.diag_a[k] - sigma * pc.diag_b[k]);
        if (k + 1 < n) {
            trip.emplace_back(k, k + 1, pc.off);
            trip.emplace_back(k + 1, k, pc.off);
        }
    }
    SpMat m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Eigen::VectorXd apply_a(const Pencil& pc, const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double v = pc.diag_a[k] * x[k];
        if (k > 0) v += pc.off * x[k - 1];
        if (k + 1 < n) v += pc.off * x[k + 1];
        y[k] = v;
    }
    return y;
}

// Eigenvector for a bisected eigenvalue by two steps of shifted inverse iteration.
Eigen::VectorXd eigenvector(const Pencil& pc, double lambda) {
    const int n = static_cast<int>(pc.diag_a.size());
    Eigen::SparseLU<SpMat> lu;
    lu.compute(shifted(pc, lambda * (1.0 - 1e-9)));
    if (lu.info() != Eigen::Success) throw NumericalError("rayleigh_gap_check: factorization failed");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    const Eigen::Map<const Eigen::VectorXd> b(pc.diag_b.data(), n);
    for (int it = 0; it < 3; ++it) {
        x = lu.solve(b.cwiseProduct(x)).eval();
        x /= x.norm();
    }
    return x;
}

}  // namespace

GridSpec default_oracle_grid(const CknParams& P, int i) {
    GridSpec g;
    g.T = std::max(30.0 / P.gamma, 40.0 / P.d);
    // 1/sqrt(beta) bounds the wavelength inside the sech^2 well
    const double h = std::min({1.0 / P.gamma, 1.0 / std::sqrt(P.tau(i)), 1.0 / std::sqrt(P.beta)}) / 80.0;
    g.M = std::max(2000, static_cast<int>(std::ceil(2.0 * g.T / h)) + 1);
    return g;
}

void validate_oracle_grid(const CknParams& P, const GridSpec& g) {
    if (g.M < 2000) throw DomainError("GridSpec: M >= 2000 required");
    if (g.T < 30.0 / P.gamma * (1.0 - 1e-12)) throw DomainError("GridSpec: T >= 30/gamma required");
}

long sturm_count(const CknParams& P, int i, const GridSpec& g, double lambda) {
    return count_below(build(P, i, g), lambda);
}

std::vector<double> generalized_eigenvalues(const CknParams& P, int i, int count, const GridSpec& g,
                                            bool richardson) {
    if (count < 1 || count > 6) throw DomainError("generalized_eigenvalues: 1 <= count <= 6");
    validate_oracle_grid(P, g);
    std::vector<double> coarse = eigenvalues_on(build(P, i, g), count);
    if (!richardson) return coarse;
    GridSpec fine = g;
    fine.M = 2 * g.M - 1;
    const std::vector<double> f = eigenvalues_on(build(P, i, fine), count);
    for (int k = 0; k < count; ++k) coarse[k] = (4.0 * f[k] - coarse[k]) / 3.0;
    return coarse;
}

GridSpec default_rayleigh_grid(const CknParams& P) {
    GridSpec g;
    g.T = std::max(30.0 / P.gamma, 40.0 / P.d);
    const double h = std::min(1.0 / P.gamma, 1.0 / std::sqrt(P.tau(2))) / 20.0;
    g.M = std::max(2000, static_cast<int>(std::ceil(2.0 * g.T / h)) + 1);
    return g;
}

RayleighGapReport rayleigh_gap_check(const CknParams& P, const GridSpec& g) {
    validate_oracle_grid(P, g);
    const ExtremalProfile prof(P);
    RayleighGapReport rep;
    rep.minimum = 1e300;
    const int per_mode[3] = {6, 3, 3};
    for (int i = 0; i <= 2; ++i) {
        const Pencil pc = build(P, i, g);
        const int n = static_cast<int>(pc.t.size());
        const int k = per_mode[i];
        const std::vector<double> lam = eigenvalues_on(pc, k);
        Eigen::MatrixXd X(n, k);
        for (int c = 0; c < k; ++c) X.col(c) = eigenvector(pc, lam[c]);

        Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(k, k);
        if (i == 0) {
            Eigen::VectorXd psi(n), dpsi(n);
            for (int q = 0; q < n; ++q) {
                psi[q] = prof.psi(pc.t[q]);
                dpsi[q] = prof.psi_prime(pc.t[q]);
            }
            Eigen::MatrixXd C(2, k);
            C.row(0) = (apply_a(pc, psi).transpose() * X);
            C.row(1) = (apply_a(pc, dpsi).transpose() * X);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
            Z = svd.matrixV().rightCols(k - 2);
        }
        Eigen::MatrixXd AX(n, k);
        for (int c = 0; c < k; ++c) AX.col(c) = apply_a(pc, X.col(c));
        const Eigen::Map<const Eigen::VectorXd> bd(pc.diag_b.data(), n);
        const Eigen::MatrixXd Ahat = Z.transpose() * (X.transpose() * AX) * Z;
        const Eigen::MatrixXd Bhat = Z.transpose() * (X.transpose() * bd.asDiagonal() * X) * Z;
        // smallest mu in A y = mu B y  <=>  largest nu in B y = nu A y (A positive definite)
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Bhat + Bhat.transpose()),
                                                                      0.5 * (Ahat + Ahat.transpose()));
        if (es.info() != Eigen::Success) throw NumericalError("rayleigh_gap_check: dense eigensolve failed");
        const Eigen::Index top = es.eigenvalues().size() - 1;
        const double nu = es.eigenvalues()[top];
        const double value = 1.0 - nu;
        rep.mode_minima.push_back(value);
        if (value < rep.minimum) {
            rep.minimum = value;
            rep.mode = i;
            rep.mu = 1.0 / nu;
            const Eigen::VectorXd x = X * (Z * es.eigenvectors().col(top));
            rep.minimizer.assign(x.data(), x.data() + n);
            Eigen::VectorXd ref(n);
            for (int q = 0; q < n; ++q) ref[q] = (i == 1) ? rho_10_radial(P, pc.t[q]) : rho_02(P, pc.t[q]);
            const double xa = x.dot(apply_a(pc, x)), ra = ref.dot(apply_a(pc, ref));
            rep.cosine = (i == 2) ? 0.0 : std::abs(x.dot(apply_a(pc, ref))) / std::sqrt(xa * ra);
        }
    }
    return rep;
}

}  // namespace cknlab
