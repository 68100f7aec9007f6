#include "aqc/exact.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <lapacke.h>

#include "aqc/kernels/kernels.hpp"

namespace aqc {

void QuadratureSpec::validate(long D) const {
    if (q < 8) throw std::invalid_argument("quadrature: order q >= 8 required");
    if (D > 6) throw std::invalid_argument("quadrature: dimensionality P*|Lambda| <= 6 required");
    for (int order : {q, q_check}) {
        double cost = 1.0;
        for (long i = 0; i < D; ++i) cost *= order;
        if (cost > 1e8) throw std::invalid_argument("quadrature: q^D exceeds the 1e8 cost guard");
    }
}

namespace {

// Gauss-Hermite nodes/weights for weight e^{-t^2} (Golub-Welsch).
void gauss_hermite(int q, std::vector<double>& nodes, std::vector<double>& weights) {
    std::vector<double> diag(q, 0.0), off(q - 1), z(static_cast<std::size_t>(q) * q);
    for (int i = 1; i < q; ++i) off[i - 1] = std::sqrt(i / 2.0);
    const lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', q, diag.data(),
                                          off.data(), z.data(), q);
    if (info != 0) throw std::runtime_error("gauss_hermite: eigensolver failed");
    nodes.resize(q);
    weights.resize(q);
    const double mu0 = std::sqrt(std::numbers::pi);
    for (int i = 0; i < q; ++i) {
        nodes[i] = diag[i];
        weights[i] = mu0 * z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
}

// Per-site free-chain precision matrix B = (beta/P)[ m (P/beta)^2 L_cycle + a I ]
// and its inverse square root, C = B^{-1/2}.
std::vector<double> chain_sqrt_cov(double m, double a, double beta, int P) {
    std::vector<double> B(static_cast<std::size_t>(P) * P, 0.0);
    const double dt = beta / P;
    const double kin = m / (dt * dt);
    for (int p = 0; p < P; ++p) {
        const int pp = (p + 1) % P;
        B[static_cast<std::size_t>(p) * P + p] += dt * (2.0 * kin + a);
        B[static_cast<std::size_t>(p) * P + pp] -= dt * kin;
        B[static_cast<std::size_t>(pp) * P + p] -= dt * kin;
    }
    std::vector<double> w(P);
    if (LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', P, B.data(), P, w.data()) != 0)
        throw std::runtime_error("chain_sqrt_cov: eigensolver failed");
    // C = V diag(1/sqrt(w)) V^T  (B now holds eigenvectors column-wise)
    std::vector<double> C(static_cast<std::size_t>(P) * P, 0.0);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            double s = 0.0;
            for (int k = 0; k < P; ++k)
                s += B[static_cast<std::size_t>(i) * P + k] *
                     B[static_cast<std::size_t>(j) * P + k] / std::sqrt(w[k]);
            C[static_cast<std::size_t>(i) * P + j] = s;
        }
    return C;
}

struct Engine {
    const ModelSpec* model;
    int P;
    long nsites, D;
    std::vector<double> C;                       // per-site B^{-1/2}, P x P
    std::vector<std::pair<long, long>> bonds;    // site pairs with J != 0
    std::vector<double> bondJ;
    std::vector<double> linear;                  // boundary-induced linear field per dim

    Engine(const ModelSpec& mdl, int P_, const std::optional<BoundaryField>& xi)
        : model(&mdl), P(P_) {
        nsites = mdl.lattice.site_count();
        D = nsites * P;
        C = chain_sqrt_cov(mdl.m, mdl.a, mdl.beta, P);
        for (long i = 0; i < nsites; ++i)
            for (long j = i + 1; j < nsites; ++j) {
                const double Jij = mdl.interaction.entry(mdl.lattice, i, j);
                if (Jij != 0.0) {
                    bonds.emplace_back(i, j);
                    bondJ.push_back(Jij);
                }
            }
        linear.assign(static_cast<std::size_t>(D), 0.0);
        if (xi) {
            const auto& big = xi->lattice;
            std::vector<bool> inside(static_cast<std::size_t>(big.site_count()), false);
            std::vector<long> big_of_lam(static_cast<std::size_t>(nsites));
            for (long i = 0; i < nsites; ++i) {
                const long bi = big.index(mdl.lattice.coord(i));
                big_of_lam[static_cast<std::size_t>(i)] = bi;
                inside[static_cast<std::size_t>(bi)] = true;
            }
            ModelSpec wide = mdl;
            wide.lattice = big;
            const double dt = mdl.beta / P;
            for (long i = 0; i < nsites; ++i)
                for (long bj = 0; bj < big.site_count(); ++bj) {
                    if (inside[static_cast<std::size_t>(bj)]) continue;
                    const double Jij = wide.interaction.entry(
                        big, big_of_lam[static_cast<std::size_t>(i)], bj);
                    if (Jij == 0.0) continue;
                    for (int p = 0; p < P; ++p)
                        linear[static_cast<std::size_t>(i * P + p)] +=
                            Jij * dt * xi->paths[static_cast<std::size_t>(bj)].values[p];
                }
        }
    }

    // interaction energy relative to the free measure (V, couplings, boundary)
    double interaction_energy(std::span<const double> x) const {
        const double dt = model->beta / P;
        double e = 0.0;
        for (long s = 0; s < nsites; ++s)
            e += dt * kern::poly_even_sum(x.subspan(static_cast<std::size_t>(s * P), P),
                                          model->potential.coeffs, model->potential.h);
        for (std::size_t b = 0; b < bonds.size(); ++b)
            e -= bondJ[b] * dt *
                 kern::dot(x.subspan(static_cast<std::size_t>(bonds[b].first * P), P),
                           x.subspan(static_cast<std::size_t>(bonds[b].second * P), P));
        e -= kern::dot(x, {linear.data(), linear.size()});
        return e;
    }

    // single pass at order q: Z and raw expectations of the functionals
    void run(int q, const std::vector<SliceFunctional>& fns, double& Z,
             std::vector<double>& vals) const {
        std::vector<double> t, wq;
        gauss_hermite(q, t, wq);
        const double wnorm = 1.0 / std::sqrt(std::numbers::pi);
        std::vector<double> z(static_cast<std::size_t>(D)), x(static_cast<std::size_t>(D));
        std::vector<int> idx(static_cast<std::size_t>(D), 0);
        Z = 0.0;
        vals.assign(fns.size(), 0.0);
        while (true) {
            double w = 1.0;
            for (long dpos = 0; dpos < D; ++dpos) {
                z[static_cast<std::size_t>(dpos)] =
                    std::numbers::sqrt2 * t[static_cast<std::size_t>(idx[static_cast<std::size_t>(dpos)])];
                w *= wq[static_cast<std::size_t>(idx[static_cast<std::size_t>(dpos)])] * wnorm;
            }
            for (long s = 0; s < nsites; ++s)
                for (int p = 0; p < P; ++p) {
                    double xv = 0.0;
                    for (int r = 0; r < P; ++r)
                        xv += C[static_cast<std::size_t>(p) * P + r] *
                              z[static_cast<std::size_t>(s * P + r)];
                    x[static_cast<std::size_t>(s * P + p)] = xv;
                }
            const double f = w * std::exp(-interaction_energy(x));
            Z += f;
            for (std::size_t k = 0; k < fns.size(); ++k) vals[k] += f * fns[k](x);
            // odometer
            long dpos = 0;
            for (; dpos < D; ++dpos) {
                if (++idx[static_cast<std::size_t>(dpos)] < q) break;
                idx[static_cast<std::size_t>(dpos)] = 0;
            }
            if (dpos == D) break;
        }
    }
};

} // namespace

ExactResult exact_expectations(const ModelSpec& model, int P,
                               const std::optional<BoundaryField>& xi,
                               const std::vector<SliceFunctional>& functionals,
                               const QuadratureSpec& quad) {
    model.validate();
    const long D = model.lattice.site_count() * P;
    quad.validate(D);
    Engine eng(model, P, xi);

    ExactResult res;
    std::vector<double> v1, v2;
    double Z1 = 0.0, Z2 = 0.0;
    eng.run(quad.q, functionals, Z1, v1);
    eng.run(quad.q_check, functionals, Z2, v2);

    res.Z = Z2;
    res.values.resize(functionals.size());
    double dis = std::abs(Z1 - Z2) / std::max(std::abs(Z2), 1e-300);
    for (std::size_t k = 0; k < functionals.size(); ++k) {
        const double a = v1[k] / Z1, b = v2[k] / Z2;
        res.values[k] = b;
        dis = std::max(dis, std::abs(a - b) / std::max({std::abs(b), 1.0}));
    }
    res.certificate.rel_disagreement = dis;
    res.certificate.ok = dis <= 1e-8;
    return res;
}

ExactResult lattice_approx_moments(const ModelSpec& model, int P,
                                   const std::optional<BoundaryField>& xi,
                                   const std::vector<Monomial>& monomials,
                                   const QuadratureSpec& quad) {
    std::vector<SliceFunctional> fns;
    fns.reserve(monomials.size());
    for (const auto& m : monomials)
        fns.push_back([m, P](std::span<const double> x) {
            double v = 1.0;
            for (const auto& f : m.factors)
                v *= std::pow(x[static_cast<std::size_t>(f.site * P + f.slice)], f.power);
            return v;
        });
    return exact_expectations(model, P, xi, fns, quad);
}

double check_fkg(const ModelSpec& model, int P, const std::optional<BoundaryField>& xi,
                 const SliceFunctional& f, const SliceFunctional& g,
                 const QuadratureSpec& quad) {
    if (model.nu != 1) throw std::invalid_argument("check_fkg: nu = 1 required");
    if (!model.interaction.ferroelectric(model.lattice))
        throw std::invalid_argument("check_fkg: ferroelectric interaction required");
    std::vector<SliceFunctional> fns{
        f, g, [&](std::span<const double> x) { return f(x) * g(x); }};
    const auto res = exact_expectations(model, P, xi, fns, quad);
    return res.values[2] - res.values[0] * res.values[1];
}

GksMargins check_gks(const ModelSpec& model, int P, std::span<const GksFactor> factors,
                     std::size_t n, const QuadratureSpec& quad) {
    if (model.nu != 1) throw std::invalid_argument("check_gks: nu = 1 required");
    if (!model.interaction.ferroelectric(model.lattice))
        throw std::invalid_argument("check_gks: ferroelectric interaction required");
    if (model.potential.h < 0.0)
        throw std::invalid_argument("check_gks: potential must have h >= 0 (form w3a)");
    auto product = [factors, P](std::size_t lo, std::size_t hi) {
        return [factors, P, lo, hi](std::span<const double> x) {
            double v = 1.0;
            for (std::size_t i = lo; i < hi; ++i)
                v *= factors[i].f(x[static_cast<std::size_t>(factors[i].site * P + factors[i].slice)]);
            return v;
        };
    };
    std::vector<SliceFunctional> fns{product(0, n), product(n, factors.size()),
                                     product(0, factors.size())};
    const auto res = exact_expectations(model, P, std::nullopt, fns, quad);
    return {res.values[0], res.values[2] - res.values[0] * res.values[1]};
}

namespace {

void require_convex_even(const ModelSpec& model) {
    if (model.potential.h != 0.0)
        throw std::invalid_argument("inequality check: h = 0 required");
    // convexity of v(t) on t >= 0: v''(t) = sum_s b_s s(s-1) t^{s-2} >= 0
    const auto& b = model.potential.coeffs;
    for (double t = 0.0; t <= 100.0; t += 0.5) {
        double v2 = 0.0, tp = 1.0;
        for (std::size_t s = 2; s <= b.size(); ++s) {
            v2 += b[s - 1] * s * (s - 1.0) * tp;
            tp *= t;
        }
        if (v2 < -1e-12)
            throw std::invalid_argument("inequality check: v(t) = V(sqrt(t)) must be convex");
    }
}

SliceFunctional point_product(std::span<const SpaceTimePoint> pts, int P) {
    std::vector<SpaceTimePoint> own(pts.begin(), pts.end());
    return [own, P](std::span<const double> x) {
        double v = 1.0;
        for (const auto& p : own) v *= x[static_cast<std::size_t>(p.site * P + p.slice)];
        return v;
    };
}

} // namespace

double check_lebowitz(const ModelSpec& model, int P,
                      const std::array<SpaceTimePoint, 4>& points,
                      const QuadratureSpec& quad) {
    require_convex_even(model);
    std::vector<SliceFunctional> fns;
    for (const auto& p : points)
        fns.push_back(point_product(std::span(&p, 1), P));
    const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& pr : pairings) {
        fns.push_back(point_product(std::array{points[static_cast<std::size_t>(pr[0])],
                                               points[static_cast<std::size_t>(pr[1])]}, P));
        fns.push_back(point_product(std::array{points[static_cast<std::size_t>(pr[2])],
                                               points[static_cast<std::size_t>(pr[3])]}, P));
    }
    fns.push_back(point_product(std::span(points.data(), 4), P));
    const auto res = exact_expectations(model, P, std::nullopt, fns, quad);
    const auto& v = res.values;
    double u = v[10];
    // connected pairs: K_ij = E[x_i x_j] - E[x_i] E[x_j]
    for (int k = 0; k < 3; ++k) {
        const auto& pr = pairings[static_cast<std::size_t>(k)];
        const double Kab = v[static_cast<std::size_t>(4 + 2 * k)] -
                           v[static_cast<std::size_t>(pr[0])] * v[static_cast<std::size_t>(pr[1])];
        const double Kcd = v[static_cast<std::size_t>(5 + 2 * k)] -
                           v[static_cast<std::size_t>(pr[2])] * v[static_cast<std::size_t>(pr[3])];
        u -= Kab * Kcd;
    }
    return u;
}

double check_gaussian_domination(const ModelSpec& model, int P,
                                 std::span<const SpaceTimePoint> points,
                                 const QuadratureSpec& quad) {
    require_convex_even(model);
    if (points.size() % 2 != 0 || points.size() > 6)
        throw std::invalid_argument("check_gaussian_domination: need 2n points, n <= 3");
    const std::size_t n2 = points.size();

    // enumerate pairings of {0..2n-1}
    std::vector<std::array<std::size_t, 6>> pairings;
    std::array<std::size_t, 6> cur{};
    std::vector<bool> used(n2, false);
    std::function<void(std::size_t)> rec = [&](std::size_t filled) {
        if (filled == n2) {
            pairings.push_back(cur);
            return;
        }
        std::size_t first = 0;
        while (used[first]) ++first;
        used[first] = true;
        for (std::size_t second = first + 1; second < n2; ++second) {
            if (used[second]) continue;
            used[second] = true;
            cur[filled] = first;
            cur[filled + 1] = second;
            rec(filled + 2);
            used[second] = false;
        }
        used[first] = false;
    };
    rec(0);

    std::vector<SliceFunctional> fns;
    fns.push_back(point_product(points, P)); // full moment
    std::vector<std::pair<std::size_t, std::size_t>> pair_index;
    auto pair_slot = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < pair_index.size(); ++k)
            if (pair_index[k] == std::make_pair(i, j)) return k + 1;
        pair_index.emplace_back(i, j);
        fns.push_back(point_product(std::array{points[i], points[j]}, P));
        return pair_index.size();
    };
    std::vector<std::vector<std::size_t>> pairing_slots;
    for (const auto& pr : pairings) {
        std::vector<std::size_t> slots;
        for (std::size_t k = 0; k < n2; k += 2) slots.push_back(pair_slot(pr[k], pr[k + 1]));
        pairing_slots.push_back(std::move(slots));
    }

    const auto res = exact_expectations(model, P, std::nullopt, fns, quad);
    double bound = 0.0;
    for (const auto& slots : pairing_slots) {
        double prod = 1.0;
        for (std::size_t s : slots) prod *= res.values[s];
        bound += prod;
    }
    return bound - res.values[0];
}

DobrushinResult dobrushin_bound(const ModelSpec& model, double delta, double b) {
    if (model.a + b <= 0.0)
        throw std::invalid_argument("dobrushin_bound: a + b > 0 required");
    DobrushinResult r;
    r.coefficient = std::exp(model.beta * delta) / (model.a + b);
    r.row_sum = j_hat_zero(model) * r.coefficient;
    r.unique = r.row_sum < 1.0;
    return r;
}

} // namespace aqc
