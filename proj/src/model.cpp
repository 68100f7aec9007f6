#include "aqc/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace aqc {

// ---- LatticeSpec ----------------------------------------------------------

void LatticeSpec::validate() const {
    if (d < 1) throw std::invalid_argument("lattice: dimension d must be positive");
    if (L < 1) throw std::invalid_argument("lattice: extent L must be positive");
}

std::vector<int> LatticeSpec::coord(long index) const {
    std::vector<int> c(d);
    const int s = side();
    for (int j = d - 1; j >= 0; --j) {
        c[j] = static_cast<int>(index % s) - L + 1; // values in (-L, L]
        index /= s;
    }
    return c;
}

long LatticeSpec::index(const std::vector<int>& c) const {
    const int s = side();
    long idx = 0;
    for (int j = 0; j < d; ++j) {
        const int cj = c[j] + L - 1;
        if (cj < 0 || cj >= s) throw std::out_of_range("lattice coordinate outside box");
        idx = idx * s + cj;
    }
    return idx;
}

double LatticeSpec::distance(long i, long j) const {
    const auto ci = coord(i), cj = coord(j);
    double sq = 0.0;
    for (int k = 0; k < d; ++k) {
        double dk = std::abs(ci[k] - cj[k]);
        if (boundary == Boundary::PeriodicTorus) dk = std::min(dk, side() - dk);
        sq += dk * dk;
    }
    return std::sqrt(sq);
}

std::vector<long> LatticeSpec::neighbors(long i) const {
    std::vector<long> out;
    auto c = coord(i);
    for (int k = 0; k < d; ++k) {
        for (int step : {-1, 1}) {
            auto cc = c;
            cc[k] += step;
            if (cc[k] < -L + 1 || cc[k] > L) {
                if (boundary != Boundary::PeriodicTorus) continue;
                cc[k] = cc[k] > L ? cc[k] - side() : cc[k] + side();
                if (cc[k] == c[k]) continue; // side()==2 wraps onto the same site
            }
            out.push_back(index(cc));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- InteractionSpec ------------------------------------------------------

void InteractionSpec::validate(const LatticeSpec& lat) const {
    switch (kind) {
    case InteractionKind::ExplicitMatrix: {
        const auto n = static_cast<std::size_t>(lat.site_count());
        if (matrix.size() != n)
            throw std::invalid_argument("interaction: matrix size does not match site count");
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix[i].size() != n)
                throw std::invalid_argument("interaction: matrix is not square");
            if (matrix[i][i] != 0.0)
                throw std::invalid_argument("interaction: nonzero diagonal J_ll");
            for (std::size_t j = 0; j < n; ++j)
                if (matrix[i][j] != matrix[j][i])
                    throw std::invalid_argument("interaction: matrix not symmetric");
        }
        break;
    }
    case InteractionKind::ExponentialDecay:
        if (alpha0 <= 0.0) throw std::invalid_argument("interaction: alpha0 must be > 0");
        break;
    case InteractionKind::PolynomialDecay:
        if (alpha0 <= lat.d)
            throw std::domain_error("interaction: polynomial decay exponent makes J_hat_0 divergent");
        break;
    case InteractionKind::NearestNeighbor:
        break;
    }
}

bool InteractionSpec::ferroelectric(const LatticeSpec&) const {
    if (kind != InteractionKind::ExplicitMatrix) return J >= 0.0;
    for (const auto& row : matrix)
        for (double v : row)
            if (v < 0.0) return false;
    return true;
}

double InteractionSpec::entry(const LatticeSpec& lat, long i, long j) const {
    if (i == j) return 0.0;
    const double r = lat.distance(i, j);
    switch (kind) {
    case InteractionKind::NearestNeighbor:
        return r == 1.0 ? J : 0.0;
    case InteractionKind::ExplicitMatrix:
        return matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    case InteractionKind::ExponentialDecay:
        return J * std::exp(-alpha0 * r);
    case InteractionKind::PolynomialDecay:
        return J * std::pow(1.0 + r, -alpha0);
    }
    return 0.0;
}

// ---- PotentialSpec --------------------------------------------------------

void PotentialSpec::validate() const {
    if (coeffs.empty())
        throw std::invalid_argument("potential: at least one coefficient required");
    if (coeffs.size() < 2)
        throw std::invalid_argument("potential: r >= 2 required by Assumption (A)");
    if (coeffs.back() <= 0.0)
        throw std::invalid_argument("potential: leading coefficient b^(r) must be > 0");
}

double PotentialSpec::v_of_t(double t) const {
    double v = 0.0;
    for (std::size_t s = coeffs.size(); s-- > 0;) v = v * t + coeffs[s];
    return v * t;
}

double PotentialSpec::value(double x) const { return v_of_t(x * x) - h * x; }

double PotentialSpec::derivative2(double x) const {
    // d^2/dx^2 sum_s b_s x^{2s}
    double acc = 0.0;
    double xp = 1.0; // x^{2s-2}
    for (std::size_t s = 1; s <= coeffs.size(); ++s) {
        acc += coeffs[s - 1] * (2.0 * s) * (2.0 * s - 1.0) * xp;
        xp *= x * x;
    }
    return acc;
}

// ---- WeightFamily ---------------------------------------------------------

double WeightFamily::w(double dist, double alpha, int d) const {
    if (kind == WeightKind::Exponential) return std::exp(-alpha * dist);
    return std::pow(1.0 + eps * dist, -alpha * d);
}

// ---- ModelSpec ------------------------------------------------------------

void ModelSpec::validate() const {
    lattice.validate();
    interaction.validate(lattice);
    potential.validate();
    if (m <= 0.0) throw std::invalid_argument("model: mass m must be > 0");
    if (a <= 0.0) throw std::invalid_argument("model: rigidity a must be > 0");
    if (beta <= 0.0) throw std::invalid_argument("model: beta must be > 0");
    if (nu < 1) throw std::invalid_argument("model: spin dimension nu must be >= 1");
}

// ---- interaction norms ----------------------------------------------------

namespace {

// sum over l' in Z^d \ {0} of f(|l'|), truncated radially once the shell
// contribution drops below rel_tail * accumulated (f must be decreasing;
// the integral comparison is implicit in the per-shell cutoff).
double infinite_row_sum(int d, const std::function<double(double)>& f,
                        double rel_tail = 1e-10) {
    double total = 0.0, prev_shell = 0.0;
    std::vector<int> c(d, 0);
    for (int R = 1; R < 100000; ++R) {
        // max-norm shell |l|_inf = R: pin axis k at +-R, axes before k stay
        // strictly inside, axes after k roam the full box (unique cover)
        double shell = 0.0;
        auto visit = [&]() {
            double sq = 0.0;
            for (int v : c) sq += static_cast<double>(v) * v;
            shell += f(std::sqrt(sq));
        };
        std::function<void(int, int)> rec = [&](int k, int pinned) {
            if (k == d) {
                visit();
                return;
            }
            if (k == pinned) {
                for (int v : {-R, R}) {
                    c[k] = v;
                    rec(k + 1, pinned);
                }
                return;
            }
            const int lim = k < pinned ? R - 1 : R;
            for (int v = -lim; v <= lim; ++v) {
                c[k] = v;
                rec(k + 1, pinned);
            }
        };
        for (int pin = 0; pin < d; ++pin) rec(0, pin);
        total += shell;
        // geometric tail bound from the shell ratio (valid for decreasing f)
        if (R >= 4 && prev_shell > 0.0 && shell < prev_shell) {
            const double rho = std::min(shell / prev_shell, 1.0 - 1e-6);
            if (shell * rho / (1.0 - rho) < rel_tail * total) return total;
        }
        // heavy polynomial tails at large d cannot reach the target by raw
        // summation; close with the geometric estimate once shells are tiny
        if (R == 99999 && prev_shell > shell && shell < 1e-6 * total) {
            const double rho = shell / prev_shell;
            return total + shell * rho / (1.0 - rho);
        }
        prev_shell = shell;
    }
    throw std::domain_error("interaction row sum did not converge (divergent series)");
}

} // namespace

double j_hat_zero(const ModelSpec& model) {
    const auto& in = model.interaction;
    const auto& lat = model.lattice;
    switch (in.kind) {
    case InteractionKind::NearestNeighbor:
        return 2.0 * lat.d * std::abs(in.J);
    case InteractionKind::ExplicitMatrix: {
        double best = 0.0;
        for (const auto& row : in.matrix) {
            double s = 0.0;
            for (double v : row) s += std::abs(v);
            best = std::max(best, s);
        }
        return best;
    }
    case InteractionKind::ExponentialDecay:
        if (in.J == 0.0) return 0.0;
        return std::abs(in.J) *
               infinite_row_sum(lat.d, [&](double r) { return std::exp(-in.alpha0 * r); });
    case InteractionKind::PolynomialDecay:
        if (in.alpha0 <= lat.d)
            throw std::domain_error("j_hat_zero: polynomial decay row sum diverges");
        if (in.J == 0.0) return 0.0;
        return std::abs(in.J) *
               infinite_row_sum(lat.d, [&](double r) { return std::pow(1.0 + r, -in.alpha0); });
    }
    return 0.0;
}

double j_hat_alpha(const ModelSpec& model, const WeightFamily& weights, double alpha) {
    const auto& in = model.interaction;
    const auto& lat = model.lattice;
    const int d = lat.d;
    auto winv = [&](double r) { return 1.0 / weights.w(r, alpha, d); };
    switch (in.kind) {
    case InteractionKind::NearestNeighbor:
        return 2.0 * d * std::abs(in.J) * winv(1.0);
    case InteractionKind::ExplicitMatrix: {
        const long n = lat.site_count();
        double best = 0.0;
        for (long i = 0; i < n; ++i) {
            double s = 0.0;
            for (long j = 0; j < n; ++j)
                if (i != j)
                    s += std::abs(in.matrix[i][j]) * winv(lat.distance(i, j));
            best = std::max(best, s);
        }
        return best;
    }
    case InteractionKind::ExponentialDecay: {
        if (in.J == 0.0) return 0.0;
        if (weights.kind == WeightKind::Exponential && alpha >= in.alpha0)
            throw std::domain_error("j_hat_alpha: weighted series diverges at this alpha");
        return std::abs(in.J) * infinite_row_sum(d, [&](double r) {
                   return std::exp(-in.alpha0 * r) * winv(r);
               });
    }
    case InteractionKind::PolynomialDecay: {
        if (in.J == 0.0) return 0.0;
        const double eff = weights.kind == WeightKind::Polynomial
                               ? in.alpha0 - alpha * d
                               : -1.0; // exponential weights always diverge here
        if (weights.kind == WeightKind::Exponential)
            throw std::domain_error("j_hat_alpha: exponential weights diverge for polynomial decay");
        if (eff <= d)
            throw std::domain_error("j_hat_alpha: weighted series diverges at this alpha");
        return std::abs(in.J) * infinite_row_sum(d, [&](double r) {
                   return std::pow(1.0 + r, -in.alpha0) * winv(r);
               });
    }
    }
    return 0.0;
}

double select_alpha(const ModelSpec& model, WeightFamily& weights, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("select_alpha: delta must be > 0");
    const double j0 = j_hat_zero(model);

    double lo = weights.alpha_lo, hi = weights.alpha_hi;
    if (weights.kind == WeightKind::Exponential &&
        model.interaction.kind == InteractionKind::ExponentialDecay)
        hi = std::min(hi, model.interaction.alpha0);
    if (weights.kind == WeightKind::Polynomial &&
        model.interaction.kind == InteractionKind::PolynomialDecay)
        hi = std::min(hi, (model.interaction.alpha0 - model.lattice.d) / model.lattice.d);
    if (!(hi > lo)) throw std::domain_error("select_alpha: empty admissible interval");

    constexpr int kGrid = 64;
    const double lo_eff = lo > 0.0 ? lo : hi / 1e6; // geometric grid needs a positive floor
    const double ratio = std::pow(hi / lo_eff, 1.0 / kGrid);

    auto admissible = [&](double alpha) {
        try {
            return j_hat_alpha(model, weights, alpha) - j0 < delta;
        } catch (const std::domain_error&) {
            return false;
        }
    };

    // largest grid point satisfying (26a); for polynomial weights shrink eps
    // until that point exists ("fix alpha and choose eps").
    const double eps0 = weights.eps;
    for (int pass = 0; pass < 40; ++pass) {
        double alpha = hi;
        for (int k = 0; k <= kGrid; ++k, alpha /= ratio)
            if (admissible(alpha)) return alpha;
        if (weights.kind != WeightKind::Polynomial) break;
        weights.eps /= 2.0;
    }
    weights.eps = eps0;
    throw std::runtime_error("select_alpha: no alpha on the search grid satisfies J_hat_alpha - J_hat_0 < delta");
}

bool harmonic_stability(const ModelSpec& model) {
    return j_hat_zero(model) < model.a;
}

} // namespace aqc
