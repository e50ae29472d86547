#include "csf/analysis.hpp"

#include "csf/errors.hpp"
#include "csf/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace csf {

const char* to_string(Posture p) {
    switch (p) {
    case Posture::Supine: return "supine";
    case Posture::Upright: return "upright";
    default: return "mixed";
    }
}

double sobolev_surrogate_norm(const Field& b, const Grid& grid) {
    const Field b1 = ddz(b, grid);
    const Field b2 = d2dz2(b, grid);
    const double n0 = l2_norm(b, grid);
    const double n1 = l2_norm(b1, grid);
    const double n2 = l2_norm(b2, grid);
    return std::sqrt(n0 * n0 + n1 * n1 + n2 * n2);
}

ExistenceReport check_conditions(const Field& f, const Field& b,
                                 const Grid& grid, const PhysConstants& c,
                                 double C_hat1, double t_final) {
    if (!(C_hat1 > 0.0)) throw InvalidParams("check_conditions: C_hat1 must be positive");
    if (!(t_final > 0.0)) throw InvalidParams("check_conditions: t_final must be positive");
    ExistenceReport rep;

    const Field fp = ddz(f, grid);
    const double min_fp = *std::min_element(fp.begin(), fp.end());
    rep.cond_slope.margin = min_fp + c.beta / c.rho;
    rep.cond_slope.pass = rep.cond_slope.margin >= 0.0;

    const bool all_neg = std::all_of(b.begin(), b.end(), [](double v) { return v < 0.0; });
    const bool all_pos = std::all_of(b.begin(), b.end(), [](double v) { return v > 0.0; });
    rep.posture = all_neg ? Posture::Upright
                          : all_pos ? Posture::Supine : Posture::Mixed;

    const RiccatiParams rp = RiccatiParams::from_constants(c);
    for (double v : b) {
        const auto t0 = blowup_time(v, rp);
        if (t0 && (!rep.predicted_blowup || *t0 < *rep.predicted_blowup))
            rep.predicted_blowup = *t0;
    }
    double horizon = t_final;
    if (rep.predicted_blowup)
        horizon = std::min(horizon, 0.99 * *rep.predicted_blowup);

    rep.eps = 1.0;
    if (rep.posture != Posture::Upright) {
        constexpr int kLadder = 64;
        for (int k = 0; k < kLadder; ++k) {
            const double t = horizon * k / (kLadder - 1);
            const double e = std::exp(rp.C * t);
            for (double v : b)
                rep.eps = std::min(rep.eps, 1.0 + rp.K_over_RC * v * (1.0 - e));
        }
    }
    rep.b_norm = sobolev_surrogate_norm(b, grid);
    const double base_bound = c.beta / (4.0 * C_hat1 * c.rho);
    rep.pressure_bound =
        rep.posture == Posture::Upright ? base_bound : rep.eps * base_bound;
    rep.cond_pressure.margin = rep.pressure_bound - rep.b_norm;
    rep.cond_pressure.pass = rep.cond_pressure.margin >= 0.0;

    const PzzBound pb = pzz_bound(b, rp, grid, c, horizon);
    rep.sup_pzz = pb.sup;
    rep.cond_pzz.margin = c.beta / (4.0 * c.rho) - pb.sup;
    rep.cond_pzz.pass = pb.pass;
    return rep;
}

namespace {

// Cash-Karp embedded 4(5) pair for the scalar characteristic equation.
constexpr double kCkC[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double kCkA[6][5] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {3.0 / 10, -9.0 / 10, 6.0 / 5},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096},
};
constexpr double kCkB5[6] = {37.0 / 378,     0.0, 250.0 / 621,
                             125.0 / 594,    0.0, 512.0 / 1771};
constexpr double kCkB4[6] = {2825.0 / 27648,  0.0,           18575.0 / 48384,
                             13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

} // namespace

CharacteristicResult characteristic_riccati(
    double omega0, const std::function<double(double)>& q,
    const PhysConstants& c, double T, PzzCoeff coeff) {
    if (!(T > 0.0)) throw InvalidParams("characteristic_riccati: T must be positive");
    const double p = c.beta / c.rho;
    const double qc = coeff == PzzCoeff::Printed ? p : 1.0 / c.rho;
    auto f = [&](double t, double w) { return -w * w - p * w - qc * q(t); };

    constexpr double kDivergence = 1e10;
    constexpr double kAtol = 1e-12;
    constexpr double kRtol = 1e-9;
    constexpr double kHmin = 1e-16;

    CharacteristicResult res;
    double t = 0.0, w = omega0;
    res.samples.emplace_back(t, w);
    double h = std::min(T, 1e-3);
    while (t < T) {
        h = std::min(h, T - t);
        double k[6];
        k[0] = f(t, w);
        bool finite = std::isfinite(k[0]);
        for (int i = 1; i < 6 && finite; ++i) {
            double wi = w;
            for (int j = 0; j < i; ++j) wi += h * kCkA[i][j] * k[j];
            k[i] = f(t + kCkC[i] * h, wi);
            finite = std::isfinite(k[i]) && std::isfinite(wi);
        }
        double w5 = w, err = 0.0;
        if (finite) {
            for (int i = 0; i < 6; ++i) {
                w5 += h * kCkB5[i] * k[i];
                err += h * (kCkB5[i] - kCkB4[i]) * k[i];
            }
            finite = std::isfinite(w5);
        }
        const double sc = kAtol + kRtol * std::max(std::abs(w), std::abs(w5));
        if (finite && std::abs(err) <= sc) {
            t += h;
            w = w5;
            res.samples.emplace_back(t, w);
            if (std::abs(w) > kDivergence) {
                res.blew_up = true;
                res.t_star = t;
                return res;
            }
            h *= std::clamp(0.9 * std::pow(sc / std::max(std::abs(err), 1e-300), 0.2),
                            0.2, 5.0);
        } else {
            h *= 0.5;
            if (h < kHmin) {
                res.blew_up = true;
                res.t_star = t;
                return res;
            }
        }
    }
    res.t_star = T;
    return res;
}

double homogeneous_blowup_time(double omega0, double p) {
    if (!(p > 0.0)) throw InvalidParams("homogeneous_blowup_time: p must be positive");
    if (!(omega0 < -p))
        throw InvalidParams("homogeneous_blowup_time: requires omega0 < -p");
    return std::log(omega0 / (omega0 + p)) / p;
}

PzzBound pzz_bound(const Field& b, const RiccatiParams& rp, const Grid& grid,
                   const PhysConstants& c, double T, int num_times) {
    if (num_times < 2) throw InvalidParams("pzz_bound: num_times must be >= 2");
    PzzBound out;
    for (int k = 0; k < num_times; ++k) {
        const double t = T * k / (num_times - 1);
        const Field P = riccati_pressure(b, t, rp);
        out.sup = std::max(out.sup, max_abs(d2dz2(P, grid)));
    }
    out.pass = out.sup <= c.beta / (4.0 * c.rho);
    return out;
}

double pa_to_mmhg(double pa) { return pa / 932.54 * 7.0; }

PhysiologyReport compare_physiology(const Trajectory& traj) {
    PhysiologyReport rep;
    double peak_u = 0.0;
    double pmin = 0.0, pmax = 0.0;
    bool first = true;
    for (const State& s : traj.samples) {
        peak_u = std::max(peak_u, max_abs(s.u));
        for (double v : s.P) {
            if (first || v < pmin) pmin = v;
            if (first || v > pmax) pmax = v;
            first = false;
        }
    }
    rep.peak_velocity_mm_s = peak_u * 1000.0;
    rep.velocity_in_range = rep.peak_velocity_mm_s > rep.table.velocity_lo_mm_s &&
                            rep.peak_velocity_mm_s < rep.table.velocity_hi_mm_s;
    rep.icp_min_mmHg = pa_to_mmhg(pmin);
    rep.icp_max_mmHg = pa_to_mmhg(pmax);
    rep.icp_in_supine_range = rep.icp_min_mmHg >= rep.table.icp_supine_lo_mmHg &&
                              rep.icp_max_mmHg <= rep.table.icp_supine_hi_mmHg;
    return rep;
}

} // namespace csf
