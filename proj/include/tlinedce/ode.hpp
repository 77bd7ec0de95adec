#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

// Adaptive explicit Runge-Kutta integrator: the Hairer-Norsett-Wanner 8(5,3)
// scheme ("DOP853"), 12 stages, 8th-order propagation with a stabilized
// 5th/3rd-order error estimate. Chosen over lower-order embedded pairs
// because the mode-evolution acceptance bound ties Wronskian drift to
// 10*rtol, which a 5(4) pair misses at rtol = 1e-10 over the longest runs.
//
// The integrator is deliberately minimal: fixed-dimension state, no dense
// output (callers sample at accepted steps and always land exactly on the
// endpoint), forward or backward integration.

namespace tlinedce {

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time_(last_good_time) {}
    // Last time at which the state was still valid when integration stopped.
    double last_good_time() const { return last_good_time_; }

  private:
    double last_good_time_;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0;             // 0 = pick from the initial derivative
    long long max_steps = 20000000;  // accepted + rejected attempts
};

namespace dop853_detail {

// Node, stage, weight and error coefficients (Hairer's original constants).
inline constexpr double c2 = 0.526001519587677318785587544488e-01;
inline constexpr double c3 = 0.789002279381515978178381316732e-01;
inline constexpr double c4 = 0.118350341907227396726757197510e+00;
inline constexpr double c5 = 0.281649658092772603273242802490e+00;
inline constexpr double c6 = 0.333333333333333333333333333333e+00;
inline constexpr double c7 = 0.25e+00;
inline constexpr double c8 = 0.307692307692307692307692307692e+00;
inline constexpr double c9 = 0.651282051282051282051282051282e+00;
inline constexpr double c10 = 0.6e+00;
inline constexpr double c11 = 0.857142857142857142857142857142e+00;

inline constexpr double a21 = 5.26001519587677318785587544488e-2;
inline constexpr double a31 = 1.97250569845378994544595329183e-2;
inline constexpr double a32 = 5.91751709536136983633785987549e-2;
inline constexpr double a41 = 2.95875854768068491816892993775e-2;
inline constexpr double a43 = 8.87627564304205475450678981324e-2;
inline constexpr double a51 = 2.41365134159266685502369798665e-1;
inline constexpr double a53 = -8.84549479328286085344864962717e-1;
inline constexpr double a54 = 9.24834003261792003115737966543e-1;
inline constexpr double a61 = 3.7037037037037037037037037037e-2;
inline constexpr double a64 = 1.70828608729473871279604482173e-1;
inline constexpr double a65 = 1.25467687566822425016691814123e-1;
inline constexpr double a71 = 3.7109375e-2;
inline constexpr double a74 = 1.70252211019544039314978060272e-1;
inline constexpr double a75 = 6.02165389804559606850219397283e-2;
inline constexpr double a76 = -1.7578125e-2;
inline constexpr double a81 = 3.70920001185047927108779319836e-2;
inline constexpr double a84 = 1.70383925712239993810214054705e-1;
inline constexpr double a85 = 1.07262030446373284651809199168e-1;
inline constexpr double a86 = -1.53194377486244017527936158236e-2;
inline constexpr double a87 = 8.27378916381402288758473766002e-3;
inline constexpr double a91 = 6.24110958716075717114429577812e-1;
inline constexpr double a94 = -3.36089262944694129406857109825e0;
inline constexpr double a95 = -8.68219346841726006818189891453e-1;
inline constexpr double a96 = 2.75920996994467083049415600797e1;
inline constexpr double a97 = 2.01540675504778934086186788979e1;
inline constexpr double a98 = -4.34898841810699588477366255144e1;
inline constexpr double a101 = 4.77662536438264365890433908527e-1;
inline constexpr double a104 = -2.48811461997166764192642586468e0;
inline constexpr double a105 = -5.90290826836842996371446475743e-1;
inline constexpr double a106 = 2.12300514481811942347288949897e1;
inline constexpr double a107 = 1.52792336328824235832596922938e1;
inline constexpr double a108 = -3.32882109689848629194453265587e1;
inline constexpr double a109 = -2.03312017085086261358222928593e-2;
inline constexpr double a111 = -9.3714243008598732571704021658e-1;
inline constexpr double a114 = 5.18637242884406370830023853209e0;
inline constexpr double a115 = 1.09143734899672957818500254654e0;
inline constexpr double a116 = -8.14978701074692612513997267357e0;
inline constexpr double a117 = -1.85200656599969598641566180701e1;
inline constexpr double a118 = 2.27394870993505042818970056734e1;
inline constexpr double a119 = 2.49360555267965238987089396762e0;
inline constexpr double a1110 = -3.0467644718982195003823669022e0;
inline constexpr double a121 = 2.27331014751653820792359768449e0;
inline constexpr double a124 = -1.05344954667372501984066689879e1;
inline constexpr double a125 = -2.00087205822486249909675718444e0;
inline constexpr double a126 = -1.79589318631187989172765950534e1;
inline constexpr double a127 = 2.79488845294199600508499808837e1;
inline constexpr double a128 = -2.85899827713502369474065508674e0;
inline constexpr double a129 = -8.87285693353062954433549289258e0;
inline constexpr double a1210 = 1.23605671757943030647266201528e1;
inline constexpr double a1211 = 6.43392746015763530355970484046e-1;

inline constexpr double b1 = 5.42937341165687622380535766363e-2;
inline constexpr double b6 = 4.45031289275240888144113950566e0;
inline constexpr double b7 = 1.89151789931450038304281599044e0;
inline constexpr double b8 = -5.8012039600105847814672114227e0;
inline constexpr double b9 = 3.1116436695781989440891606237e-1;
inline constexpr double b10 = -1.52160949662516078556178806805e-1;
inline constexpr double b11 = 2.01365400804030348374776537501e-1;
inline constexpr double b12 = 4.47106157277725905176885569043e-2;

// 3rd-order error weights (difference against the b-sum) ...
inline constexpr double e31 = 0.244094488188976377952755905512e+00;
inline constexpr double e32 = 0.733846688281611857341361741547e+00;
inline constexpr double e33 = 0.220588235294117647058823529412e-01;
// ... and 5th-order error weights on stages 1, 6..12.
inline constexpr double e51 = 0.1312004499419488073250102996e-01;
inline constexpr double e56 = -0.1225156446376204440720569753e+01;
inline constexpr double e57 = -0.4957589496572501915214079952e+00;
inline constexpr double e58 = 0.1664377182454986536961530415e+01;
inline constexpr double e59 = -0.3503288487499736816886487290e+00;
inline constexpr double e510 = 0.3341791187130174790297318841e+00;
inline constexpr double e511 = 0.8192320648511571246570742613e-01;
inline constexpr double e512 = -0.2235530786388629525884427845e-01;

}  // namespace dop853_detail

// Integrates y' = rhs(t, y) from t0 to t1 (t1 != t0, either direction).
// rhs: void(double t, const std::array<double, Dim>& y, std::array<double, Dim>& dydt)
// observe: void(double t, const std::array<double, Dim>& y), called at t0 and
// after every accepted step; the final call is exactly at t1.
template <std::size_t Dim, class Rhs, class Observer>
void integrate_dop853(Rhs&& rhs, std::array<double, Dim>& y, double t0,
                      double t1, const OdeOptions& opt, Observer&& observe) {
    namespace d = dop853_detail;
    using State = std::array<double, Dim>;
    static_assert(Dim > 0);

    if (!(opt.rtol > 0.0) || !(opt.atol > 0.0))
        throw std::invalid_argument("integrate_dop853: rtol and atol must be positive");
    if (t1 == t0)
        throw std::invalid_argument("integrate_dop853: empty integration interval");

    const double dir = t1 > t0 ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    const double eps = std::numeric_limits<double>::epsilon();

    // Step-size controller constants (standard for this scheme).
    const double safety = 0.9;
    const double min_scale = 0.333;
    const double max_scale = 6.0;
    const double order_exp = 1.0 / 8.0;

    double t = t0;
    State f0{};
    rhs(t, y, f0);
    observe(t, y);

    // Initial step guess from the first derivative against the tolerance
    // scale; the controller corrects it within a few steps either way.
    double h;
    if (opt.h_init > 0.0) {
        h = std::min(opt.h_init, span);
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) {
            double sk = opt.atol + opt.rtol * std::abs(y[i]);
            sum += (f0[i] / sk) * (f0[i] / sk);
        }
        h = std::pow(sum / static_cast<double>(Dim), -0.0625);
        h = std::min(h, span);
        if (!std::isfinite(h) || h <= 0.0) h = 1e-6 * span;
    }

    State k1 = f0, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, k8{}, k9{}, k10{},
          k11{}, k12{}, yw{};
    bool last_rejected = false;

    for (long long step = 0; step < opt.max_steps; ++step) {
        if (h < 32.0 * eps * std::max(std::abs(t), span))
            throw IntegrationError(
                "integrate_dop853: step size underflow at t = " + std::to_string(t) +
                    " (tolerances too tight for double precision)",
                t);

        bool final_step = false;
        double hs = h;
        if (std::abs(t1 - t) <= hs) {
            hs = std::abs(t1 - t);
            final_step = true;
        }
        const double hd = dir * hs;

        // 12 stages.
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a21 * k1[i]);
        rhs(t + d::c2 * hd, yw, k2);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a31 * k1[i] + d::a32 * k2[i]);
        rhs(t + d::c3 * hd, yw, k3);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a41 * k1[i] + d::a43 * k3[i]);
        rhs(t + d::c4 * hd, yw, k4);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a51 * k1[i] + d::a53 * k3[i] + d::a54 * k4[i]);
        rhs(t + d::c5 * hd, yw, k5);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a61 * k1[i] + d::a64 * k4[i] + d::a65 * k5[i]);
        rhs(t + d::c6 * hd, yw, k6);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a71 * k1[i] + d::a74 * k4[i] + d::a75 * k5[i] +
                                 d::a76 * k6[i]);
        rhs(t + d::c7 * hd, yw, k7);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a81 * k1[i] + d::a84 * k4[i] + d::a85 * k5[i] +
                                 d::a86 * k6[i] + d::a87 * k7[i]);
        rhs(t + d::c8 * hd, yw, k8);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a91 * k1[i] + d::a94 * k4[i] + d::a95 * k5[i] +
                                 d::a96 * k6[i] + d::a97 * k7[i] + d::a98 * k8[i]);
        rhs(t + d::c9 * hd, yw, k9);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a101 * k1[i] + d::a104 * k4[i] + d::a105 * k5[i] +
                                 d::a106 * k6[i] + d::a107 * k7[i] +
                                 d::a108 * k8[i] + d::a109 * k9[i]);
        rhs(t + d::c10 * hd, yw, k10);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a111 * k1[i] + d::a114 * k4[i] + d::a115 * k5[i] +
                                 d::a116 * k6[i] + d::a117 * k7[i] +
                                 d::a118 * k8[i] + d::a119 * k9[i] +
                                 d::a1110 * k10[i]);
        rhs(t + d::c11 * hd, yw, k11);
        for (std::size_t i = 0; i < Dim; ++i)
            yw[i] = y[i] + hd * (d::a121 * k1[i] + d::a124 * k4[i] + d::a125 * k5[i] +
                                 d::a126 * k6[i] + d::a127 * k7[i] +
                                 d::a128 * k8[i] + d::a129 * k9[i] +
                                 d::a1210 * k10[i] + d::a1211 * k11[i]);
        rhs(t + hd, yw, k12);

        // 8th-order combination and the two embedded error estimates.
        State ksum{};
        double err3 = 0.0, err5 = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) {
            ksum[i] = d::b1 * k1[i] + d::b6 * k6[i] + d::b7 * k7[i] +
                      d::b8 * k8[i] + d::b9 * k9[i] + d::b10 * k10[i] +
                      d::b11 * k11[i] + d::b12 * k12[i];
            yw[i] = y[i] + hd * ksum[i];
            double sk = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(yw[i]));
            double e3 = ksum[i] - d::e31 * k1[i] - d::e32 * k9[i] - d::e33 * k12[i];
            double e5 = d::e51 * k1[i] + d::e56 * k6[i] + d::e57 * k7[i] +
                        d::e58 * k8[i] + d::e59 * k9[i] + d::e510 * k10[i] +
                        d::e511 * k11[i] + d::e512 * k12[i];
            err3 += (e3 / sk) * (e3 / sk);
            err5 += (e5 / sk) * (e5 / sk);
        }
        double denom = std::sqrt(static_cast<double>(Dim) * (err5 + 0.01 * err3));
        double err = denom > 0.0 ? std::abs(hd) * err5 / denom : 0.0;
        if (!std::isfinite(err))
            throw IntegrationError(
                "integrate_dop853: non-finite error estimate at t = " + std::to_string(t),
                t);

        if (err <= 1.0) {
            t = final_step ? t1 : t + hd;
            y = yw;
            rhs(t, y, k1);
            observe(t, y);
            if (final_step) return;

            double scale = err == 0.0
                               ? max_scale
                               : std::clamp(safety * std::pow(err, -order_exp),
                                            min_scale, max_scale);
            if (last_rejected) scale = std::min(scale, 1.0);
            h = hs * scale;
            last_rejected = false;
        } else {
            h = hs * std::max(safety * std::pow(err, -order_exp), min_scale);
            last_rejected = true;
        }
    }
    throw IntegrationError(
        "integrate_dop853: exceeded " + std::to_string(opt.max_steps) +
            " step attempts at t = " + std::to_string(t),
        t);
}

}  // namespace tlinedce
