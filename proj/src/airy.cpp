#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "floydlab/errors.hpp"
#include "floydlab/specfun.hpp"

namespace floydlab {
namespace {

using Wide = long double;

constexpr double kAsymptoticThreshold = 9.0;
constexpr double kNodeSpacing = 0.5;
constexpr int kNodeCount = 37;  // nodes at -9, -8.5, ..., 9
constexpr double kMaxArgument = 200.0;

struct WideAiry {
    Wide ai, ai_prime, bi, bi_prime;
};

// Ai(0) and Ai'(0); Bi(0) and Bi'(0) are sqrt(3) times Ai(0) and -Ai'(0).
Wide ai_zero() { return 1.0L / (std::pow(3.0L, 2.0L / 3.0L) * std::tgamma(2.0L / 3.0L)); }
Wide ai_prime_zero() { return -1.0L / (std::pow(3.0L, 1.0L / 3.0L) * std::tgamma(1.0L / 3.0L)); }

struct Solution {
    Wide y, dy;
};

// Taylor expansion of a solution of y'' = z y about z0, evaluated at z0 + h.
Solution taylor_step(Wide z0, Solution s, Wide h) {
    Wide c_prev2 = s.y;      // c_{n-2}
    Wide c_prev1 = s.dy;     // c_{n-1}
    Wide c_prev3 = 0.0L;     // c_{n-3}
    Wide y = s.y + s.dy * h;
    Wide dy = s.dy;
    Wide hpow = h;           // h^{n-1}
    int quiet = 0;
    for (int n = 2; n < 200 && quiet < 3; ++n) {
        const Wide c = (z0 * c_prev2 + c_prev3) / (static_cast<Wide>(n) * (n - 1));
        const Wide dy_term = n * c * hpow;
        hpow *= h;
        const Wide y_term = c * hpow;
        y += y_term;
        dy += dy_term;
        c_prev3 = c_prev2;
        c_prev2 = c_prev1;
        c_prev1 = c;
        const Wide scale = std::fabs(y) + std::fabs(dy * h) + std::numeric_limits<Wide>::min();
        // The recurrence reaches back three terms, so require three quiet terms in a row.
        quiet = (std::fabs(y_term) + std::fabs(dy_term * h) < 1e-22L * scale) ? quiet + 1 : 0;
    }
    return {y, dy};
}

struct AsymptoticSums {
    Wide u_even, u_odd, v_even, v_odd;  // alternating-sign sums (oscillatory side)
    Wide u_alt, v_alt, u_all, v_all;    // monotone side
};

// Sums over the u_k, v_k asymptotic coefficients, truncated at the smallest term.
AsymptoticSums asymptotic_sums(Wide zeta) {
    AsymptoticSums s{1.0L, 0.0L, 1.0L, 0.0L, 1.0L, 1.0L, 1.0L, 1.0L};
    Wide u = 1.0L;
    Wide zpow = 1.0L;
    Wide last = std::numeric_limits<Wide>::max();
    for (int k = 1; k < 400; ++k) {
        u *= static_cast<Wide>(6 * k - 5) * (6 * k - 3) * (6 * k - 1) /
             (static_cast<Wide>(2 * k - 1) * 216.0L * k);
        const Wide v = -static_cast<Wide>(6 * k + 1) / (6 * k - 1) * u;
        zpow /= zeta;
        const Wide uterm = u * zpow;
        const Wide vterm = v * zpow;
        const Wide mag = std::fabs(uterm) + std::fabs(vterm);
        if (mag >= last) break;
        last = mag;
        const Wide sign_k = (k % 2 == 0) ? 1.0L : -1.0L;
        s.u_alt += sign_k * uterm;
        s.v_alt += sign_k * vterm;
        s.u_all += uterm;
        s.v_all += vterm;
        // Oscillatory sums: (-1)^j u_{2j} zeta^{-2j} and (-1)^j u_{2j+1} zeta^{-2j-1}.
        const int j = k / 2;
        const Wide sign_j = (j % 2 == 0) ? 1.0L : -1.0L;
        if (k % 2 == 0) {
            s.u_even += sign_j * uterm;
            s.v_even += sign_j * vterm;
        } else {
            s.u_odd += sign_j * uterm;
            s.v_odd += sign_j * vterm;
        }
        if (mag < 1e-21L) break;
    }
    return s;
}

WideAiry asymptotic_wide(Wide z) {
    const Wide pi = std::numbers::pi_v<Wide>;
    const Wide sqrt_pi = std::sqrt(pi);
    if (z > 0) {
        const Wide zeta = 2.0L / 3.0L * z * std::sqrt(z);
        const Wide q = std::pow(z, 0.25L);
        const AsymptoticSums s = asymptotic_sums(zeta);
        const Wide decay = std::exp(-zeta);
        const Wide growth = std::exp(zeta);
        return {decay / (2.0L * sqrt_pi * q) * s.u_alt, -q * decay / (2.0L * sqrt_pi) * s.v_alt,
                growth / (sqrt_pi * q) * s.u_all, q * growth / sqrt_pi * s.v_all};
    }
    const Wide w = -z;
    const Wide zeta = 2.0L / 3.0L * w * std::sqrt(w);
    const Wide q = std::pow(w, 0.25L);
    const AsymptoticSums s = asymptotic_sums(zeta);
    const Wide chi = zeta - pi / 4.0L;
    const Wide c = std::cos(chi);
    const Wide sn = std::sin(chi);
    return {(c * s.u_even + sn * s.u_odd) / (sqrt_pi * q),
            q * (sn * s.v_even - c * s.v_odd) / sqrt_pi,
            (-sn * s.u_even + c * s.u_odd) / (sqrt_pi * q),
            q * (c * s.v_even + sn * s.v_odd) / sqrt_pi};
}

struct NodeTable {
    std::array<WideAiry, kNodeCount> nodes{};
};

Wide node_z(int j) { return -static_cast<Wide>(kAsymptoticThreshold) + kNodeSpacing * j; }

NodeTable build_nodes() {
    NodeTable t;
    const int mid = kNodeCount / 2;  // z = 0
    const Wide h = kNodeSpacing;
    const Solution ai0{ai_zero(), ai_prime_zero()};
    const Wide sqrt3 = std::sqrt(3.0L);
    const Solution bi0{sqrt3 * ai_zero(), -sqrt3 * ai_prime_zero()};

    t.nodes[mid] = {ai0.y, ai0.dy, bi0.y, bi0.dy};

    // Oscillatory side: both solutions stay bounded, march outward from 0.
    Solution ai = ai0;
    Solution bi = bi0;
    for (int j = mid - 1; j >= 0; --j) {
        ai = taylor_step(node_z(j + 1), ai, -h);
        bi = taylor_step(node_z(j + 1), bi, -h);
        t.nodes[j] = {ai.y, ai.dy, bi.y, bi.dy};
    }
    // Bi grows with z: march outward.
    bi = bi0;
    for (int j = mid + 1; j < kNodeCount; ++j) {
        bi = taylor_step(node_z(j - 1), bi, h);
        t.nodes[j].bi = bi.y;
        t.nodes[j].bi_prime = bi.dy;
    }
    // Ai decays with z: start from the asymptotic value at the far node and march inward.
    const WideAiry far = asymptotic_wide(node_z(kNodeCount - 1));
    ai = {far.ai, far.ai_prime};
    t.nodes[kNodeCount - 1].ai = ai.y;
    t.nodes[kNodeCount - 1].ai_prime = ai.dy;
    for (int j = kNodeCount - 2; j > mid; --j) {
        ai = taylor_step(node_z(j + 1), ai, -h);
        t.nodes[j].ai = ai.y;
        t.nodes[j].ai_prime = ai.dy;
    }
    return t;
}

const NodeTable& nodes() {
    static const NodeTable table = build_nodes();
    return table;
}

AiryValues narrow(const WideAiry& w) {
    return {static_cast<double>(w.ai), static_cast<double>(w.bi), static_cast<double>(w.ai_prime),
            static_cast<double>(w.bi_prime)};
}

}  // namespace

AiryValues airy_maclaurin(double z_in) {
    const Wide z = z_in;
    const Wide z3 = z * z * z;
    // f = sum 3^k (1/3)_k z^{3k} / (3k)!, g = sum 3^k (2/3)_k z^{3k+1} / (3k+1)!
    Wide f = 1.0L, g = z, fp = 0.0L, gp = 1.0L;
    Wide tf = 1.0L, tg = z, tfp = z * z / 2.0L, tgp = 1.0L;
    fp = tfp;
    for (int k = 1; k < 600; ++k) {
        tf *= z3 / (static_cast<Wide>(3 * k - 1) * (3 * k));
        tg *= z3 / (static_cast<Wide>(3 * k) * (3 * k + 1));
        tgp *= z3 / (static_cast<Wide>(3 * k - 2) * (3 * k));
        if (k > 1) tfp *= z3 / (static_cast<Wide>(3 * k - 1) * (3 * k));
        f += tf;
        g += tg;
        gp += tgp;
        if (k > 1) fp += tfp;
        const Wide mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
        const Wide scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
        if (k > 3 && mag < 1e-22L * scale) break;
    }
    const Wide c1 = ai_zero();
    const Wide c2 = -ai_prime_zero();
    const Wide sqrt3 = std::sqrt(3.0L);
    return narrow({c1 * f - c2 * g, c1 * fp - c2 * gp, sqrt3 * (c1 * f + c2 * g),
                   sqrt3 * (c1 * fp + c2 * gp)});
}

AiryValues airy_asymptotic(double z) {
    if (!std::isfinite(z) || std::fabs(z) < 1.0) {
        throw DomainError("airy_asymptotic: requires finite |z| >= 1, got " + std::to_string(z));
    }
    return narrow(asymptotic_wide(z));
}

AiryValues airy_eval(double z) {
    if (!std::isfinite(z) || std::fabs(z) > kMaxArgument) {
        throw DomainError("airy_eval: argument outside [-200, 200]: " + std::to_string(z));
    }
    if (std::fabs(z) >= kAsymptoticThreshold) {
        const AiryValues v = airy_asymptotic(z);
        if (!std::isfinite(v.bi) || !std::isfinite(v.bi_prime)) {
            throw OverflowError("airy_eval: Bi(" + std::to_string(z) + ") overflows");
        }
        return v;
    }
    const NodeTable& table = nodes();
    const int j = static_cast<int>(std::lround((z + kAsymptoticThreshold) / kNodeSpacing));
    const Wide z0 = node_z(j);
    const Wide h = static_cast<Wide>(z) - z0;
    const WideAiry& n = table.nodes[j];
    const Solution ai = taylor_step(z0, {n.ai, n.ai_prime}, h);
    const Solution bi = taylor_step(z0, {n.bi, n.bi_prime}, h);
    return narrow({ai.y, ai.dy, bi.y, bi.dy});
}

}  // namespace floydlab
