#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uqd/correlations.hpp"
#include "uqd/entropy.hpp"
#include "uqd/optimize.hpp"
#include "uqd/partial_trace.hpp"
#include "uqd/state.hpp"

namespace uqd {

// Optimizer gaps between the projective and the enlarged POVM run worth
// recording in reports.
inline constexpr double kOutcomeGapNoise = 1e-6;

enum class DeficitDirection { left, right };

struct CorrelationReport {
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, double>> residuals;
    // Non-gating diagnostics, e.g. projective-vs-POVM optimizer gaps.
    std::vector<std::pair<std::string, double>> info;

    double max_residual() const {
        double m = 0.0;
        for (const auto& [name, r] : residuals) m = std::max(m, r);
        return m;
    }
};

namespace detail {

inline void require_parties(const StateVector& psi, int n, const char* who) {
    if (psi.layout.arity() != n)
        throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(n) + " parties");
}

struct OptVal {
    double value = 0.0;
    double outcome_gap = 0.0;
    bool dual = false;
};

// Measurement optimum under the POVM outcome policy: a positive
// cfg.outcomes pins K; zero runs both K = d (projective) and K = d^2, keeps
// the enlarged-K value and records the gap.
inline OptVal policy_opt(const DensityMatrix& rho, const std::string& side, OptSense sense,
                         const OptConfig& cfg) {
    if (cfg.outcomes > 0) return {optimize_measurement(rho, side, sense, cfg).value, 0.0, false};
    const Eigen::Index d = rho.layout.dim(rho.layout.index_of(side));
    OptConfig lo = cfg;
    lo.outcomes = static_cast<int>(d);
    OptConfig hi = cfg;
    hi.outcomes = static_cast<int>(d * d);
    const double v_lo = optimize_measurement(rho, side, sense, lo).value;
    const double v_hi = optimize_measurement(rho, side, sense, hi).value;
    return {v_hi, std::abs(v_hi - v_lo), true};
}

// Same policy for the purifier-side optimization behind E_a: K = rank vs
// rank^2.
inline OptVal policy_eoa(const DensityMatrix& rho, const OptConfig& cfg) {
    if (cfg.outcomes > 0) return {eoa_numeric(rho, cfg), 0.0, false};
    const Eigen::Index r = state_rank(rho);
    OptConfig lo = cfg;
    lo.outcomes = static_cast<int>(r);
    OptConfig hi = cfg;
    hi.outcomes = static_cast<int>(r * r);
    const double v_lo = eoa_numeric(rho, lo);
    const double v_hi = eoa_numeric(rho, hi);
    return {v_hi, std::abs(v_hi - v_lo), true};
}

inline Bits delta_u_pair(const StateVector& psi, const std::string& kept, const std::string& side,
                         const OptConfig& cfg) {
    const DensityMatrix rho = marginal(psi, {kept, side});
    return mutual_information(rho, {kept}, {side}) - policy_opt(rho, side, OptSense::minimize, cfg).value;
}

}  // namespace detail

// Left tripartite deficit: delta_u<-(A:(BC)) - delta_u<-(A<-B) - delta_u<-(A<-C),
// with the pure-split term equal to S(rho_A).
inline Bits deficit_left_tri(const StateVector& psi, const OptConfig& cfg = {}) {
    detail::require_parties(psi, 3, "deficit_left_tri");
    const auto& l = psi.layout.labels();
    const Bits s_a = von_neumann_entropy(marginal(psi, {l[0]}));
    return s_a - detail::delta_u_pair(psi, l[0], l[1], cfg) - detail::delta_u_pair(psi, l[0], l[2], cfg);
}

// Right tripartite deficit: measurements on A throughout.
inline Bits deficit_right_tri(const StateVector& psi, const OptConfig& cfg = {}) {
    detail::require_parties(psi, 3, "deficit_right_tri");
    const auto& l = psi.layout.labels();
    const Bits s_a = von_neumann_entropy(marginal(psi, {l[0]}));
    return s_a - detail::delta_u_pair(psi, l[1], l[0], cfg) - detail::delta_u_pair(psi, l[2], l[0], cfg);
}

// 4-partite deficit of the first party against the other three.
inline Bits deficit_quad(const StateVector& psi, DeficitDirection direction, const OptConfig& cfg = {}) {
    detail::require_parties(psi, 4, "deficit_quad");
    const auto& l = psi.layout.labels();
    Bits acc = von_neumann_entropy(marginal(psi, {l[0]}));
    for (int i = 1; i < 4; ++i) {
        const std::string& side = direction == DeficitDirection::left ? l[static_cast<std::size_t>(i)] : l[0];
        const std::string& kept = direction == DeficitDirection::left ? l[0] : l[static_cast<std::size_t>(i)];
        acc -= detail::delta_u_pair(psi, kept, side, cfg);
    }
    return acc;
}

// Measurement-free upper bound on both 4-partite deficits: half the
// interaction information of the first three parties.
inline Bits quad_upper_bound(const StateVector& psi) {
    detail::require_parties(psi, 4, "quad_upper_bound");
    const auto& l = psi.layout.labels();
    return 0.5 * interaction_information(marginal(psi, {l[0], l[1], l[2]}));
}

// Every correlation quantity and identity residual for one tripartite pure
// qubit state. Both sides of each residual come from independent code paths.
inline CorrelationReport identity_report(const StateVector& psi, const OptConfig& cfg = {}) {
    detail::require_parties(psi, 3, "identity_report");
    for (int p = 0; p < 3; ++p)
        if (psi.layout.dim(p) != 2)
            throw std::invalid_argument("identity_report: qubit parties required (formation closed form)");
    const auto& l = psi.layout.labels();
    const std::string &a = l[0], &b = l[1], &c = l[2];

    const DensityMatrix rho_ab = marginal(psi, {a, b});
    const DensityMatrix rho_ac = marginal(psi, {a, c});
    const DensityMatrix rho_bc = marginal(psi, {b, c});

    const Bits s_a = von_neumann_entropy(marginal(psi, {a}));
    const Bits s_b = von_neumann_entropy(marginal(psi, {b}));
    const Bits s_c = von_neumann_entropy(marginal(psi, {c}));
    const Bits s_ab = von_neumann_entropy(rho_ab);
    const Bits s_bc = von_neumann_entropy(rho_bc);

    const Bits i_ab = mutual_information(rho_ab, {a}, {b});
    const Bits i_ac = mutual_information(rho_ac, {a}, {c});
    const Bits i_bc = mutual_information(rho_bc, {b}, {c});
    const Bits cond_a_b = s_ab - s_b;  // S(A|B)
    const Bits cond_b_c = s_bc - s_c;  // S(B|C)

    using detail::policy_eoa;
    using detail::policy_opt;
    const detail::OptVal j_ab = policy_opt(rho_ab, b, OptSense::maximize, cfg);
    const detail::OptVal j_cb = policy_opt(rho_bc, b, OptSense::maximize, cfg);
    const detail::OptVal eu_ab = policy_opt(rho_ab, b, OptSense::minimize, cfg);
    const detail::OptVal eu_cb = policy_opt(rho_bc, b, OptSense::minimize, cfg);
    const detail::OptVal eu_ac = policy_opt(rho_ac, c, OptSense::minimize, cfg);
    const detail::OptVal eu_ba = policy_opt(rho_ab, a, OptSense::minimize, cfg);
    const detail::OptVal eu_ca = policy_opt(rho_ac, a, OptSense::minimize, cfg);
    const detail::OptVal ea_ac = policy_eoa(rho_ac, cfg);
    const detail::OptVal ea_ab = policy_eoa(rho_ab, cfg);
    const detail::OptVal ea_bc = policy_eoa(rho_bc, cfg);
    const Bits ef_ac = eof_wootters(rho_ac);

    const Bits d_ab = i_ab - j_ab.value;
    const Bits d_cb = i_bc - j_cb.value;
    const Bits du_ab = i_ab - eu_ab.value;
    const Bits du_cb = i_bc - eu_cb.value;
    const Bits du_ac = i_ac - eu_ac.value;
    const Bits du_ba = i_ab - eu_ba.value;
    const Bits du_ca = i_ac - eu_ca.value;

    const Bits def_l = s_a - du_ab - du_ac;
    const Bits def_l_gap = eu_ab.value - ea_ab.value;
    const Bits def_r = s_a - du_ba - du_ca;
    const Bits def_r_mi = i_bc - 2.0 * ea_bc.value;
    const Bits def_r_gap = eu_ba.value - du_ba;

    CorrelationReport rep;
    const auto pair_name = [](const char* q, const std::string& kept, const std::string& side) {
        return std::string(q) + "(" + kept + "<-" + side + ")";
    };
    const auto sym_name = [](const char* q, const std::string& x, const std::string& y) {
        return std::string(q) + "(" + x + "," + y + ")";
    };
    rep.values = {
        {"S(" + a + ")", s_a},
        {"S(" + b + ")", s_b},
        {"S(" + c + ")", s_c},
        {sym_name("I", a, b), i_ab},
        {sym_name("I", a, c), i_ac},
        {sym_name("I", b, c), i_bc},
        {"S(" + a + "|" + b + ")", cond_a_b},
        {"S(" + b + "|" + c + ")", cond_b_c},
        {pair_name("J", a, b), j_ab.value},
        {pair_name("J", c, b), j_cb.value},
        {pair_name("D", a, b), d_ab},
        {pair_name("D", c, b), d_cb},
        {pair_name("Eu", a, b), eu_ab.value},
        {pair_name("Eu", c, b), eu_cb.value},
        {pair_name("Eu", a, c), eu_ac.value},
        {pair_name("Eu", b, a), eu_ba.value},
        {pair_name("Eu", c, a), eu_ca.value},
        {pair_name("du", a, b), du_ab},
        {pair_name("du", c, b), du_cb},
        {pair_name("du", a, c), du_ac},
        {pair_name("du", b, a), du_ba},
        {pair_name("du", c, a), du_ca},
        {sym_name("Ef", a, c), ef_ac},
        {sym_name("Ea", a, c), ea_ac.value},
        {sym_name("Ea", a, b), ea_ab.value},
        {sym_name("Ea", b, c), ea_bc.value},
        {"defL(def)", def_l},
        {"defL(gap)", def_l_gap},
        {"defR(def)", def_r},
        {"defR(mi)", def_r_mi},
        {"defR(gap)", def_r_gap},
    };
    rep.residuals = {
        {"koashi_winter", std::abs(j_ab.value + ef_ac - s_a)},
        {"buscemi_gour_kim", std::abs(eu_ab.value + ea_ac.value - s_a)},
        {"discord_gap", std::abs((du_ab - d_ab) - (ea_ac.value - ef_ac))},
        {"uq_discord_shift", std::abs(du_ab - du_cb - cond_b_c)},
        {"discord_shift", std::abs(d_ab - d_cb - cond_b_c)},
        {"uq_discord_eoa", std::abs(du_ab - ea_ac.value + cond_a_b)},
        {"ue_eoa_gap_symmetry", std::abs((eu_ab.value - ea_ab.value) - (eu_ac.value - ea_ac.value))},
        {"ue_discord_gap_symmetry", std::abs((eu_ba.value - du_ba) - (eu_ca.value - du_ca))},
        {"deficit_left_routes", std::abs(def_l - def_l_gap)},
        {"deficit_right_routes_mi", std::abs(def_r - def_r_mi)},
        {"deficit_right_routes_gap", std::abs(def_r - def_r_gap)},
        {"polygamy_left", std::max(0.0, def_l)},
        {"polygamy_right", std::max(0.0, def_r)},
    };

    const auto log_gap = [&](const std::string& name, const detail::OptVal& v) {
        if (v.dual && v.outcome_gap > kOutcomeGapNoise) rep.info.emplace_back("kgap:" + name, v.outcome_gap);
    };
    log_gap(pair_name("J", a, b), j_ab);
    log_gap(pair_name("J", c, b), j_cb);
    log_gap(pair_name("Eu", a, b), eu_ab);
    log_gap(pair_name("Eu", c, b), eu_cb);
    log_gap(pair_name("Eu", a, c), eu_ac);
    log_gap(pair_name("Eu", b, a), eu_ba);
    log_gap(pair_name("Eu", c, a), eu_ca);
    log_gap(sym_name("Ea", a, c), ea_ac);
    log_gap(sym_name("Ea", a, b), ea_ab);
    log_gap(sym_name("Ea", b, c), ea_bc);
    return rep;
}

// Bound check for one 4-partite pure state: both deficits against half the
// interaction information of the first three parties. Residuals are the
// bound violations, clipped at zero.
inline CorrelationReport quad_bound_report(const StateVector& psi, const OptConfig& cfg = {}) {
    detail::require_parties(psi, 4, "quad_bound_report");
    const Bits def_l = deficit_quad(psi, DeficitDirection::left, cfg);
    const Bits def_r = deficit_quad(psi, DeficitDirection::right, cfg);
    const Bits bound = quad_upper_bound(psi);

    CorrelationReport rep;
    rep.values = {{"def4L", def_l}, {"def4R", def_r}, {"half_i3", bound}};
    rep.residuals = {
        {"quad_left_bound", std::max(0.0, def_l - bound)},
        {"quad_right_bound", std::max(0.0, def_r - bound)},
    };
    return rep;
}

}  // namespace uqd
