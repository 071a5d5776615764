#include "parab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace parab {

double theoretical_epsilon_interior(int n, double lambda) {
    return 0.25 * std::pow(2.0 * n * lambda, 1.0 - n);
}

double theoretical_epsilon_global(int n, double lambda) {
    return 0.125 * std::pow(2.0 * n * lambda, 1.0 - n);
}

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "gallery")
                cfg.gallery = val;
            else if (key == "n")
                cfg.n = std::stoi(val);
            else if (key == "h")
                cfg.h = std::stod(val);
            else if (key == "lambda")
                cfg.lambda = std::stod(val);
            else if (key == "k_max")
                cfg.k_max = std::stoi(val);
            else if (key == "R")
                cfg.R = std::stod(val);
            else if (key == "c0")
                cfg.c0 = std::stod(val);
            else if (key == "c_wh")
                cfg.c_wh = std::stod(val);
            else if (key == "out")
                cfg.out = val;
            else if (key == "seed")
                cfg.seed = std::stoull(val);
            else
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// fitting
// ---------------------------------------------------------------------------

EpsilonFit fit_epsilon(const std::vector<DecayRecord>& records) {
    EpsilonFit fit;
    std::vector<double> xs, ys;
    for (const auto& r : records)
        if (r.bad_measure > 0.0) {
            xs.push_back(r.k);
            ys.push_back(std::log2(r.bad_measure));
        }
    fit.used = static_cast<int>(xs.size());
    if (fit.used < 3) {
        fit.eps_emp = std::numeric_limits<double>::infinity();
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double m = xs.size();
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icept = (sy - slope * sx) / m;
    fit.eps_emp = -slope;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (icept + slope * xs[i]);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

// ---------------------------------------------------------------------------
// interior decay
// ---------------------------------------------------------------------------

namespace {

struct NormalizedInput {
    std::shared_ptr<const GridFunction> u;
    std::string note;
};

// 0 < u <= 2^-4 after u / (2^6 ||u||) + 3/64
NormalizedInput normalize_interior(const GridFunction& raw) {
    const double s = raw.sup_norm();
    std::vector<double> vals(raw.values());
    if (s > 0.0)
        for (double& v : vals) v = v / (64.0 * s) + 3.0 / 64.0;
    else
        for (double& v : vals) v = 3.0 / 64.0;
    return {std::make_shared<GridFunction>(raw.domain(), std::move(vals)),
            "normalized to (0, 2^-4] by u/(2^6 sup|u|) + 3/64"};
}

void audit(std::vector<AuditIssue>& fails, const std::string& ctx, const std::string& check,
           double value, double bound, bool ok) {
    if (!ok) fails.push_back({ctx, check, value, bound});
}

}  // namespace

DecayRunResult run_interior_decay(const ExperimentConfig& cfg) {
    DecayRunResult res;
    const int n = cfg.n;
    const PucciParams pp{cfg.lambda, n};
    const double R = cfg.paper_constants ? 32.0 : cfg.R;
    if (!(R > 2.0)) throw std::invalid_argument("run_interior_decay: R must exceed 2");
    if (cfg.paper_constants && cfg.R != 32.0)
        res.notes.push_back("paper constants: extension radius R = 32");

    const DomainPtr dom1 = make_ball_domain(n, 1.0, cfg.h);
    const GridFunction raw = gallery(cfg.gallery, pp, dom1);
    const NormalizedInput ni = normalize_interior(raw);
    res.notes.push_back(ni.note);

    // extension on B_R: min(u, (1 - |x|^2)/4) inside B_1, the paraboloid outside
    const DomainPtr domR = make_ball_domain(n, R, cfg.h);
    std::vector<double> ext(domR->node_count());
    for (NodeId i = 0; i < domR->node_count(); ++i) {
        const Vec x = domR->point(i);
        const double parab = 0.25 * (1.0 - norm2(x));
        const NodeId j = dom1->node_at(domR->lattice_index(i));
        ext[i] = j >= 0 ? std::min((*ni.u)[j], parab) : parab;
    }
    auto u = std::make_shared<GridFunction>(domR, std::move(ext));
    EnvelopeCache cache(u);

    const ContactSet B2 = ball_mask(domR, 2.0);
    const double B2_measure = B2.measure();
    const ContactSet inter = interior_mask(domR);
    const double factor = 1.0 - 0.5 * std::pow(2.0 * n * cfg.lambda, 1.0 - n);

    double prev_bad = -1.0;
    for (int k = 0; k <= cfg.k_max; ++k) {
        const double a = std::exp2(k);
        const std::string ctx = "interior k=" + std::to_string(k);
        const ContactSet& A = cache.at(a).contact;
        const ContactSet F = A.complement().intersect(inter);
        const ContactSet bad_set = F.intersect(B2);

        DecayRecord rec;
        rec.k = k;
        rec.opening = a;
        rec.kase = "interior";
        rec.F_measure = F.measure();
        rec.bad_measure = bad_set.measure();
        audit(res.failures, ctx, "F_subset_B2", rec.F_measure, rec.bad_measure,
              F.count() == bad_set.count());
        if (k > 0 && prev_bad > 0.0) {
            rec.ratio = rec.bad_measure / prev_bad;
            audit(res.failures, ctx, "step_ratio", rec.ratio, factor + kDecaySlack,
                  rec.ratio <= factor + kDecaySlack);
        }
        audit(res.failures, ctx, "cumulative_decay", rec.bad_measure,
              std::pow(factor, k) * B2_measure * (1.0 + kDecaySlack),
              rec.bad_measure <= std::pow(factor, k) * B2_measure * (1.0 + kDecaySlack));

        if (F.count() > 0) {
            const MeasureReport mr = measure_estimate(*u, a, cfg.lambda, F, 2.0, &cache);
            rec.E_interior = mr.precondition_ok;
            audit(res.failures, ctx, "lemma_bound", mr.increment, mr.bound * (1.0 - mr.slack),
                  mr.pass);
            audit(res.failures, ctx, "E_compact_in_domain", mr.max_contact_radius, R - 2.0 * cfg.h,
                  mr.precondition_ok);
            audit(res.failures, ctx, "E_inside_B2", mr.max_contact_radius, 2.0, mr.restrict_ok);
            if (!mr.precondition_ok) {
                res.records.push_back(rec);
                res.notes.push_back(ctx + ": slide left the interior, R too small; aborting");
                break;
            }
        }
        res.records.push_back(rec);
        prev_bad = rec.bad_measure;
        if (k >= 1) cache.drop(std::exp2(k - 1));
        if (rec.bad_measure == 0.0 && k > 0) break;  // decayed to nothing
    }

    res.fit = fit_epsilon(res.records);
    res.fit.eps_theory = theoretical_epsilon_interior(n, cfg.lambda);
    return res;
}

// ---------------------------------------------------------------------------
// global decay
// ---------------------------------------------------------------------------

DecayRunResult run_global_decay(const ExperimentConfig& cfg) {
    DecayRunResult res;
    const int n = cfg.n;
    const PucciParams pp{cfg.lambda, n};
    const double c0 = cfg.paper_constants ? std::exp2(-4.0 * n) : cfg.c0;
    if (!(c0 > 0.0 && c0 <= 0.125))
        throw std::invalid_argument("run_global_decay: c0 must lie in (0, 1/8]");
    if (!cfg.paper_constants)
        res.notes.push_back("desk constants: rho_k = c0 2^{-k/2} with c0 = " + format_double(c0) +
                            " (paper: 2^{-4n}), normalization 0 <= u <= c0^2");
    if (8.0 * n * c0 > std::exp2(-0.5))
        res.notes.push_back(
            "c0 too large for the paper's cumulative chain; only per-step audits apply");

    const DomainPtr dom = make_ball_domain(n, 1.0, cfg.h);
    const GridFunction raw = gallery(cfg.gallery, pp, dom);
    std::vector<double> vals(raw.values());
    const double osc = raw.osc(), lo = raw.min();
    if (osc > 0.0)
        for (double& v : vals) v = c0 * c0 * (v - lo) / osc;
    else
        for (double& v : vals) v = 0.0;
    auto u = std::make_shared<GridFunction>(dom, std::move(vals));
    EnvelopeCache cache(u);

    const ContactSet inter = interior_mask(dom);
    const double dom_measure = dom.get()->measure();
    const double factor = 1.0 - 0.25 * std::pow(2.0 * n * cfg.lambda, 1.0 - n);

    double prev_bad = -1.0;
    std::string prev_case;
    for (int k = 0; k <= cfg.k_max; ++k) {
        const double a = std::exp2(k);
        const double rho = c0 * std::exp2(-0.5 * k);
        const std::string ctx = "global k=" + std::to_string(k);
        if (rho < 2.0 * cfg.h) {
            res.notes.push_back(ctx + ": rho_k below grid resolution, stopping");
            break;
        }
        const ContactSet& A = cache.at(a).contact;
        const ContactSet notA = A.complement().intersect(inter);
        const ContactSet F = notA.intersect(ball_mask(dom, 1.0 - 4.0 * rho));

        DecayRecord rec;
        rec.k = k;
        rec.opening = a;
        rec.F_measure = F.measure();
        rec.bad_measure = notA.measure();
        if (k > 0 && prev_bad > 0.0) {
            rec.ratio = rec.bad_measure / prev_bad;
            audit(res.failures, ctx, "monotone_bad", rec.ratio, 1.0, rec.ratio <= 1.0 + 1e-12);
            if (prev_case == "case1")
                audit(res.failures, ctx, "case1_ratio", rec.ratio, factor + kDecaySlack,
                      rec.ratio <= factor + kDecaySlack);
        }

        const bool case1 = rec.F_measure >= 0.5 * rec.bad_measure;
        rec.kase = case1 ? "case1" : "case2";
        if (case1 && F.count() > 0) {
            const MeasureReport mr = measure_estimate(*u, a, cfg.lambda, F, 0.0, &cache);
            audit(res.failures, ctx, "lemma_bound", mr.increment, mr.bound * (1.0 - mr.slack),
                  mr.pass);
            audit(res.failures, ctx, "E_compact", mr.max_contact_radius, 1.0 - 2.0 * cfg.h,
                  mr.precondition_ok);
            rec.E_interior = mr.precondition_ok;
            if (mr.max_contact_radius > 1.0 - rho + 1e-9)
                res.notes.push_back(ctx + ": contact locality B_{1-rho_k} violated (max radius " +
                                    format_double(mr.max_contact_radius) + ")");
        } else if (!case1) {
            audit(res.failures, ctx, "case2_bound", rec.bad_measure,
                  8.0 * n * rho * dom_measure * (1.0 + kDecaySlack),
                  rec.bad_measure <= 8.0 * n * rho * dom_measure * (1.0 + kDecaySlack));
        }
        res.records.push_back(rec);
        prev_bad = rec.bad_measure;
        prev_case = rec.kase;
        if (k >= 1) cache.drop(std::exp2(k - 1));
        if (rec.bad_measure == 0.0 && k > 0) break;
    }

    res.fit = fit_epsilon(res.records);
    res.fit.eps_theory = theoretical_epsilon_global(n, cfg.lambda);
    return res;
}

// ---------------------------------------------------------------------------
// weak Harnack
// ---------------------------------------------------------------------------

namespace {

// grid infimum of u over nodes within |x - x0| <= rho
double ball_inf(const GridFunction& u, const Vec& x0, double rho) {
    const auto& dom = *u.domain();
    const double h = dom.spacing();
    const int m = static_cast<int>(std::ceil(rho / h)) + 1;
    LatticeIndex c{};
    for (int d = 0; d < 3; ++d)
        c[d] = static_cast<std::int32_t>(std::llround((x0[d] - dom.center()[d]) / h));
    double best = std::numeric_limits<double>::infinity();
    const double r2 = rho * rho * (1.0 + 1e-12);
    const int s2 = dom.dim() > 1 ? m : 0, s3 = dom.dim() > 2 ? m : 0;
    for (int i1 = -m; i1 <= m; ++i1)
        for (int i2 = -s2; i2 <= s2; ++i2)
            for (int i3 = -s3; i3 <= s3; ++i3) {
                const NodeId id = dom.node_at({c[0] + i1, c[1] + i2, c[2] + i3});
                if (id < 0) continue;
                if (norm2(dom.point(id) - x0) > r2) continue;
                best = std::min(best, u[id]);
            }
    return best;
}

std::vector<Vec> sublattice_b1(const GridDomain& dom) {
    std::vector<Vec> pts;
    const double s = 0.7;
    const int n = dom.dim();
    const int lim2 = n > 1 ? 1 : 0, lim3 = n > 2 ? 1 : 0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -lim2; j <= lim2; ++j)
            for (int k = -lim3; k <= lim3; ++k)
                pts.push_back({dom.center()[0] + s * i, dom.center()[1] + s * j,
                               dom.center()[2] + s * k});
    return pts;
}

}  // namespace

HarnackResult run_weak_harnack(const ExperimentConfig& cfg) {
    HarnackResult res;
    const int n = cfg.n;
    const PucciParams pp{cfg.lambda, n};
    const DomainPtr dom = make_ball_domain(n, 4.0, cfg.h);
    const GridFunction raw = gallery(cfg.gallery, pp, dom);

    const double raw_min = raw.min();
    if (raw_min < -1e-12 * std::max(1.0, raw.sup_norm()))
        throw std::invalid_argument("run_weak_harnack: input must be nonnegative on B_4");
    const NodeId center = dom->node_at({0, 0, 0});
    const double u0_raw = raw[center];
    if (!(u0_raw > 0.0)) throw std::invalid_argument("run_weak_harnack: u(0) must be positive");

    // growth lemma: inf over B_rho(x0) of u <= 2 rho^{-n lambda} u(0)
    const double nl = n * cfg.lambda;
    for (const Vec& x0 : sublattice_b1(*dom))
        for (double rho : {0.25, 0.5, 1.0}) {
            const double inf = ball_inf(raw, x0, rho);
            const double bound = 2.0 * std::pow(rho, -nl) * u0_raw;
            ++res.growth.checked;
            res.growth.max_ratio = std::max(res.growth.max_ratio, inf / bound);
            if (inf > bound * (1.0 + 1e-9)) {
                ++res.growth.violations;
                res.failures.push_back({"growth x0=(" + format_double(x0[0]) + "," +
                                            format_double(x0[1]) + ") rho=" + format_double(rho),
                                        "growth_lemma", inf, bound});
            }
        }

    // schedule and normalization
    const double c0 = cfg.paper_constants ? std::exp2(-30.0 * n) : cfg.c0;
    auto rho_k = [&](int k) { return c0 * std::exp2(-(k + 1.0) / (2.0 * nl)); };
    int k_used = cfg.k_max;
    for (int k = 0; k <= cfg.k_max; ++k)
        if (rho_k(k) < 2.0 * cfg.h) {
            k_used = k - 1;
            res.notes.push_back("rho_k below grid resolution from k=" + std::to_string(k));
            break;
        }
    if (cfg.paper_constants && k_used < 0)
        res.notes.push_back("paper schedule constant 2^{-30n} is below grid scale; "
                            "iteration is vacuous at desk resolution");

    double c_wh = cfg.c_wh;
    if (cfg.paper_constants) c_wh = std::exp2(64.0 * n * n * cfg.lambda);
    if (c_wh <= 0.0) {
        double need = 1.0;
        for (int k = 0; k <= std::max(k_used, 0); ++k)
            need = std::max(need, std::exp2(1.0 - k) * std::pow(rho_k(k), -(nl + 2.0)));
        c_wh = std::exp2(std::ceil(std::log2(2.0 * need)));
        res.notes.push_back("desk normalization constant C_wh = 2^" +
                            format_double(std::log2(c_wh)) +
                            " (paper: 2^{64 n^2 lambda}); deviation logged");
    }
    res.c_wh_used = c_wh;

    std::vector<double> vals(raw.values());
    const double scale = 1.0 / (c_wh * u0_raw);
    for (double& v : vals) v *= scale;
    auto u = std::make_shared<GridFunction>(dom, std::move(vals));
    EnvelopeCache cache(u);

    // iterated growth bound (6.1): inf over B_rho_k(x) of 2^-k u <= rho_k^2
    for (int k = 0; k <= k_used; ++k)
        for (const Vec& x0 : sublattice_b1(*dom)) {
            const double inf = ball_inf(*u, x0, rho_k(k));
            if (std::exp2(-k) * inf > rho_k(k) * rho_k(k) * (1.0 + 1e-9))
                ++res.iterated_growth_violations;
        }
    audit(res.failures, "harnack", "iterated_growth", res.iterated_growth_violations, 0,
          res.iterated_growth_violations == 0);

    const ContactSet half = ball_mask(dom, 0.5);
    const ContactSet inter = interior_mask(dom);
    const double half_measure = half.measure();
    const double factor = 1.0 - 0.25 * std::pow(2.0 * n * cfg.lambda, 1.0 - n);

    double prev_bad = -1.0;
    std::string prev_case;
    for (int k = 0; k <= k_used; ++k) {
        const double a = std::exp2(k);
        const double rho = rho_k(k);
        const std::string ctx = "harnack k=" + std::to_string(k);
        const ContactSet& A = cache.at(a).contact;

        // inclusion claim A_{2^k}(u) ∩ B_{1/2} ⊂ {u <= 2^k}
        for (NodeId i = 0; i < dom->node_count(); ++i)
            if (A.contains(i) && half.contains(i) && (*u)[i] > a * (1.0 + 1e-12))
                ++res.inclusion_violations;

        const ContactSet notA = A.complement().intersect(inter);
        const ContactSet bad_set = notA.intersect(half);
        const ContactSet F = notA.intersect(ball_mask(dom, 0.5 - 5.0 * rho));

        DecayRecord rec;
        rec.k = k;
        rec.opening = a;
        rec.F_measure = F.measure();
        rec.bad_measure = bad_set.measure();
        if (k > 0 && prev_bad > 0.0) {
            rec.ratio = rec.bad_measure / prev_bad;
            if (prev_case == "case1")
                audit(res.failures, ctx, "case1_ratio", rec.ratio, factor + kDecaySlack,
                      rec.ratio <= factor + kDecaySlack);
        }
        const bool case1 = rec.F_measure >= 0.5 * rec.bad_measure;
        rec.kase = case1 ? "case1" : "case2";
        if (case1 && F.count() > 0) {
            const MeasureReport mr = measure_estimate(*u, a, cfg.lambda, F, 0.5, &cache);
            rec.E_interior = mr.precondition_ok && mr.restrict_ok;
            audit(res.failures, ctx, "lemma_bound", mr.increment, mr.bound * (1.0 - mr.slack),
                  mr.pass);
            audit(res.failures, ctx, "E_in_half_ball", mr.max_contact_radius, 0.5, mr.restrict_ok);
            if (mr.max_contact_radius > 0.5 - rho + 1e-9)
                res.notes.push_back(ctx + ": contact locality B_{1/2-rho_k} violated");
        } else if (!case1) {
            audit(res.failures, ctx, "case2_bound", rec.bad_measure,
                  20.0 * n * rho * half_measure * (1.0 + kDecaySlack),
                  rec.bad_measure <= 20.0 * n * rho * half_measure * (1.0 + kDecaySlack));
        }
        res.records.push_back(rec);
        prev_bad = rec.bad_measure;
        prev_case = rec.kase;
        if (k >= 1) cache.drop(std::exp2(k - 1));
        if (rec.bad_measure == 0.0 && k > 0) break;
    }
    audit(res.failures, "harnack", "inclusion_A2k_u2k", res.inclusion_violations, 0,
          res.inclusion_violations == 0);

    // tail bound and the smallest constant that still passes
    const double eps = theoretical_epsilon_global(n, cfg.lambda);
    std::vector<double> in_half;
    for (NodeId i = 0; i < dom->node_count(); ++i)
        if (half.contains(i)) in_half.push_back((*u)[i]);
    std::sort(in_half.begin(), in_half.end(), std::greater<double>());
    const double u0 = (*u)[center];
    res.smallest_constant = 0.0;
    for (double t : {2.0, 4.0, 8.0}) {
        BoundRow row;
        row.t = t;
        const double thresh = c_wh * u0 * t;
        long cnt = 0;
        for (double v : in_half)
            if (v >= thresh) ++cnt;
        row.lhs = cnt * dom->cell_measure();
        row.rhs = half_measure * std::pow(t, -eps);
        row.pass = row.lhs <= row.rhs * (1.0 + 1e-12);
        audit(res.failures, "harnack tail t=" + format_double(t), "tail_bound", row.lhs, row.rhs,
              row.pass);
        res.tail.push_back(row);

        const auto budget = static_cast<std::size_t>(row.rhs / dom->cell_measure());
        if (budget < in_half.size())
            res.smallest_constant =
                std::max(res.smallest_constant, in_half[budget] / (u0 * t));
    }
    res.notes.push_back("smallest passing constant (empirical, no paper counterpart): " +
                        format_double(res.smallest_constant));

    res.fit = fit_epsilon(res.records);
    res.fit.eps_theory = eps;
    return res;
}

// ---------------------------------------------------------------------------
// theorem bound and sweep
// ---------------------------------------------------------------------------

std::vector<BoundRow> check_theorem_bound(const ThetaField& theta, const ContactSet& region,
                                          double C, double u_sup, const std::vector<double>& ts,
                                          double eps, double budget) {
    if (!(eps > 0.0)) throw std::invalid_argument("check_theorem_bound: eps must be positive");
    const auto& dom = *theta.dom;
    std::vector<BoundRow> rows;
    for (double t : ts) {
        if (t < 2.0) throw std::invalid_argument("check_theorem_bound: t must be >= 2");
        const double thresh = C * u_sup * t;
        long cnt = 0;
        for (NodeId i = 0; i < dom.node_count(); ++i) {
            if (!region.contains(i)) continue;
            const double th = theta.value[i];
            if (std::isnan(th)) continue;  // boundary band, theta not defined
            if (th > thresh) ++cnt;
        }
        BoundRow row;
        row.t = t;
        row.lhs = cnt * dom.cell_measure();
        row.rhs = budget * std::pow(t, -eps);
        row.pass = row.lhs <= row.rhs * (1.0 + 1e-12);
        rows.push_back(row);
    }
    return rows;
}

SweepResult sweep_lambda(const ExperimentConfig& cfg, const std::vector<double>& lambdas) {
    for (double l : lambdas)
        if (l < 1.0 || l > 64.0)
            throw std::invalid_argument("sweep_lambda: lambda must lie in [1, 64]");
    SweepResult res;
    res.rows.resize(lambdas.size());
    std::vector<std::vector<AuditIssue>> fails(lambdas.size());

    // entries are independent; partition them over the workers and merge in
    // input order so the output is identical for any worker count
    const int workers = std::max(1, cfg.workers);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            ExperimentConfig c = cfg;
            c.lambda = lambdas[i];
            c.gallery = "ass_block";
            const DecayRunResult run = run_interior_decay(c);
            SweepRow row;
            row.lambda = lambdas[i];
            row.eps_emp = run.fit.eps_emp;
            row.eps_theory = theoretical_epsilon_interior(cfg.n, lambdas[i]);
            row.residual = run.fit.residual;
            res.rows[i] = row;
            for (const auto& f : run.failures)
                fails[i].push_back({"lambda=" + format_double(lambdas[i]) + " " + f.context,
                                    f.check, f.value, f.bound});
            if (std::isfinite(row.eps_emp) && row.eps_emp < row.eps_theory)
                fails[i].push_back({"lambda=" + format_double(lambdas[i]), "eps_emp_ge_theory",
                                    row.eps_emp, row.eps_theory});
        }
    };
    if (workers == 1 || lambdas.size() <= 1) {
        work(0, lambdas.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (lambdas.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t b = std::min(lambdas.size(), w * chunk);
            const std::size_t e = std::min(lambdas.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    for (auto& f : fails)
        for (auto& issue : f) res.failures.push_back(issue);

    // log-log slope of eps_emp against lambda
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& row : res.rows) {
        if (!std::isfinite(row.eps_emp) || row.eps_emp <= 0.0) continue;
        const double x = std::log2(row.lambda), y = std::log2(row.eps_emp);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2) {
        res.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double icept = (sy - res.slope * sx) / m;
        double rss = 0;
        for (const auto& row : res.rows) {
            if (!std::isfinite(row.eps_emp) || row.eps_emp <= 0.0) continue;
            const double e = std::log2(row.eps_emp) - (icept + res.slope * std::log2(row.lambda));
            rss += e * e;
        }
        res.slope_residual = std::sqrt(rss / m);
    }
    return res;
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

void write_decay_csv(const std::string& path, const std::vector<DecayRecord>& recs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "k,opening,bad_measure,ratio,case,F_measure,E_interior\n";
    for (const auto& r : recs)
        out << r.k << ',' << format_double(r.opening) << ',' << format_double(r.bad_measure)
            << ',' << format_double(r.ratio) << ',' << r.kase << ','
            << format_double(r.F_measure) << ',' << (r.E_interior ? 1 : 0) << '\n';
}

void write_theta_csv(const std::string& path, const ThetaField& th) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const auto& dom = *th.dom;
    for (int d = 0; d < dom.dim(); ++d) out << 'x' << d + 1 << ',';
    out << "theta\n";
    for (NodeId i = 0; i < dom.node_count(); ++i) {
        if (std::isnan(th.value[i])) continue;
        const Vec x = dom.point(i);
        for (int d = 0; d < dom.dim(); ++d) out << format_double(x[d]) << ',';
        out << format_double(th.value[i]) << '\n';
    }
}

void write_bound_csv(const std::string& path, const std::vector<BoundRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,lhs_measure,rhs_budget,pass\n";
    for (const auto& r : rows)
        out << format_double(r.t) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
            << ',' << (r.pass ? 1 : 0) << '\n';
}

void write_sweep_csv(const std::string& path, const SweepResult& res) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "lambda,eps_emp,eps_theory,residual\n";
    for (const auto& r : res.rows)
        out << format_double(r.lambda) << ',' << format_double(r.eps_emp) << ','
            << format_double(r.eps_theory) << ',' << format_double(r.residual) << '\n';
    // fitted log-log slope archived as a trailing row
    out << "slope," << format_double(res.slope) << ",-1," << format_double(res.slope_residual)
        << '\n';
}

void write_failures_csv(const std::string& path, const std::vector<AuditIssue>& issues) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "context,check,value,bound\n";
    for (const auto& f : issues)
        out << f.context << ',' << f.check << ',' << format_double(f.value) << ','
            << format_double(f.bound) << '\n';
}

void write_decay_svg(const std::string& path, const std::vector<DecayRecord>& recs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const double W = 480, H = 320, L = 60, B = 40;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : recs)
        if (r.bad_measure > 0.0) pts.emplace_back(r.k, std::log2(r.bad_measure));
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - 10 << "' y2='" << H - B
        << "' stroke='black'/>\n";
    out << "<line x1='" << L << "' y1='10' x2='" << L << "' y2='" << H - B
        << "' stroke='black'/>\n";
    out << "<text x='" << W / 2 << "' y='" << H - 8 << "' font-size='13'>k</text>\n";
    out << "<text x='12' y='" << H / 2
        << "' font-size='13' transform='rotate(-90 12," << H / 2
        << ")'>log2 bad_measure</text>\n";
    if (!pts.empty()) {
        double x0 = pts.front().first, x1 = pts.back().first;
        if (x1 == x0) x1 = x0 + 1;
        double ylo = pts[0].second, yhi = pts[0].second;
        for (auto& p : pts) {
            ylo = std::min(ylo, p.second);
            yhi = std::max(yhi, p.second);
        }
        if (yhi == ylo) yhi = ylo + 1;
        auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - 20); };
        auto py = [&](double y) { return 10 + (yhi - y) / (yhi - ylo) * (H - B - 20); };
        out << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
        for (auto& p : pts) out << px(p.first) << ',' << py(p.second) << ' ';
        out << "'/>\n";
        for (auto& p : pts)
            out << "<circle cx='" << px(p.first) << "' cy='" << py(p.second)
                << "' r='3' fill='steelblue'/>\n";
    } else {
        out << "<text x='" << W / 2 - 40 << "' y='" << H / 2
            << "' font-size='13'>bad set empty</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace parab
