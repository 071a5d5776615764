#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parab/envelope.hpp"
#include "parab/geometry.hpp"
#include "parab/pucci.hpp"
#include "parab/sliding.hpp"

namespace parab {

/// Per-step slack on decay factors and lemma bounds, calibrated once at
/// h = 1/128 and frozen.
inline constexpr double kDecaySlack = 0.1;

struct DecayRecord {
    int k = 0;
    double opening = 1.0;      // 2^k
    double bad_measure = 0.0;  // |B \ A_{2^k}|
    double ratio = 0.0;        // bad(k) / bad(k-1), 0 when undefined
    std::string kase;          // interior | case1 | case2
    double F_measure = 0.0;
    bool E_interior = true;
};

struct ExperimentConfig {
    std::string gallery = "cone";
    int n = 2;
    double h = 1.0 / 64.0;
    double lambda = 1.0;
    int k_max = 6;
    double R = 8.0;          // extension radius for the interior run (paper: 32)
    double c0 = 1.0 / 16.0;  // rho-schedule constant (paper: 2^-4n / 2^-30n)
    double c_wh = 0.0;       // weak-Harnack normalization; 0 selects the desk value
    std::string out = ".";
    std::uint64_t seed = 1;
    // command-line only knobs
    bool paper_constants = false;
    int workers = 1;
    bool svg = false;
};

/// Flat key = value text; keys must match the config fields exactly
/// (gallery, n, h, lambda, k_max, R, c0, c_wh, out, seed); unknown keys are
/// errors. '#' starts a comment.
ExperimentConfig parse_config_file(const std::string& path);

struct EpsilonFit {
    int used = 0;
    double eps_emp = 0.0;  // -slope of log2(bad_measure) vs k; inf when undefined
    double residual = 0.0;
    double eps_theory = 0.0;
};

/// Least-squares exponent of geometric decay over the records with positive
/// bad_measure. Fewer than 3 usable records yields the infinity flag.
EpsilonFit fit_epsilon(const std::vector<DecayRecord>& records);

struct AuditIssue {
    std::string context;
    std::string check;
    double value = 0.0;
    double bound = 0.0;
};

struct DecayRunResult {
    std::vector<DecayRecord> records;
    EpsilonFit fit;
    std::vector<AuditIssue> failures;
    std::vector<std::string> notes;
    bool pass() const { return failures.empty(); }
};

/// Interior iteration: extension min(u, (1-|x|^2)/4) on B_R, contact sets at
/// openings 2^k, measure estimate per step, per-step decay audits.
DecayRunResult run_interior_decay(const ExperimentConfig& cfg);

/// Global iteration on B_1 with shrinking radii rho_k = c0 2^{-k/2} and the
/// case-1 / case-2 dichotomy.
DecayRunResult run_global_decay(const ExperimentConfig& cfg);

struct BoundRow {
    double t = 0.0;
    double lhs = 0.0;  // measured tail set
    double rhs = 0.0;  // budget * t^-eps
    bool pass = false;
};

/// |{theta > C * u_sup * t} ∩ region| <= budget * t^-eps per t. Nodes where
/// theta is undefined (boundary band) are excluded.
std::vector<BoundRow> check_theorem_bound(const ThetaField& theta, const ContactSet& region,
                                          double C, double u_sup, const std::vector<double>& ts,
                                          double eps, double budget);

struct GrowthReport {
    long checked = 0;
    long violations = 0;
    double max_ratio = 0.0;  // max inf_{B_rho(x0)} u / (2 rho^{-n lambda} u(0))
};

struct HarnackResult {
    std::vector<DecayRecord> records;
    EpsilonFit fit;
    GrowthReport growth;
    long inclusion_violations = 0;  // A_{2^k}(u) ∩ B_{1/2} vs {u <= 2^k}
    long iterated_growth_violations = 0;
    std::vector<BoundRow> tail;
    double smallest_constant = 0.0;  // empirical, no paper counterpart
    double c_wh_used = 0.0;
    std::vector<AuditIssue> failures;
    std::vector<std::string> notes;
    bool pass() const { return failures.empty(); }
};

/// Weak-Harnack replay on B_4: growth-lemma audit, normalization, the
/// B_{1/2} decay iteration with the restricted measure estimate, and the
/// tail bound report.
HarnackResult run_weak_harnack(const ExperimentConfig& cfg);

struct SweepRow {
    double lambda = 1.0;
    double eps_emp = 0.0;
    double eps_theory = 0.0;
    double residual = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double slope = 0.0;  // fitted log-log slope of eps_emp vs lambda
    double slope_residual = 0.0;
    std::vector<AuditIssue> failures;
    bool pass() const { return failures.empty(); }
};

/// Interior runs on the ass_block member per lambda; rows are computed
/// independently (parallel across entries) and merged in input order.
SweepResult sweep_lambda(const ExperimentConfig& cfg, const std::vector<double>& lambdas);

// --- output ----------------------------------------------------------------

/// Shortest round-trip decimal; infinities serialize as "inf".
std::string format_double(double v);

void write_decay_csv(const std::string& path, const std::vector<DecayRecord>& recs);
void write_theta_csv(const std::string& path, const ThetaField& th);
void write_bound_csv(const std::string& path, const std::vector<BoundRow>& rows);
void write_sweep_csv(const std::string& path, const SweepResult& res);
void write_failures_csv(const std::string& path, const std::vector<AuditIssue>& issues);
void write_decay_svg(const std::string& path, const std::vector<DecayRecord>& recs);

double theoretical_epsilon_interior(int n, double lambda);  // 2^-2 (2 n lambda)^(1-n)
double theoretical_epsilon_global(int n, double lambda);    // 2^-3 (2 n lambda)^(1-n)

}  // namespace parab
