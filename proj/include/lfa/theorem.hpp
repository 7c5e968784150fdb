#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lfa/apoints.hpp"
#include "lfa/arith.hpp"
#include "lfa/characters.hpp"

namespace lfa {

enum class PhaseSign { plus, minus };
enum class RhsMode { theorem1, lemma_zero, corollary };

const char* to_string(PhaseSign s);
const char* to_string(RhsMode m);

// generalized Stieltjes coefficients C_0..C_n of -L'/L(s,chi) at s = 1,
// computed by two independent routes with the max disagreement recorded
struct StieltjesCoeffs {
    std::int64_t q = 0;
    std::int64_t char_index = 0;
    std::vector<cplx> values;      // differentiation route (the more precise one)
    std::vector<cplx> values_alt;  // smoothed-series route
    double method_gap = 0.0;
};

struct StieltjesOptions {
    std::int64_t series_limit = 4'000'000;  // prime cutoff of the smoothed series
    double zero_correction_height = 15.0;   // low zeros folded back explicitly
    double gap_tolerance = 1e-6;
    bool enforce_gap = true;
};

struct VerificationRow {
    double t_used = 0.0;
    double x = 1.0;
    cplx a{};
    RhsMode mode = RhsMode::lemma_zero;
    PhaseSign phase_sign = PhaseSign::plus;
    cplx empirical{};
    cplx rhs{};
    double residual = 0.0;
    double normalized_residual = 0.0;  // residual / (sqrt(T) log^3(qT))
    int n_points = 0;
    bool failed = false;
    std::string error;
};

// sum of L'(rho,chi) X^rho over located a-points (multiplicity-weighted);
// L' comes from the reference evaluator, X^rho = exp(rho ln X)
cplx empirical_sum(std::span<const APoint> points, double X, const DirichletCharacter& chi);
cplx empirical_sum(std::span<const APoint> points, double X);
cplx empirical_sum_serial(std::span<const APoint> points, double X,
                          const DirichletCharacter& chi);

// 1 when X is an integer >= 1, else 0
int integer_indicator(double X);

// main-term evaluators for the three displayed identities.  The phase sign
// of e^(+-2 i pi k X / q) is a parameter; plus is the default because the
// verification harness shows it is the sign that matches the empirical
// side for complex characters (the signs tie for real ones).
cplx theorem1_rhs(const DirichletCharacter& chi, cplx a, double X, double T,
                  const FactorSieve& sieve, PhaseSign sign = PhaseSign::plus);
cplx lemma_zero_sum_rhs(const DirichletCharacter& chi, double X, double T,
                        const FactorSieve& sieve, PhaseSign sign = PhaseSign::plus);
cplx corollary_rhs(const DirichletCharacter& chi, cplx a, double X, double T,
                   const FactorSieve& sieve, const StieltjesCoeffs& coeffs);

// the four character-twisted k-sums share this kernel; serial twin kept
// for the parallel-consistency tests and the benchmark
cplx twisted_ksum(const DirichletCharacter& chi, std::int64_t k_max, int log_power,
                  double phase_step, const FactorSieve* conv_sieve = nullptr);
cplx twisted_ksum_serial(const DirichletCharacter& chi, std::int64_t k_max, int log_power,
                         double phase_step, const FactorSieve* conv_sieve = nullptr);

StieltjesCoeffs stieltjes(const DirichletCharacter& chi, int n_max,
                          const StieltjesOptions& opt = {});

struct ResidualTableConfig {
    double X = 1.0;
    cplx a{};
    RhsMode mode = RhsMode::lemma_zero;
    PhaseSign phase_sign = PhaseSign::plus;
    std::vector<double> t_grid;
    std::string cache_dir;          // empty = no cache
    bool include_nonpositive_beta = false;
    std::int64_t sieve_limit = 1'000'000;
};

std::vector<VerificationRow> residual_table(const DirichletCharacter& chi,
                                            const ResidualTableConfig& cfg);

// CSV schema: T_used,X,a_re,a_im,mode,phase_sign,emp_re,emp_im,rhs_re,rhs_im,
//             residual,normalized_residual,n_points
std::string rows_to_csv(std::span<const VerificationRow> rows, bool timestamp_header);
std::string rows_to_json(std::span<const VerificationRow> rows);
std::string rows_to_plot(std::span<const VerificationRow> rows);  // T  normalized_residual

}  // namespace lfa
