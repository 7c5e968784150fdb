#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfa/characters.hpp"
#include "lfa/errors.hpp"

namespace lfa {

// one located root of L(s,chi) = a, gamma > 0
struct APoint {
    double beta = 0.0;
    double gamma = 0.0;
    cplx a{};
    std::int64_t q = 0;
    std::int64_t char_index = 0;
    double newton_residual = 0.0;
    int multiplicity = 1;
};

struct CountReport {
    long exact_count = 0;     // argument-principle winding, rounded
    double winding_raw = 0.0; // before rounding, for the quadrature guard
    double main_term = 0.0;   // (T/2pi) log(qT/(2 pi c_a e))
    double c_a = 1.0;
    double t_used = 0.0;
};

struct ScanOptions {
    double strip_left = -1.0;
    double eps_bottom = 1e-3;       // bottom edge height of the global contour
    double low_region_top = 5.0;    // below this, scan with a finer base step
    double contour_min_abs = 1e-10; // edge-proximity guard on |f|
    double quadrature_tol = 0.25;   // winding must be this close to an integer
    double newton_residual_tol = 1e-9;
    double newton_step_tol = 1e-12;
    int max_newton_iter = 100;
    double min_window = 1e-5;       // bisection floor before multiplicity handling
    double base_step = 0.25;        // coarse sampling step along contour pieces
    double low_region_step = 0.05;
};

// Argument-principle machinery for a generic analytic f on a rectangle strip.
// Vertical edge argument profiles are built once and extended/refined lazily;
// horizontal cuts are memoized by height, so window bisection only ever pays
// for new cut heights.
class AnalyticScanner {
  public:
    using Fn = std::function<std::pair<cplx, cplx>(cplx)>;  // (f, f')

    AnalyticScanner(Fn f, double sigma_left, double sigma_right, ScanOptions opt = {});

    double sigma_left() const noexcept { return left_; }
    double sigma_right() const noexcept { return right_; }

    // winding number of f around [sigma_left, sigma_right] x [t1, t2]
    double winding(double t1, double t2);

    struct Root {
        cplx s;
        double residual = 0.0;
        int multiplicity = 1;
    };

    // all roots with t_lo < Im s <= t_hi inside the strip
    std::vector<Root> locate(double t_lo, double t_hi);

    // approximate root ordinates (no refinement), resolution `res`
    std::vector<double> ordinates(double t_lo, double t_hi, double res);

    double safe_height(double t_request);

  private:
    struct EdgeProfile {
        double sigma = 0.0;
        std::vector<double> ts;
        std::vector<cplx> fs;
        std::vector<double> rate;  // |f'/f| at each sample
        std::vector<double> cum;   // cumulative arg increments, cum[0] = 0
    };

    struct PathSample {
        double coord;
        cplx f;
        double rate;
    };

    void seed_edge(EdgeProfile& e);
    void extend_edge(EdgeProfile& e, double t_target);
    std::size_t ensure_edge_sample(EdgeProfile& e, double t);
    double edge_arg(EdgeProfile& e, double t1, double t2);
    double cut_arg(double t);  // memoized horizontal cut at height t
    double cut_arg_raw(double t) const;
    void chain(cplx s_a, cplx f_a, double r_a, cplx s_b, cplx f_b, double r_b, int depth,
               std::vector<PathSample>& out, bool horizontal) const;
    double pick_split(double t1, double t2, double w_parent, double& w_lo, double& w_hi);
    Root refine_window(double t1, double t2, int expected);
    double circle_winding(cplx center, double radius) const;
    double direct_winding(double x1, double x2, double t1, double t2) const;
    bool newton_from(cplx s0, double t1, double t2, double res_tol, Root& out) const;

    Fn fn_;
    double left_, right_;
    ScanOptions opt_;
    EdgeProfile eleft_, eright_;
    std::map<double, double> cuts_;
};

// a-point scanner for L(s, chi) - a
class ApointScanner {
  public:
    ApointScanner(const DirichletCharacter& chi, cplx a, ScanOptions opt = {});

    const DirichletCharacter& character() const noexcept { return chi_; }
    cplx a() const noexcept { return a_; }
    double c_a() const noexcept { return c_a_; }
    double strip_left() const noexcept { return scanner_.sigma_left(); }
    double strip_right() const noexcept { return scanner_.sigma_right(); }

    double safe_height(double t_request);
    CountReport count(double T);
    // contract: 5 <= t_lo < t_hi, both safe heights
    std::vector<APoint> locate(double t_lo, double t_hi);
    // full scan over (eps_bottom, T]; used by the cache and the harness
    std::vector<APoint> scan_all(double T);

    AnalyticScanner& analytic() { return scanner_; }

  private:
    std::vector<APoint> to_apoints(const std::vector<AnalyticScanner::Root>& roots) const;

    DirichletCharacter chi_;
    cplx a_;
    double c_a_;
    ScanOptions opt_;
    AnalyticScanner scanner_;
};

// adaptive right strip boundary (see DESIGN: smallest sigma in {3,4,...} with
// the edge bounded away from a; tail-dominance rule for a = 1)
double apoint_strip_right(const DirichletCharacter& chi, cplx a);

// min{n >= 2 : chi(n) != 0}; the c_a constant for a = 1
std::int64_t first_nonvanishing_index(const DirichletCharacter& chi);

// points with beta > 0 (the set counted by the Riemann-von Mangoldt formula)
std::vector<APoint> nontrivial_points(const std::vector<APoint>& pts);

// 1-points of L via L - 1 versus zeros of q^s (L - 1); true when the two
// independent scans agree to 1e-9.  Mismatches, if any, are reported.
bool a1_transform_check(const DirichletCharacter& chi, double T,
                        std::vector<std::pair<cplx, cplx>>* mismatches = nullptr);

// ---- a-point cache files -------------------------------------------------

inline constexpr int kApointCacheSchemaVersion = 1;

struct ApointCache {
    std::int64_t q = 0;
    std::int64_t char_index = 0;
    cplx a{};
    double strip_left = 0.0;
    double strip_right = 0.0;
    double t_max = 0.0;
    std::vector<APoint> points;
};

std::string apoint_cache_path(const std::string& dir, std::int64_t q,
                              std::int64_t char_index, cplx a);
std::optional<ApointCache> apoint_cache_load(const std::string& path);
void apoint_cache_save(const std::string& path, const ApointCache& cache);

// cache-aware scan: load, extend past the cached t_max if needed, save.
// Returns points with gamma <= T (T is safe-height adjusted internally;
// the height actually used is returned through t_used when non-null).
std::vector<APoint> scan_cached(ApointScanner& scanner, const std::string& cache_dir,
                                double T, double* t_used = nullptr);

}  // namespace lfa
