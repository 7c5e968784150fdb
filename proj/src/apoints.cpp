#include "lfa/apoints.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "lfa/lfunc.hpp"
#include "lfa/parallel.hpp"

namespace lfa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arg_ratio(cplx f1, cplx f0) { return std::arg(f1 / f0); }

std::string fmt_for_name(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    std::string s(buf);
    for (auto& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
        if (c == '+') c = '\0';
    }
    std::string out;
    for (char c : s)
        if (c != '\0') out += c;
    return out;
}

}  // namespace

// ---- AnalyticScanner -------------------------------------------------------

AnalyticScanner::AnalyticScanner(Fn f, double sigma_left, double sigma_right, ScanOptions opt)
    : fn_(std::move(f)), left_(sigma_left), right_(sigma_right), opt_(opt) {
    if (!(left_ < right_)) throw domain_error("AnalyticScanner: empty strip");
    eleft_.sigma = left_;
    eright_.sigma = right_;
}

// Recursively fill samples between two path points until every consecutive
// argument increment is below pi/4 AND the span times the endpoint argument
// rate |f'/f| stays small.  The rate bound is what rules out aliased 2 pi
// wraps: a root cluster of multiplicity m close enough to the segment to
// wrap the argument forces span * m/dist > 1.2 at an endpoint, so the
// segment gets split until the swing is resolved.  Root windows are still
// cross-checked downstream (integer windings, Newton-inside-window).
void AnalyticScanner::chain(cplx s_a, cplx f_a, double r_a, cplx s_b, cplx f_b, double r_b,
                            int depth, std::vector<PathSample>& out, bool horizontal) const {
    const double ca = horizontal ? s_a.real() : s_a.imag();
    const double cb = horizontal ? s_b.real() : s_b.imag();
    const double span = cb - ca;
    const double inc = arg_ratio(f_b, f_a);
    const double max_span = (!horizontal && std::min(std::abs(s_a.imag()), std::abs(s_b.imag())) <
                                                 opt_.low_region_top)
                                ? opt_.low_region_step
                                : opt_.base_step;
    if (std::abs(inc) <= 0.25 * kPi && span <= max_span &&
        span * std::max(r_a, r_b) <= 1.2)
        return;
    if (depth >= 60)
        throw near_singularity_error("argument tracking: step underflow near " +
                                     std::to_string(s_a.real()) + "+" +
                                     std::to_string(s_a.imag()) + "i");
    const cplx s_m = 0.5 * (s_a + s_b);
    const auto [f_m, fp_m] = fn_(s_m);
    if (std::abs(f_m) < opt_.contour_min_abs)
        throw near_singularity_error("contour runs within " +
                                     std::to_string(opt_.contour_min_abs) + " of a root");
    const double r_m = std::abs(fp_m / f_m);
    chain(s_a, f_a, r_a, s_m, f_m, r_m, depth + 1, out, horizontal);
    out.push_back({horizontal ? s_m.real() : s_m.imag(), f_m, r_m});
    chain(s_m, f_m, r_m, s_b, f_b, r_b, depth + 1, out, horizontal);
}

void AnalyticScanner::seed_edge(EdgeProfile& e) {
    if (!e.ts.empty()) return;
    const cplx s{e.sigma, opt_.eps_bottom};
    const auto [f, fp] = fn_(s);
    if (std::abs(f) < opt_.contour_min_abs)
        throw near_singularity_error("contour corner sits on a root");
    e.ts.push_back(opt_.eps_bottom);
    e.fs.push_back(f);
    e.rate.push_back(std::abs(fp / f));
    e.cum.push_back(0.0);
}

void AnalyticScanner::extend_edge(EdgeProfile& e, double t_target) {
    seed_edge(e);
    while (e.ts.back() < t_target - 1e-12) {
        const double t0 = e.ts.back();
        const double step = (t0 < opt_.low_region_top) ? opt_.low_region_step : opt_.base_step;
        const double t1 = std::min(t0 + step, t_target);
        const cplx s0{e.sigma, t0}, s1{e.sigma, t1};
        const auto [f1, fp1] = fn_(s1);
        if (std::abs(f1) < opt_.contour_min_abs)
            throw near_singularity_error("edge sample too close to a root");
        const double r1 = std::abs(fp1 / f1);
        std::vector<PathSample> mid;
        chain(s0, e.fs.back(), e.rate.back(), s1, f1, r1, 0, mid, false);
        for (const auto& p : mid) {
            e.cum.push_back(e.cum.back() + arg_ratio(p.f, e.fs.back()));
            e.ts.push_back(p.coord);
            e.fs.push_back(p.f);
            e.rate.push_back(p.rate);
        }
        e.cum.push_back(e.cum.back() + arg_ratio(f1, e.fs.back()));
        e.ts.push_back(t1);
        e.fs.push_back(f1);
        e.rate.push_back(r1);
    }
}

std::size_t AnalyticScanner::ensure_edge_sample(EdgeProfile& e, double t) {
    extend_edge(e, t);
    auto it = std::lower_bound(e.ts.begin(), e.ts.end(), t - 1e-12);
    std::size_t k = static_cast<std::size_t>(it - e.ts.begin());
    if (k < e.ts.size() && std::abs(e.ts[k] - t) < 1e-12) return k;
    // insert an interior sample (cut heights rarely coincide with the grid)
    const std::size_t i = k - 1;
    const cplx s{e.sigma, t};
    const auto [f, fp] = fn_(s);
    if (std::abs(f) < opt_.contour_min_abs)
        throw near_singularity_error("cut height too close to a root ordinate");
    const double r = std::abs(fp / f);
    std::vector<PathSample> seg;
    chain(cplx{e.sigma, e.ts[i]}, e.fs[i], e.rate[i], s, f, r, 0, seg, false);
    seg.push_back({t, f, r});
    {
        std::vector<PathSample> right_part;
        chain(s, f, r, cplx{e.sigma, e.ts[i + 1]}, e.fs[i + 1], e.rate[i + 1], 0,
              right_part, false);
        for (auto& p : right_part) seg.push_back(p);
    }
    std::vector<double> nts, nrate;
    std::vector<cplx> nfs;
    nts.reserve(e.ts.size() + seg.size());
    nfs.reserve(e.ts.size() + seg.size());
    nrate.reserve(e.ts.size() + seg.size());
    nts.assign(e.ts.begin(), e.ts.begin() + static_cast<long>(i) + 1);
    nfs.assign(e.fs.begin(), e.fs.begin() + static_cast<long>(i) + 1);
    nrate.assign(e.rate.begin(), e.rate.begin() + static_cast<long>(i) + 1);
    for (const auto& p : seg) {
        nts.push_back(p.coord);
        nfs.push_back(p.f);
        nrate.push_back(p.rate);
    }
    nts.insert(nts.end(), e.ts.begin() + static_cast<long>(i) + 1, e.ts.end());
    nfs.insert(nfs.end(), e.fs.begin() + static_cast<long>(i) + 1, e.fs.end());
    nrate.insert(nrate.end(), e.rate.begin() + static_cast<long>(i) + 1, e.rate.end());
    e.ts = std::move(nts);
    e.fs = std::move(nfs);
    e.rate = std::move(nrate);
    e.cum.resize(e.ts.size());
    e.cum[0] = 0.0;
    for (std::size_t j = 1; j < e.ts.size(); ++j)
        e.cum[j] = e.cum[j - 1] + arg_ratio(e.fs[j], e.fs[j - 1]);
    it = std::lower_bound(e.ts.begin(), e.ts.end(), t - 1e-12);
    return static_cast<std::size_t>(it - e.ts.begin());
}

double AnalyticScanner::edge_arg(EdgeProfile& e, double t1, double t2) {
    // resolve the lower height first: inserting t2 only shifts indices above t1
    const std::size_t k1 = ensure_edge_sample(e, t1);
    const std::size_t k2 = ensure_edge_sample(e, t2);
    return e.cum[k2] - e.cum[k1];
}

double AnalyticScanner::cut_arg_raw(double t) const {
    const cplx sa{left_, t}, sb{right_, t};
    const auto [fa, fpa] = fn_(sa);
    const auto [fb, fpb] = fn_(sb);
    if (std::abs(fa) < opt_.contour_min_abs || std::abs(fb) < opt_.contour_min_abs)
        throw near_singularity_error("cut endpoint too close to a root");
    std::vector<PathSample> mid;
    chain(sa, fa, std::abs(fpa / fa), sb, fb, std::abs(fpb / fb), 0, mid, true);
    double total = 0.0;
    cplx prev = fa;
    for (const auto& p : mid) {
        total += arg_ratio(p.f, prev);
        prev = p.f;
    }
    total += arg_ratio(fb, prev);
    return total;
}

double AnalyticScanner::cut_arg(double t) {
    if (auto it = cuts_.find(t); it != cuts_.end()) return it->second;
    const double total = cut_arg_raw(t);
    cuts_[t] = total;
    return total;
}

double AnalyticScanner::winding(double t1, double t2) {
    if (!(t1 < t2)) throw domain_error("winding: need t1 < t2");
    extend_edge(eleft_, t2);
    extend_edge(eright_, t2);
    const double bottom = cut_arg(t1);
    const double top = cut_arg(t2);
    const double vr = edge_arg(eright_, t1, t2);
    const double vl = edge_arg(eleft_, t1, t2);
    return (bottom + vr - top - vl) / kTwoPi;
}

double AnalyticScanner::pick_split(double t1, double t2, double w_parent, double& w_lo,
                                   double& w_hi) {
    const long parent = std::lround(w_parent);
    static constexpr double kJitter[] = {0.5,  0.583, 0.417, 0.55, 0.45,
                                         0.63, 0.37,  0.52,  0.48, 0.667};
    for (double j : kJitter) {
        const double tm = t1 + j * (t2 - t1);
        try {
            const double wl = winding(t1, tm);
            const double wh = winding(tm, t2);
            const long rl = std::lround(wl), rh = std::lround(wh);
            if (std::abs(wl - static_cast<double>(rl)) <= opt_.quadrature_tol &&
                std::abs(wh - static_cast<double>(rh)) <= opt_.quadrature_tol &&
                rl + rh == parent) {
                w_lo = wl;
                w_hi = wh;
                return tm;
            }
        } catch (const near_singularity_error&) {
            continue;  // midpoint sat on/near an ordinate; try the next offset
        }
    }
    throw nonconvergence_error("window split failed in (" + std::to_string(t1) + ", " +
                               std::to_string(t2) + "]");
}

double AnalyticScanner::circle_winding(cplx center, double radius) const {
    const int n0 = 64;
    std::vector<cplx> f(n0 + 1);
    for (int k = 0; k <= n0; ++k) {
        const double th = kTwoPi * k / n0;
        f[k] = fn_(center + radius * cplx{std::cos(th), std::sin(th)}).first;
    }
    double total = 0.0;
    for (int k = 0; k < n0; ++k) {
        double inc = arg_ratio(f[k + 1], f[k]);
        if (std::abs(inc) > 0.45 * kPi) {
            // refine this arc
            const double tha = kTwoPi * k / n0, thb = kTwoPi * (k + 1) / n0;
            const int sub = 16;
            cplx prev = f[k];
            inc = 0.0;
            for (int m = 1; m <= sub; ++m) {
                const double th = tha + (thb - tha) * m / sub;
                const cplx fm = fn_(center + radius * cplx{std::cos(th), std::sin(th)}).first;
                inc += arg_ratio(fm, prev);
                prev = fm;
            }
        }
        total += inc;
    }
    return total / kTwoPi;
}

// fresh-sample rectangle winding, no caches; used by the localization fallback
double AnalyticScanner::direct_winding(double x1, double x2, double t1, double t2) const {
    const cplx corners[5] = {{x1, t1}, {x2, t1}, {x2, t2}, {x1, t2}, {x1, t1}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        // walk each edge in the increasing-coordinate direction so chain's
        // span bookkeeping holds; flip the sign for the return edges
        cplx sa = corners[e], sb = corners[e + 1];
        const bool horizontal = (e % 2 == 0);
        double orient = 1.0;
        if ((horizontal && sb.real() < sa.real()) || (!horizontal && sb.imag() < sa.imag())) {
            std::swap(sa, sb);
            orient = -1.0;
        }
        const auto [fa, fpa] = fn_(sa);
        const auto [fb, fpb] = fn_(sb);
        if (std::abs(fa) < opt_.contour_min_abs || std::abs(fb) < opt_.contour_min_abs)
            throw near_singularity_error("direct_winding: contour touches a root");
        std::vector<PathSample> mid;
        chain(sa, fa, std::abs(fpa / fa), sb, fb, std::abs(fpb / fb), 0, mid, horizontal);
        double part = 0.0;
        cplx prev = fa;
        for (const auto& p : mid) {
            part += arg_ratio(p.f, prev);
            prev = p.f;
        }
        part += arg_ratio(fb, prev);
        total += orient * part;
    }
    return total / kTwoPi;
}

bool AnalyticScanner::newton_from(cplx s0, double t1, double t2, double res_tol,
                                  Root& out) const {
    cplx z = s0;
    bool converged = false;
    for (int it = 0; it < opt_.max_newton_iter; ++it) {
        const auto [f, fp] = fn_(z);
        if (std::abs(fp) < 1e-300) break;
        const cplx step = f / fp;
        z -= step;
        if (std::abs(z.real() - s0.real()) > 10.0 || std::abs(z.imag() - s0.imag()) > 10.0)
            break;
        if (std::abs(step) <= opt_.newton_step_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) return false;
    const double res = std::abs(fn_(z).first);
    const bool inside = z.real() > left_ + 1e-12 && z.real() < right_ - 1e-12 &&
                        z.imag() > t1 + 1e-12 && z.imag() <= t2 + 1e-12;
    if (res > res_tol || !inside) return false;
    out.s = z;
    out.residual = res;
    out.multiplicity = 1;
    return true;
}

AnalyticScanner::Root AnalyticScanner::refine_window(double t1, double t2, int expected) {
    const double cy = 0.5 * (t1 + t2);
    const double ry = std::max(0.35 * (t2 - t1), 1e-7);

    // roots can sit anywhere across the strip, so spread starts in sigma
    std::vector<cplx> starts;
    for (double fx : {0.5, 0.3, 0.7, 0.15, 0.85}) {
        const double cx = left_ + fx * (right_ - left_);
        starts.push_back({cx, cy});
        for (int j = 0; j < 8; ++j) {
            const double th = kTwoPi * j / 8.0 + 0.3;
            starts.push_back({cx + 0.12 * (right_ - left_) * std::cos(th),
                              cy + ry * std::sin(th)});
        }
    }

    Root r;
    bool found = false;
    for (const cplx& s0 : starts) {
        if (newton_from(s0, t1, t2, opt_.newton_residual_tol, r)) {
            found = true;
            break;
        }
    }

    if (!found) {
        // localize by 2D box bisection on fresh windings, then retry Newton
        double x1 = left_, x2 = right_, y1 = t1, y2 = t2;
        try {
            for (int iter = 0; iter < 40 && (x2 - x1 > 0.05 || y2 - y1 > 0.05); ++iter) {
                if (x2 - x1 >= y2 - y1) {
                    const double xm = 0.5 * (x1 + x2);
                    const double w = direct_winding(x1, xm, y1, y2);
                    if (std::lround(w) >= 1)
                        x2 = xm;
                    else
                        x1 = xm;
                } else {
                    const double ym = 0.5 * (y1 + y2);
                    const double w = direct_winding(x1, x2, y1, ym);
                    if (std::lround(w) >= 1)
                        y2 = ym;
                    else
                        y1 = ym;
                }
            }
            found = newton_from({0.5 * (x1 + x2), 0.5 * (y1 + y2)}, t1, t2,
                                opt_.newton_residual_tol, r);
        } catch (const near_singularity_error&) {
            // a bisection line grazed the root; fall through with best center
            found = newton_from({0.5 * (x1 + x2), 0.5 * (y1 + y2)}, t1, t2,
                                opt_.newton_residual_tol, r);
        }
    }

    if (!found)
        throw nonconvergence_error("Newton refinement failed in window (" +
                                   std::to_string(t1) + ", " + std::to_string(t2) + "]");
    if (expected > 1) {
        const double w = circle_winding(r.s, 1e-4);
        const int m = static_cast<int>(std::lround(w));
        if (m < expected)
            throw nonconvergence_error("unresolved root cluster near t = " +
                                       std::to_string(r.s.imag()));
        r.multiplicity = m;
    }
    return r;
}

std::vector<AnalyticScanner::Root> AnalyticScanner::locate(double t_lo, double t_hi) {
    if (!(t_lo < t_hi)) throw domain_error("locate: need t_lo < t_hi");
    extend_edge(eleft_, t_hi);
    extend_edge(eright_, t_hi);

    struct Window {
        double t1, t2, w;
    };
    const double w0 = winding(t_lo, t_hi);
    if (std::abs(w0 - std::lround(w0)) > opt_.quadrature_tol)
        throw nonconvergence_error("winding over (" + std::to_string(t_lo) + ", " +
                                   std::to_string(t_hi) + "] is not near an integer: " +
                                   std::to_string(w0));

    std::vector<Window> active{{t_lo, t_hi, w0}};
    std::vector<Window> singles, multis;

    while (!active.empty()) {
        std::vector<Window> to_split;
        for (const auto& w : active) {
            const long c = std::lround(w.w);
            if (c <= 0) continue;
            if (c == 1 && w.t2 - w.t1 <= 2.0)
                singles.push_back(w);
            else if (c > 1 && w.t2 - w.t1 <= opt_.min_window)
                multis.push_back(w);
            else
                to_split.push_back(w);  // tall singleton windows get narrowed too
        }
        active.clear();
        if (to_split.empty()) break;

        // warm the cut cache for the canonical midpoints in parallel
        std::vector<double> mids(to_split.size());
        for (std::size_t i = 0; i < to_split.size(); ++i)
            mids[i] = 0.5 * (to_split[i].t1 + to_split[i].t2);
        for (double m : mids) {
            ensure_edge_sample(eleft_, m);
            ensure_edge_sample(eright_, m);
        }
        std::vector<std::pair<bool, double>> cutvals(mids.size(), {false, 0.0});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par::enabled() && mids.size() > 1)
#endif
        for (long long i = 0; i < static_cast<long long>(mids.size()); ++i) {
            try {
                cutvals[i] = {true, cut_arg_raw(mids[i])};
            } catch (const near_singularity_error&) {
                // leave unset; pick_split will jitter
            }
        }
        for (std::size_t i = 0; i < mids.size(); ++i)
            if (cutvals[i].first && !cuts_.count(mids[i])) cuts_[mids[i]] = cutvals[i].second;

        for (const auto& w : to_split) {
            double wl = 0.0, wh = 0.0;
            try {
                const double tm = pick_split(w.t1, w.t2, w.w, wl, wh);
                active.push_back({w.t1, tm, wl});
                active.push_back({tm, w.t2, wh});
            } catch (const nonconvergence_error&) {
                // a tight multiple-root cluster rejects every cut; hand it to
                // the multiplicity handler once the window is narrow enough
                if (std::lround(w.w) >= 2 && w.t2 - w.t1 <= 1e-2)
                    multis.push_back(w);
                else
                    throw;
            }
        }
    }

    std::vector<Root> roots(singles.size());
    std::vector<std::string> failures;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par::enabled() && singles.size() > 1)
#endif
    for (long long i = 0; i < static_cast<long long>(singles.size()); ++i) {
        try {
            roots[i] = refine_window(singles[i].t1, singles[i].t2, 1);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failures.emplace_back(e.what());
        }
    }
    if (!failures.empty()) {
        std::string msg = "locate: " + std::to_string(failures.size()) + " window(s) failed:";
        for (const auto& f : failures) msg += "\n  " + f;
        throw nonconvergence_error(msg);
    }
    for (const auto& w : multis) roots.push_back(refine_window(w.t1, w.t2, std::lround(w.w)));

    std::sort(roots.begin(), roots.end(),
              [](const Root& a, const Root& b) { return a.s.imag() < b.s.imag(); });
    return roots;
}

std::vector<double> AnalyticScanner::ordinates(double t_lo, double t_hi, double res) {
    // jitter outward if a band endpoint happens to sit on an ordinate
    double lo = t_lo, hi = t_hi;
    double w = 0.0;
    bool ok = false;
    for (int k = 0; k < 8 && !ok; ++k) {
        try {
            w = winding(lo, hi);
            if (std::abs(w - std::lround(w)) <= opt_.quadrature_tol) ok = true;
        } catch (const near_singularity_error&) {
        }
        if (!ok) {
            lo = std::max(opt_.eps_bottom, lo - 0.0137);
            hi = hi + 0.0151;
        }
    }
    if (!ok) throw nonconvergence_error("ordinates: cannot frame band");

    std::vector<double> out;
    struct Window {
        double t1, t2, w;
    };
    std::vector<Window> stack{{lo, hi, w}};
    while (!stack.empty()) {
        const auto win = stack.back();
        stack.pop_back();
        const long c = std::lround(win.w);
        if (c <= 0) continue;
        if (win.t2 - win.t1 <= res) {
            for (long i = 0; i < c; ++i) out.push_back(0.5 * (win.t1 + win.t2));
            continue;
        }
        double wl = 0.0, wh = 0.0;
        const double tm = pick_split(win.t1, win.t2, win.w, wl, wh);
        stack.push_back({win.t1, tm, wl});
        stack.push_back({tm, win.t2, wh});
    }
    std::sort(out.begin(), out.end());
    return out;
}

double AnalyticScanner::safe_height(double t_request) {
    if (t_request < 5.0) throw domain_error("safe_height: requires T >= 5");
    const double threshold = 0.5 / std::log(t_request);
    const double band_lo = std::max(opt_.eps_bottom * 2.0, t_request - 0.75);
    const double band_hi = t_request + 1.75;
    const auto ords = ordinates(band_lo, band_hi, 0.02);

    auto min_dist = [&](double t) {
        double d = 1e9;
        for (double g : ords) d = std::min(d, std::abs(t - g));
        return d;
    };

    if (min_dist(t_request) >= threshold) return t_request;
    double best = t_request, best_d = -1.0;
    for (int j = 0; j < 64; ++j) {
        const double cand = t_request + static_cast<double>(j) / 64.0;
        const double d = min_dist(cand);
        if (d > best_d) {
            best_d = d;
            best = cand;
        }
    }
    if (best_d < threshold)
        throw nonconvergence_error("safe_height: no safe height in [T, T+1)");
    return best;
}

// ---- ApointScanner ---------------------------------------------------------

std::int64_t first_nonvanishing_index(const DirichletCharacter& chi) {
    for (std::int64_t n = 2; n <= chi.modulus() + 1; ++n)
        if (chi(n) != cplx{0.0, 0.0}) return n;
    return 2;  // unreachable: chi(q+1) = chi(1) = 1
}

double apoint_strip_right(const DirichletCharacter& chi, cplx a) {
    const std::int64_t q = chi.modulus();
    const std::int64_t m = first_nonvanishing_index(chi);

    auto tail_above = [&](std::int64_t n0, double sigma) {
        // sum_{n > n0, gcd(n,q)=1} n^-sigma plus an integral bound for the rest
        double s = 0.0;
        const std::int64_t cap = 20000;
        for (std::int64_t n = n0 + 1; n <= cap; ++n)
            if (std::gcd(n, q) == 1) s += std::pow(static_cast<double>(n), -sigma);
        s += std::pow(static_cast<double>(cap), 1.0 - sigma) / (sigma - 1.0);
        return s;
    };

    if (std::abs(a - cplx{1.0, 0.0}) < 1e-12) {
        // L - 1 is dominated by chi(m) m^-s to the right of sigma_R
        for (int sig = 3; sig <= 12; ++sig) {
            const double lead = std::pow(static_cast<double>(m), -static_cast<double>(sig));
            if (lead > 2.0 * tail_above(m, sig)) return static_cast<double>(sig);
        }
        throw domain_error("apoint_strip_right: no dominated edge found for a = 1");
    }

    const double want = std::max(0.1, std::abs(a - cplx{1.0, 0.0}) / 2.0);
    static constexpr double kProbe[] = {1e-3, 0.25, 0.5, 1.0,  1.5,  2.0,  3.0,   4.0,
                                        5.0,  7.0,  10., 15.,  20.,  30.,  50.,   75.,
                                        100., 150., 300., 500., 700., 900., 1000., 0.0};
    for (int sig = 3; sig <= 12; ++sig) {
        double lo = 1e9;
        for (double t : kProbe) {
            if (t == 0.0) break;
            lo = std::min(lo, std::abs(l_value(cplx{static_cast<double>(sig), t}, chi) - a));
        }
        if (lo > want) return static_cast<double>(sig);
    }
    // |a - 1| too small for the probe rule; fall back to tail dominance of |1 - a|
    for (int sig = 3; sig <= 12; ++sig) {
        if (std::abs(a - cplx{1.0, 0.0}) > 2.0 * tail_above(m - 1, sig))
            return static_cast<double>(sig);
    }
    throw domain_error("apoint_strip_right: cannot bound the strip for this a");
}

ApointScanner::ApointScanner(const DirichletCharacter& chi, cplx a, ScanOptions opt)
    : chi_(chi),
      a_(a),
      c_a_(std::abs(a - cplx{1.0, 0.0}) < 1e-12
               ? static_cast<double>(first_nonvanishing_index(chi))
               : 1.0),
      opt_(opt),
      scanner_(
          [chi, a](cplx s) {
              auto [L, Lp] = l_value_with_deriv(s, chi);
              return std::make_pair(L - a, Lp);
          },
          opt.strip_left, apoint_strip_right(chi, a), opt) {
    if (!chi.is_primitive())
        throw domain_error("ApointScanner: verification requires a primitive character");
}

double ApointScanner::safe_height(double t_request) { return scanner_.safe_height(t_request); }

CountReport ApointScanner::count(double T) {
    CountReport rep;
    rep.t_used = T;
    rep.c_a = c_a_;
    rep.winding_raw = scanner_.winding(opt_.eps_bottom, T);
    const long rounded = std::lround(rep.winding_raw);
    if (std::abs(rep.winding_raw - static_cast<double>(rounded)) > opt_.quadrature_tol)
        throw nonconvergence_error("count: winding " + std::to_string(rep.winding_raw) +
                                   " is not near an integer");
    rep.exact_count = rounded;
    const double q = static_cast<double>(chi_.modulus());
    rep.main_term = T / kTwoPi * std::log(q * T / (kTwoPi * c_a_ * std::exp(1.0)));
    return rep;
}

std::vector<APoint> ApointScanner::to_apoints(
    const std::vector<AnalyticScanner::Root>& roots) const {
    std::vector<APoint> out;
    out.reserve(roots.size());
    for (const auto& r : roots) {
        APoint p;
        p.beta = r.s.real();
        p.gamma = r.s.imag();
        p.a = a_;
        p.q = chi_.modulus();
        p.char_index = chi_.index();
        p.newton_residual = r.residual;
        p.multiplicity = r.multiplicity;
        out.push_back(p);
    }
    return out;
}

std::vector<APoint> ApointScanner::locate(double t_lo, double t_hi) {
    if (!(t_lo >= 5.0)) throw domain_error("locate_apoints: requires 5 <= t_lo");
    if (!(t_lo < t_hi)) throw domain_error("locate_apoints: requires t_lo < t_hi");
    return to_apoints(scanner_.locate(t_lo, t_hi));
}

std::vector<APoint> ApointScanner::scan_all(double T) {
    return to_apoints(scanner_.locate(opt_.eps_bottom, T));
}

std::vector<APoint> nontrivial_points(const std::vector<APoint>& pts) {
    std::vector<APoint> out;
    for (const auto& p : pts)
        if (p.beta > 0.0) out.push_back(p);
    return out;
}

bool a1_transform_check(const DirichletCharacter& chi, double T,
                        std::vector<std::pair<cplx, cplx>>* mismatches) {
    ApointScanner direct(chi, cplx{1.0, 0.0});
    const double t_top = direct.safe_height(T);
    const auto via_l = direct.scan_all(t_top);

    // independent route: zeros of l(s) = q^s (L(s,chi) - 1)
    const double logq = std::log(static_cast<double>(chi.modulus()));
    AnalyticScanner transformed(
        [chi, logq](cplx s) {
            auto [L, Lp] = l_value_with_deriv(s, chi);
            const cplx qs = std::exp(s * logq);
            return std::make_pair(qs * (L - cplx{1.0, 0.0}),
                                  qs * (logq * (L - cplx{1.0, 0.0}) + Lp));
        },
        direct.strip_left(), direct.strip_right());
    const auto via_t = transformed.locate(ScanOptions{}.eps_bottom, t_top);

    bool ok = via_l.size() == via_t.size();
    const std::size_t n = std::min(via_l.size(), via_t.size());
    for (std::size_t i = 0; i < n; ++i) {
        const cplx r1{via_l[i].beta, via_l[i].gamma};
        const cplx r2 = via_t[i].s;
        if (std::abs(r1 - r2) > 1e-9) {
            ok = false;
            if (mismatches) mismatches->emplace_back(r1, r2);
        }
    }
    if (via_l.size() != via_t.size() && mismatches)
        mismatches->emplace_back(cplx(static_cast<double>(via_l.size()), 0.0),
                                 cplx(static_cast<double>(via_t.size()), 0.0));
    return ok;
}

// ---- cache files -----------------------------------------------------------

std::string apoint_cache_path(const std::string& dir, std::int64_t q,
                              std::int64_t char_index, cplx a) {
    std::string name = "apoints_q" + std::to_string(q) + "_chi" + std::to_string(char_index) +
                       "_a" + fmt_for_name(a.real()) + "_" + fmt_for_name(a.imag()) + ".json";
    if (dir.empty()) return name;
    return (std::filesystem::path(dir) / name).string();
}

std::optional<ApointCache> apoint_cache_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("schema_version").get<int>() != kApointCacheSchemaVersion) return std::nullopt;
        ApointCache c;
        c.q = j.at("q").get<std::int64_t>();
        c.char_index = j.at("char_index").get<std::int64_t>();
        c.a = cplx{j.at("a").at(0).get<double>(), j.at("a").at(1).get<double>()};
        c.strip_left = j.at("strip").at(0).get<double>();
        c.strip_right = j.at("strip").at(1).get<double>();
        c.t_max = j.at("t_max").get<double>();
        for (const auto& p : j.at("points")) {
            APoint pt;
            pt.beta = p.at("beta").get<double>();
            pt.gamma = p.at("gamma").get<double>();
            pt.multiplicity = p.at("multiplicity").get<int>();
            pt.newton_residual = p.at("newton_residual").get<double>();
            pt.a = c.a;
            pt.q = c.q;
            pt.char_index = c.char_index;
            c.points.push_back(pt);
        }
        return c;
    } catch (...) {
        return std::nullopt;
    }
}

void apoint_cache_save(const std::string& path, const ApointCache& cache) {
    nlohmann::json j;
    j["schema_version"] = kApointCacheSchemaVersion;
    j["q"] = cache.q;
    j["char_index"] = cache.char_index;
    j["a"] = {cache.a.real(), cache.a.imag()};
    j["strip"] = {cache.strip_left, cache.strip_right};
    j["t_max"] = cache.t_max;
    j["points"] = nlohmann::json::array();
    for (const auto& p : cache.points) {
        j["points"].push_back({{"beta", p.beta},
                               {"gamma", p.gamma},
                               {"multiplicity", p.multiplicity},
                               {"newton_residual", p.newton_residual}});
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path);
    if (!out) throw resource_error("cannot write cache file " + path);
    out << j.dump(1) << "\n";
}

std::vector<APoint> scan_cached(ApointScanner& scanner, const std::string& cache_dir,
                                double T, double* t_used) {
    const double t_top = scanner.safe_height(T);
    if (t_used) *t_used = t_top;

    auto finish = [&](std::vector<APoint> pts) {
        std::vector<APoint> out;
        for (const auto& p : pts)
            if (p.gamma <= t_top + 1e-12) out.push_back(p);
        return out;
    };

    if (cache_dir.empty()) return finish(scanner.scan_all(t_top));

    const auto path = apoint_cache_path(cache_dir, scanner.character().modulus(),
                                        scanner.character().index(), scanner.a());
    auto cached = apoint_cache_load(path);
    const bool valid = cached && cached->q == scanner.character().modulus() &&
                       cached->char_index == scanner.character().index() &&
                       std::abs(cached->a - scanner.a()) < 1e-12 &&
                       std::abs(cached->strip_left - scanner.strip_left()) < 1e-9 &&
                       std::abs(cached->strip_right - scanner.strip_right()) < 1e-9;
    if (valid && cached->t_max >= t_top - 1e-12) return finish(cached->points);

    std::vector<APoint> pts;
    if (valid) {
        pts = cached->points;
        const auto ext = scanner.analytic().locate(cached->t_max, t_top);
        for (const auto& r : ext) {
            APoint p;
            p.beta = r.s.real();
            p.gamma = r.s.imag();
            p.a = scanner.a();
            p.q = scanner.character().modulus();
            p.char_index = scanner.character().index();
            p.newton_residual = r.residual;
            p.multiplicity = r.multiplicity;
            pts.push_back(p);
        }
    } else {
        pts = scanner.scan_all(t_top);
    }

    ApointCache c;
    c.q = scanner.character().modulus();
    c.char_index = scanner.character().index();
    c.a = scanner.a();
    c.strip_left = scanner.strip_left();
    c.strip_right = scanner.strip_right();
    c.t_max = t_top;
    c.points = pts;
    apoint_cache_save(path, c);
    return finish(pts);
}

}  // namespace lfa
