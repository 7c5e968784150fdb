#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lfa/apoints.hpp"
#include "lfa/lfunc.hpp"
#include "lfa/parallel.hpp"

using lfa::ApointScanner;
using lfa::cplx;
using lfa::DirichletCharacter;

TEST_CASE("first zero of L(s, chi_4)") {
    const DirichletCharacter chi4(4, 1);
    ApointScanner scanner(chi4, {0.0, 0.0});
    const auto pts = scanner.locate(5.0, 8.0);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].gamma == doctest::Approx(6.0209489047).epsilon(1e-8));
    CHECK(pts[0].newton_residual <= 1e-9);
    CHECK(pts[0].multiplicity == 1);
    // assert via the residual, not the conjectural beta = 1/2
    const cplx rho{pts[0].beta, pts[0].gamma};
    CHECK(std::abs(lfa::l_value(rho, chi4)) <= 1e-9);

    // window strictly below the first zero is empty
    CHECK(scanner.locate(5.0, 5.4).empty());
    CHECK_THROWS_AS(scanner.locate(3.0, 8.0), lfa::domain_error);
}

TEST_CASE("counting matches the located points and the main term") {
    const DirichletCharacter chi4(4, 1);
    ApointScanner scanner(chi4, {0.0, 0.0});
    const double T = scanner.safe_height(100.0);
    const auto rep = scanner.count(T);
    CHECK(std::abs(rep.winding_raw - std::lround(rep.winding_raw)) <= 0.25);
    CHECK(rep.main_term == doctest::Approx((T / (2 * M_PI)) *
                                           std::log(4.0 * T / (2 * M_PI * std::exp(1.0))))
                               .epsilon(1e-12));
    // main term lands near 50.19 at T = 100
    CHECK(rep.main_term == doctest::Approx(50.19).epsilon(2e-3));
    CHECK(std::abs(static_cast<double>(rep.exact_count) - rep.main_term) <=
          2.0 * std::log(4.0 * T));

    // completeness: located multiplicities sum to the winding count
    const auto pts = scanner.scan_all(T);
    long total = 0;
    for (const auto& p : pts) total += p.multiplicity;
    CHECK(total == rep.exact_count);

    // no zeros below the first ordinate
    ApointScanner low(chi4, {0.0, 0.0});
    CHECK(low.count(5.5).exact_count == 0);
}

TEST_CASE("winding additivity over subdivisions") {
    const DirichletCharacter chi4(4, 1);
    ApointScanner scanner(chi4, {0.5, 0.0});
    auto& an = scanner.analytic();
    const double w_whole = an.winding(1.0, 30.0);
    const double w_parts = an.winding(1.0, 9.7) + an.winding(9.7, 21.3) + an.winding(21.3, 30.0);
    CHECK(std::abs(w_whole - w_parts) < 1e-6);
    CHECK(std::abs(w_whole - std::lround(w_whole)) < 0.25);
}

TEST_CASE("safe heights") {
    const DirichletCharacter chi4(4, 1);
    ApointScanner scanner(chi4, {0.0, 0.0});
    const double t1 = scanner.safe_height(14.0);
    CHECK(t1 >= 14.0);
    CHECK(t1 < 15.0);
    // idempotence
    CHECK(scanner.safe_height(t1) == t1);
    // the guaranteed gap against the actual ordinates
    const auto pts = scanner.scan_all(20.0);
    double dist = 1e9;
    for (const auto& p : pts) dist = std::min(dist, std::abs(p.gamma - t1));
    CHECK(dist >= 0.5 / std::log(14.0));
}

TEST_CASE("c_a for a = 1 reflects the first nonvanishing character value") {
    CHECK(lfa::first_nonvanishing_index(DirichletCharacter(4, 1)) == 3);
    CHECK(lfa::first_nonvanishing_index(DirichletCharacter(3, 1)) == 2);
    CHECK(lfa::first_nonvanishing_index(DirichletCharacter(5, 1)) == 2);
    ApointScanner s1(DirichletCharacter(4, 1), {1.0, 0.0});
    CHECK(s1.c_a() == 3.0);
    ApointScanner s2(DirichletCharacter(4, 1), {0.5, 0.0});
    CHECK(s2.c_a() == 1.0);
}

TEST_CASE("imprimitive characters are rejected") {
    CHECK_THROWS_AS(ApointScanner(DirichletCharacter(4, 0), cplx{0.0, 0.0}),
                    lfa::domain_error);
    CHECK_THROWS_AS(ApointScanner(DirichletCharacter(8, 2), cplx{0.0, 0.0}),
                    lfa::domain_error);
}

TEST_CASE("a = 1 pathway: direct scan agrees with the q^s(L-1) transform") {
    std::vector<std::pair<cplx, cplx>> mismatches;
    CHECK(lfa::a1_transform_check(DirichletCharacter(4, 1), 30.0, &mismatches));
    CHECK(mismatches.empty());
}

TEST_CASE("cache round trip and extension") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "lfa_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const DirichletCharacter chi4(4, 1);
    ApointScanner scanner(chi4, {0.0, 0.0});
    double t_used = 0.0;
    const auto pts1 = lfa::scan_cached(scanner, dir.string(), 30.0, &t_used);
    CHECK(t_used >= 30.0);

    const auto path = lfa::apoint_cache_path(dir.string(), 4, 1, {0.0, 0.0});
    auto loaded = lfa::apoint_cache_load(path);
    REQUIRE(loaded.has_value());
    CHECK(loaded->q == 4);
    CHECK(loaded->points.size() == pts1.size());
    for (std::size_t i = 0; i < pts1.size(); ++i) {
        CHECK(loaded->points[i].beta == pts1[i].beta);
        CHECK(loaded->points[i].gamma == pts1[i].gamma);
    }

    // byte-identical rewrite
    std::ifstream in1(path);
    std::string bytes1((std::istreambuf_iterator<char>(in1)), {});
    lfa::apoint_cache_save(path, *loaded);
    std::ifstream in2(path);
    std::string bytes2((std::istreambuf_iterator<char>(in2)), {});
    CHECK(bytes1 == bytes2);

    // warm-cache read returns the same set
    ApointScanner scanner2(chi4, {0.0, 0.0});
    const auto pts2 = lfa::scan_cached(scanner2, dir.string(), 30.0, nullptr);
    REQUIRE(pts2.size() == pts1.size());
    for (std::size_t i = 0; i < pts1.size(); ++i) CHECK(pts2[i].gamma == pts1[i].gamma);

    // extension past the cached height matches a cold scan
    ApointScanner scanner3(chi4, {0.0, 0.0});
    const auto ext = lfa::scan_cached(scanner3, dir.string(), 45.0, nullptr);
    ApointScanner cold(chi4, {0.0, 0.0});
    const auto fresh = cold.scan_all(cold.safe_height(45.0));
    REQUIRE(ext.size() == fresh.size());
    for (std::size_t i = 0; i < ext.size(); ++i)
        CHECK(std::abs(ext[i].gamma - fresh[i].gamma) < 1e-9);

    fs::remove_all(dir);
}

TEST_CASE("serial and parallel scans agree point for point") {
    const DirichletCharacter chi4(4, 1);
    lfa::par::set_enabled(false);
    ApointScanner serial_scan(chi4, {0.0, 2.0});
    const auto a = serial_scan.scan_all(40.0);
    lfa::par::set_enabled(true);
    ApointScanner parallel_scan(chi4, {0.0, 2.0});
    const auto b = parallel_scan.scan_all(40.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].gamma == b[i].gamma);
        CHECK(a[i].beta == b[i].beta);
    }
}

TEST_CASE("strip right edge adapts to a") {
    const DirichletCharacter chi4(4, 1);
    CHECK(lfa::apoint_strip_right(chi4, {0.0, 0.0}) >= 3.0);
    CHECK(lfa::apoint_strip_right(chi4, {1.0, 0.0}) >= 3.0);
    CHECK(lfa::apoint_strip_right(chi4, {0.0, 2.0}) >= 3.0);
}

TEST_CASE("synthetic multiple and near-degenerate roots") {
    using lfa::AnalyticScanner;
    // a double root must come back once with multiplicity 2
    {
        const cplx rho0{0.6, 12.3};
        AnalyticScanner sc(
            [rho0](cplx s) {
                const cplx d = s - rho0;
                return std::make_pair(d * d, 2.0 * d);
            },
            -1.0, 3.0);
        const auto roots = sc.locate(10.0, 14.0);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].multiplicity == 2);
        CHECK(std::abs(roots[0].s - rho0) < 1e-7);
        CHECK(std::abs(sc.winding(10.0, 14.0) - 2.0) < 0.01);
    }
    // two simple roots 1e-3 apart must still separate
    {
        const cplx r1{0.5, 9.0005}, r2{0.5, 8.9995};
        AnalyticScanner sc(
            [r1, r2](cplx s) {
                return std::make_pair((s - r1) * (s - r2), 2.0 * s - r1 - r2);
            },
            -1.0, 3.0);
        const auto roots = sc.locate(8.0, 10.0);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0].multiplicity == 1);
        CHECK(roots[1].multiplicity == 1);
        CHECK(std::abs(roots[0].s - r2) < 1e-9);
        CHECK(std::abs(roots[1].s - r1) < 1e-9);
    }
}

TEST_CASE("awkward target values a") {
    const DirichletCharacter chi4(4, 1);
    // |a - 1| below the probe threshold exercises the dominance fallback
    CHECK(lfa::apoint_strip_right(chi4, {1.05, 0.0}) >= 3.0);
    ApointScanner near_one(chi4, {1.05, 0.0});
    const double t1 = near_one.safe_height(30.0);
    CHECK(near_one.count(t1).exact_count > 0);
    // negative imaginary part
    ApointScanner neg(chi4, {0.0, -2.0});
    const double t2 = neg.safe_height(30.0);
    long total = 0;
    for (const auto& p : neg.scan_all(t2)) total += p.multiplicity;
    CHECK(total == neg.count(t2).exact_count);
}

TEST_CASE("larger moduli go through the same machinery") {
    for (const auto& chi : lfa::primitive_characters(8)) {
        ApointScanner scanner(chi, {0.0, 0.0});
        const double T = scanner.safe_height(40.0);
        const auto rep = scanner.count(T);
        CHECK(std::abs(rep.winding_raw - std::lround(rep.winding_raw)) <= 0.25);
        CHECK(std::abs(static_cast<double>(rep.exact_count) - rep.main_term) <=
              2.0 * std::log(8.0 * T));
        long total = 0;
        for (const auto& p : scanner.scan_all(T)) total += p.multiplicity;
        CHECK(total == rep.exact_count);
    }
}

TEST_CASE("modulus 1 reduces to the Riemann zeta function") {
    const DirichletCharacter chi1(1, 0);
    REQUIRE(chi1.is_primitive());
    ApointScanner scanner(chi1, {0.0, 0.0});
    const double T = scanner.safe_height(50.0);
    const auto pts = scanner.scan_all(T);
    // the classical low zeros, gamma to 6 decimals
    const double known[] = {14.134725, 21.022040, 25.010858, 30.424876,
                            32.935062, 37.586178, 40.918719, 43.327073,
                            48.005151, 49.773832};
    REQUIRE(pts.size() >= 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(pts[i].gamma == doctest::Approx(known[i]).epsilon(1e-6));
    CHECK(scanner.count(T).exact_count == static_cast<long>(pts.size()));
}

TEST_CASE("nontrivial filter keeps beta > 0") {
    std::vector<lfa::APoint> pts(3);
    pts[0].beta = 0.5;
    pts[1].beta = -0.2;
    pts[2].beta = 1e-12;
    const auto kept = lfa::nontrivial_points(pts);
    CHECK(kept.size() == 2);
}
