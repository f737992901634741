#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cauchywell/analysis.hpp"
#include "cauchywell/refine.hpp"
#include "cauchywell/solver.hpp"

using namespace cauchywell;

namespace {

const Deviation& find_field(const std::vector<Deviation>& devs, const std::string& field)
{
    for (const auto& d : devs)
        if (d.field == field) return d;
    FAIL("missing field ", field);
    static Deviation dummy;
    return dummy;
}

}  // namespace

TEST_CASE("tolerance lookup prefers the row-qualified key")
{
    const auto cfg = ToleranceConfig::defaults();
    CHECK(cfg.lookup("I", "C", 40) == 1e-3);
    CHECK(cfg.lookup("I", "C", 30) == 1e-3);
    CHECK(cfg.lookup("I", "C", 20) == 1e-5);
    CHECK(cfg.lookup("I", "C") == 1e-5);
    CHECK(cfg.lookup("I", "E", 40) == 1e-5);
    CHECK(cfg.lookup("III", "E", 7) == 1e-5);
    CHECK(cfg.lookup("II", "alpha") == 1e-4);
    CHECK_THROWS_AS((void)cfg.lookup("IV", "E"), lookup_error);
    try {
        (void)cfg.lookup("I", "beta");
    } catch (const lookup_error& e) {
        CHECK(std::string(e.what()).find("I.C.30") != std::string::npos);
    }
}

TEST_CASE("tolerance files override defaults and reject malformed lines")
{
    std::istringstream good("# comment\n"
                            "I.E = 5e-7   # tighter\n"
                            "\n"
                            "III.E.7 = 2e-5\n");
    const auto cfg = ToleranceConfig::load(good);
    CHECK(cfg.lookup("I", "E") == 5e-7);
    CHECK(cfg.lookup("III", "E", 7) == 2e-5);
    CHECK(cfg.lookup("III", "E", 10) == 1e-5);  // untouched default
    CHECK(cfg.lookup("I", "C", 40) == 1e-3);    // defaults survive a load

    std::istringstream no_eq("I.E 1e-5\n");
    CHECK_THROWS_AS((void)ToleranceConfig::load(no_eq), std::invalid_argument);
    std::istringstream non_positive("I.E = 0\n");
    CHECK_THROWS_AS((void)ToleranceConfig::load(non_positive), std::invalid_argument);
    std::istringstream garbage("I.E = fast\n");
    CHECK_THROWS_AS((void)ToleranceConfig::load(garbage), std::invalid_argument);
}

TEST_CASE("shipped tolerance file parses to the documented policy")
{
    const auto cfg = ToleranceConfig::load_file(std::string(CAUCHYWELL_DATA_DIR) +
                                                "/tolerances.conf");
    CHECK(cfg.lookup("I", "alpha", 100) == 1e-5);
    CHECK(cfg.lookup("I", "C", 30) == 1e-3);
    CHECK(cfg.lookup("I", "C", 40) == 1e-3);
    CHECK(cfg.lookup("II", "alpha") == 1e-4);
}

TEST_CASE("ground-state comparison covers both tables at degree 20")
{
    const auto cfg = ToleranceConfig::defaults();
    const auto sol = solve(Parity::even, 20);
    const auto devs = compare(sol, cfg);

    const auto& e_row = find_field(devs, "I.E");
    CHECK(e_row.reference == 1.159234);
    CHECK(e_row.tolerance == 1e-5);
    const auto& ladder = find_field(devs, "III.E1");
    CHECK(ladder.reference == 1.159234);

    int alpha_fields = 0;
    for (const auto& d : devs) {
        CAPTURE(d.field);
        CHECK(d.deviation == std::abs(d.computed - d.reference));
        CHECK(d.pass);
        alpha_fields += d.field.find("I.alpha") == 0 ? 1 : 0;
    }
    CHECK(alpha_fields >= 4);
    CHECK(find_field(devs, "I.alpha2").computed == sol.alphas[1]);
}

TEST_CASE("relaxed normalization bound at degree 40 absorbs the printed outlier")
{
    const auto cfg = ToleranceConfig::defaults();
    const auto at40 = compare(solve(Parity::even, 40), cfg);
    const auto& c40 = find_field(at40, "I.C");
    CHECK(c40.tolerance == 1e-3);
    CHECK(c40.deviation > 1e-5);  // genuinely off at the default bound
    CHECK(c40.pass);
    for (const auto& d : at40) {
        CAPTURE(d.field);
        CHECK(d.pass);
    }

    // The degree-30 value is within the strict bound; the relaxation is idle.
    const auto at30 = compare(solve(Parity::even, 30), cfg);
    const auto& c30 = find_field(at30, "I.C");
    CHECK(c30.tolerance == 1e-3);
    CHECK(c30.deviation < 1e-5);
}

TEST_CASE("five-level table rows resolve by parity and rank")
{
    const auto cfg = ToleranceConfig::defaults();

    const auto e4 = compare(solve(Parity::odd, 21, 2), cfg);
    REQUIRE(e4.size() == 1);
    CHECK(e4[0].field == "III.E4");
    CHECK(e4[0].reference == 5.922546);
    CHECK(e4[0].pass);

    const auto e5 = compare(solve(Parity::even, 20, 3), cfg);
    REQUIRE(e5.size() == 1);
    CHECK(e5[0].field == "III.E5");
    CHECK(e5[0].reference == 7.509991);
    CHECK(e5[0].pass);
}

TEST_CASE("comparison without a matching row names what is covered")
{
    const auto cfg = ToleranceConfig::defaults();
    CHECK_THROWS_AS((void)compare(solve(Parity::odd, 9), cfg), lookup_error);
    try {
        (void)compare(solve(Parity::odd, 9), cfg);
    } catch (const lookup_error& e) {
        const std::string what = e.what();
        CHECK(what.find("parity=odd degree=9 rank=1") != std::string::npos);
        CHECK(what.find("7,8,9,10,15,20") != std::string::npos);
        CHECK(what.find("250") != std::string::npos);
    }
    // Rank 4 exceeds the five printed levels even where n matches.
    CHECK_THROWS_AS((void)compare(solve(Parity::even, 20, 4), cfg), lookup_error);
}

TEST_CASE("degree-500 coefficient list is reproduced")
{
    const auto cfg = ToleranceConfig::defaults();
    const auto sol = solve(Parity::even, 500);

    const auto head = compare_table_II(sol, cfg);
    REQUIRE(head.size() == 50);
    CHECK(head.front().field == "II.alpha2");
    CHECK(head.back().field == "II.alpha100");

    const auto full = compare_table_II(sol, cfg, 500);
    REQUIRE(full.size() == 250);
    double worst = 0.0;
    for (const auto& d : full) {
        CAPTURE(d.field);
        CHECK(d.pass);
        worst = std::max(worst, d.deviation);
    }
    CHECK(worst < 1e-6);  // far inside the printed precision

    CHECK_THROWS_AS((void)compare_table_II(solve(Parity::even, 20), cfg), lookup_error);
}

TEST_CASE("residual grid of the closed-form degree-2 state")
{
    const auto sol = solve(Parity::even, 2);
    const auto grid = solution_residual(sol, 4001);
    REQUIRE(grid.samples.size() == 4001);
    CHECK(grid.e_used == sol.E);

    // Pencil solutions null the image at the endpoints by construction.
    REQUIRE(grid.boundary.has_value());
    CHECK(grid.boundary->x == 1.0);
    CHECK(grid.boundary->psi == 0.0);
    CHECK(grid.boundary_limit <= 1e-12);

    CHECK(grid.sup == doctest::Approx(0.11880788).epsilon(1e-4));
    double arg_max = 0.0, best = -1.0;
    for (const auto& s : grid.samples)
        if (s.residual > best) {
            best = s.residual;
            arg_max = s.x;
        }
    CHECK(std::abs(std::abs(arg_max) - 0.919733) < 2e-3);

    CHECK_THROWS_AS((void)sampled_residual([](double) { return 0.0; },
                                           [](double) { return 0.0; }, 1.0, -1),
                    std::invalid_argument);
}

TEST_CASE("csv serialization writes one row per sample plus the endpoint")
{
    const auto sol = solve(Parity::even, 4);
    const auto grid = solution_residual(sol, 5);
    std::ostringstream os;
    emit_csv(grid, os);
    std::istringstream is(os.str());
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "x,psi,ad_psi,residual");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CAPTURE(lines[i]);
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 3);
    }

    // Full-precision fields survive a round trip bit-exactly.
    const auto first_comma = lines[1].find(',');
    CHECK(std::stod(lines[1].substr(0, first_comma)) == grid.samples[0].x);

    std::ostringstream empty_os;
    emit_csv(sampled_residual([](double) { return 0.0; }, [](double) { return 0.0; }, 1.0, 0),
             empty_os);
    CHECK(empty_os.str() == "x,psi,ad_psi,residual\n");
}

TEST_CASE("json documents round-trip bit-exactly")
{
    const auto sol = solve(Parity::even, 20, 2);
    std::stringstream buf;
    emit_json(sol, buf);
    const auto back = load_solution(buf);
    CHECK(back.parity == sol.parity);
    CHECK(back.degree == sol.degree);
    CHECK(back.rank == sol.rank);
    CHECK(back.E == sol.E);
    CHECK(back.norm_c == sol.norm_c);
    CHECK(back.imag_residue == sol.imag_residue);
    CHECK(back.precision_bits == 53);
    REQUIRE(back.alphas.size() == sol.alphas.size());
    for (std::size_t i = 0; i < back.alphas.size(); ++i) CHECK(back.alphas[i] == sol.alphas[i]);
    CHECK_FALSE(back.E_str.has_value());

    // A second serialization of the reloaded state is byte-identical.
    std::stringstream again;
    emit_json(back, again);
    CHECK(again.str() == buf.str());
}

TEST_CASE("json documents preserve the extended-precision eigenvalue text")
{
    RefineSettings settings;
    settings.precision_bits = 96;
    const auto sol = refine(Parity::even, 10, 1, settings);
    REQUIRE(sol.E_str.has_value());
    std::stringstream buf;
    emit_json(sol, buf);
    const auto back = load_solution(buf);
    CHECK(back.precision_bits == 96);
    REQUIRE(back.E_str.has_value());
    CHECK(*back.E_str == *sol.E_str);
}

TEST_CASE("malformed solution documents are rejected")
{
    std::istringstream wrong_schema(R"({"schema_version": 2, "parity": "even"})");
    CHECK_THROWS_AS((void)load_solution(wrong_schema), std::invalid_argument);
    std::istringstream bad_parity(
        R"({"schema_version": 1, "parity": "mixed", "degree": 2, "rank": 1,
            "E": 1.0, "C": 1.0, "alphas": [1.0], "imag_residue": 0.0,
            "precision_bits": 53})");
    CHECK_THROWS_AS((void)load_solution(bad_parity), std::invalid_argument);
    std::istringstream not_json("garbage");
    CHECK_THROWS((void)load_solution(not_json));
}
