#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thetacycle/basis_cache.hpp"
#include "thetacycle/report_io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <thread>

using namespace thetacycle;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

CycleReport small_report() {
    CycleOptions opts;
    opts.i_max = 15;
    return compute_cycle(FormExpr::delta(), Modulus(13, 2), opts);
}

bool rows_equal(const std::vector<QSeries>& a, const std::vector<QSeries>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].precision() != b[i].precision()) return false;
        if (!agree_to(a[i], b[i], a[i].precision())) return false;
    }
    return true;
}

} // namespace

TEST_CASE("CSV layout of a mod-p report") {
    CycleReport r = compute_cycle(FormExpr::delta(), Modulus(13, 1));
    std::string csv = report_to_csv(r);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "i,n,i_prime,weight_filt,factor_filt,classification,exceptional,status");
    std::getline(lines, line);
    CHECK(line == "0,0,0,12,12,boundary,false,exact");
    std::getline(lines, line);
    CHECK(line == "1,0,1,26,26,fall,false,exact");
    std::getline(lines, line);
    CHECK(line == "2,0,2,16,16,low,false,exact");
    int rows = 3;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 13);
}

TEST_CASE("vanished records render dashes in both filtration columns") {
    CycleReport r;
    r.mod = Modulus(5, 2);
    r.form = "0";
    FiltrationRecord rec;
    rec.i = 0;
    rec.zero = true;
    r.records.push_back(rec);
    std::string csv = report_to_csv(r);
    CHECK(csv.find("0,0,0,-,-,boundary,false,") != std::string::npos);
}

TEST_CASE("JSON report round-trips every record field") {
    CycleReport r = small_report();
    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["p"] == 13);
    CHECK(j["m"] == 2);
    CHECK(j["k"] == 12);
    CHECK(j["form"] == "Delta");
    CHECK(j["i_max"] == 15);
    CHECK(j["theorem_mode"] == true);
    CHECK(j["ordinary"] == true);
    CHECK(j["periodic_from"] == 2);
    CHECK(j["exceptional_indices"] == nlohmann::json::array());   // none below 66
    CHECK(j["coverage"]["total"] == r.coverage.total);
    CHECK(j["coverage"]["exact"] == r.coverage.exact);
    REQUIRE(j["records"].size() == r.records.size());
    for (std::size_t t = 0; t < r.records.size(); ++t) {
        const auto& jr = j["records"][t];
        const auto& rr = r.records[t];
        CHECK(jr["i"] == rr.i);
        CHECK(jr["n"] == rr.n);
        CHECK(jr["i_prime"] == rr.i_prime);
        CHECK(jr["weight_filt"] == rr.weight_filt);
        CHECK(jr["factor_filt"] == rr.factor_filt);
        CHECK(jr["classification"] == to_string(rr.classification));
        CHECK(jr["status"] == to_string(rr.status));
        CHECK(jr["exceptional"] == rr.exceptional);
    }
}

TEST_CASE("SVG output is deterministic and shape-complete") {
    CycleReport r = small_report();
    std::string svg = report_to_svg(r);
    CHECK(svg == report_to_svg(r));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    // exceptional indices are absent at i <= 15, so no vertical rules
    CHECK(svg.find("stroke-dasharray") == std::string::npos);   // single solid panel

    CycleReport companion = compute_cycle(FormExpr::delta(), Modulus(13, 1));
    std::string dual = report_to_svg(r, &companion);
    CHECK(dual.find("stroke-dasharray") != std::string::npos);  // dashed mod-p panel
    CHECK(dual.size() > svg.size());
    std::string single_modp = report_to_svg(companion);
    CHECK(single_modp.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("low points are circled and exceptional indices ruled in the SVG") {
    CycleReport r = compute_cycle(FormExpr::delta(), Modulus(13, 2));
    std::string svg = report_to_svg(r);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
}

TEST_CASE("write_report_files writes exactly the rendered strings") {
    CycleReport r = small_report();
    fs::path dir = fs::temp_directory_path() / "thetacycle_test_io";
    fs::remove_all(dir);
    write_report_files(r, dir / "report", true, true);
    CHECK(slurp(dir / "report.csv") == report_to_csv(r));
    CHECK(slurp(dir / "report.json") == report_to_json(r));
    // no temporary droppings
    for (const auto& e : fs::directory_iterator(dir))
        CHECK(e.path().extension() != ".tmp");
    write_report_files(r, dir / "report", true, false);
    CHECK(slurp(dir / "report.csv") == report_to_csv(r));
    fs::remove_all(dir);
}

TEST_CASE("atomic_write_file creates parents and replaces content") {
    fs::path dir = fs::temp_directory_path() / "thetacycle_test_atomic" / "deep";
    fs::remove_all(dir.parent_path());
    atomic_write_file(dir / "x.txt", "first");
    CHECK(slurp(dir / "x.txt") == "first");
    atomic_write_file(dir / "x.txt", "second");
    CHECK(slurp(dir / "x.txt") == "second");
    fs::remove_all(dir.parent_path());
}

TEST_CASE("basis serialization round-trips") {
    Modulus mod(13, 2);
    EchelonBasis eb = echelon_basis(24, mod, 9);
    std::string text = serialize_basis(eb);
    CHECK(text.rfind("24 13 2 9 3\n", 0) == 0);
    EchelonBasis back = deserialize_basis(text);
    CHECK(back.weight == eb.weight);
    CHECK(back.mod == eb.mod);
    CHECK(back.precision == eb.precision);
    CHECK(rows_equal(back.rows, eb.rows));
    CHECK_THROWS(deserialize_basis("24 13\n"));
    CHECK_THROWS(deserialize_basis("24 13 2 9 3\n1 0 0\n"));   // truncated rows
}

TEST_CASE("the disk cache persists echelon bases across memory resets") {
    fs::path dir = fs::temp_directory_path() / "thetacycle_test_cache";
    fs::remove_all(dir);
    BasisCache& cache = BasisCache::instance();
    cache.set_directory(dir.string());
    cache.clear_memory();

    Modulus mod(13, 2);
    auto fresh = cache.get(12, mod, 8);
    REQUIRE(fresh);
    CHECK(fresh->dim() == 2);
    fs::path file = dir / "basis_w12_p13_m2_N8.txt";
    REQUIRE(fs::exists(file));
    CHECK(rows_equal(deserialize_basis(slurp(file)).rows, fresh->rows));

    // memory hit: same object back
    CHECK(cache.get(12, mod, 8).get() == fresh.get());

    // cold start: reread from disk, equal content
    cache.clear_memory();
    auto warm = cache.get(12, mod, 8);
    CHECK(rows_equal(warm->rows, fresh->rows));

    // concurrent access converges on one copy per key
    cache.clear_memory();
    std::vector<std::shared_ptr<const EchelonBasis>> got(8);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] { got[t] = cache.get(36, mod, 12); });
    for (auto& th : threads) th.join();
    for (int t = 0; t < 8; ++t) CHECK(rows_equal(got[t]->rows, got[0]->rows));

    cache.set_directory("");
    cache.clear_memory();
    fs::remove_all(dir);
}
