#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gldens/io.hpp"
#include "gldens/pipeline.hpp"

using namespace gldens;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TmpOut {
    fs::path root;
    TmpOut() : root(fs::temp_directory_path() / "gldens_pipeline_test") { fs::remove_all(root); }
    ~TmpOut() { fs::remove_all(root); }
};

} // namespace

TEST_CASE("validate run writes a complete tree") {
    TmpOut tmp;
    ExperimentConfig cfg;
    cfg.validate_samples = 500;
    pipeline::RunDir rd = pipeline::prepare_run_dir(tmp.root, "validate-s42");
    CHECK(pipeline::run_validate(cfg, rd) == 0);
    CHECK(fs::exists(rd.root / "config.resolved"));
    CHECK(fs::exists(rd.root / "report.json"));
    std::string manifest = slurp(rd.root / "MANIFEST");
    CHECK(manifest.rfind("complete: true", 0) == 0);
    std::string rep = slurp(rd.root / "report.json");
    CHECK(rep.find("\"format_version\": \"gldens-report-1\"") != std::string::npos);
    CHECK(rep.find("config_resolved") != std::string::npos);
}

TEST_CASE("iterate run emits the recursion table") {
    TmpOut tmp;
    pipeline::RunDir rd = pipeline::prepare_run_dir(tmp.root, "iterate-s1");
    CHECK(pipeline::run_iterate(1e-6, 1.0, 1.5, 2, 60, /*find_threshold=*/true, rd) == 0);
    std::string csv = slurp(rd.root / "tables" / "recursion.csv");
    CHECK(csv.rfind("k,beta", 0) == 0);
    std::string rep = slurp(rd.root / "report.json");
    CHECK(rep.find("\"verdict\": \"vanishes\"") != std::string::npos);
    CHECK(rep.find("threshold") != std::string::npos);
}

TEST_CASE("profile run writes the x,u,residual table") {
    TmpOut tmp;
    pipeline::RunDir rd = pipeline::prepare_run_dir(tmp.root, "profile1d-s1");
    CHECK(pipeline::run_profile1d(2.0, 2.0, 0.999, 1e-3, /*classify=*/false, rd) == 0);
    std::string csv = slurp(rd.root / "tables" / "profile.csv");
    CHECK(csv.rfind("x,u,residual", 0) == 0);
}

TEST_CASE("ledger JSON round trips") {
    TmpOut tmp;
    fs::create_directories(tmp.root);
    ConstantsLedger led;
    led.sigma = 1.25;
    led.h_tilde = 0.27;
    led.rho_tilde = 0.86;
    led.r_tilde = 1.0;
    led.delta_tilde = 1.25;
    led.R0 = 3.72;
    led.delta = 0.3125;
    led.witness = {0.8, -0.1, 0.0};
    led.witness_value = 0.75;
    led.witness_found = true;
    led.seed_ball_ok = true;
    pipeline::save_ledger(led, tmp.root / "ledger.json");
    ConstantsLedger back = pipeline::load_ledger(tmp.root / "ledger.json");
    CHECK(back.sigma == led.sigma);
    CHECK(back.R0 == led.R0);
    CHECK(back.witness[0] == led.witness[0]);
    CHECK(back.witness_found);
    CHECK(back.seed_ball_ok);
}

TEST_CASE("SVG log-log plot is structurally sound") {
    TmpOut tmp;
    fs::create_directories(tmp.root);
    std::vector<std::pair<double, double>> pts{{8.0, 41.0}, {16.0, 81.0}, {32.0, 162.0}};
    write_svg_loglog(tmp.root / "plot.svg", "energy", {{"J", pts}});
    std::string svg = slurp(tmp.root / "plot.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    std::size_t circles = 0;
    for (std::size_t at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1))
        ++circles;
    CHECK(circles == pts.size());
}
