#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace {

    struct RunResult {
        int exit_code{-1};
        std::string out;
    };

    RunResult run_shell(const std::string& cmd)
    {
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        RunResult res;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
        const int status = pclose(pipe);
        if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
        return res;
    }

    RunResult run_cli(const std::string& args, bool merge_stderr = false)
    {
        return run_shell(std::string(PARAMPLI_BIN) + " " + args +
                         (merge_stderr ? " 2>&1" : " 2>/dev/null"));
    }

    std::vector<std::string> split(const std::string& text, char sep)
    {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(text);
        while (std::getline(in, item, sep)) out.push_back(item);
        return out;
    }

    // Meta lines start with '#'; the first plain line is the header.
    std::vector<std::string> data_lines(const std::string& csv)
    {
        std::vector<std::string> out;
        for (const auto& line : split(csv, '\n'))
            if (!line.empty() && line[0] != '#') out.push_back(line);
        return out;
    }

    std::size_t column_of(const nlohmann::json& doc, const std::string& name)
    {
        const auto& cols = doc.at("columns");
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return i;
        REQUIRE(false);
        return 0;
    }

    void write_file(const std::string& path, const std::string& text)
    {
        std::ofstream f(path, std::ios::binary);
        REQUIRE(bool(f));
        f << text;
    }

    std::string read_file(const std::string& path)
    {
        std::ifstream f(path, std::ios::binary);
        REQUIRE(bool(f));
        std::ostringstream buf;
        buf << f.rdbuf();
        return buf.str();
    }

} // namespace

TEST_CASE("spectrum reports the Region I point as JSON")
{
    const auto res = run_cli("spectrum --delta 0.5 --kappa 0 --chi 1");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc.at("tool") == "parampli");
    CHECK(doc.at("command") == "spectrum");
    CHECK(doc.at("config").at("delta") == 0.5);
    const auto& row = doc.at("rows").at(0);
    CHECK(row.at(column_of(doc, "regime")) == "region_i");
    const double gamma = row.at(column_of(doc, "gamma")).get<double>();
    CHECK(std::abs(gamma - 0.91547118405767047) <= 1e-9);
}

TEST_CASE("spectrum with chi 0 is stable with four real frequencies")
{
    const auto res = run_cli("spectrum --delta 0.5 --kappa 0 --chi 0");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    const auto& row = doc.at("rows").at(0);
    CHECK(row.at(column_of(doc, "regime")) == "stable");
    for (const char* col : {"omega1_im", "omega2_im", "omega3_im", "omega4_im"})
        CHECK(row.at(column_of(doc, col)).get<double>() == 0.0);
    CHECK(row.at(column_of(doc, "gamma")).get<double>() == 0.0);
}

TEST_CASE("invalid input exits with code 2")
{
    CHECK(run_cli("spectrum --delta 0.5 --chi 1 --kappa 1.2").exit_code == 2);
    CHECK(run_cli("spectrum --chi 1").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("spectrum --delta 0.5 --chi 1 --format yaml").exit_code == 2);
    CHECK(run_cli("stability-map --delta-points 1").exit_code == 2);
    CHECK(run_cli("entanglement --delta 0.5 --chi 1 --t-max -1").exit_code == 2);

    // Diagnostics go to stderr.
    const auto res = run_shell(std::string(PARAMPLI_BIN) +
                               " spectrum --delta 0.5 --chi 1 --kappa 1.2 2>&1 1>/dev/null");
    CHECK(res.exit_code == 2);
    CHECK(res.out.find("kappa") != std::string::npos);
}

TEST_CASE("classify reports both routes and the threshold")
{
    const auto res = run_cli("classify --delta -1 --kappa 0.8 --chi 0.1");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    const auto& row = doc.at("rows").at(0);
    CHECK(row.at(column_of(doc, "regime")) == "stable");
    CHECK(row.at(column_of(doc, "regime_spectral")) == "stable");
    CHECK(std::abs(row.at(column_of(doc, "threshold_chi2")).get<double>() - 0.128) <= 1e-12);
    CHECK(row.at(column_of(doc, "gamma")).get<double>() == 0.0);

    // No finite threshold at delta = 0.
    const auto zero = run_cli("classify --delta 0 --kappa 0 --chi 1");
    REQUIRE(zero.exit_code == 0);
    const auto zdoc = nlohmann::json::parse(zero.out);
    CHECK(zdoc.at("rows").at(0).at(column_of(zdoc, "threshold_chi2")) == "none");
    CHECK(zdoc.at("rows").at(0).at(column_of(zdoc, "regime")) == "near_threshold");
}

TEST_CASE("entanglement CSV has the documented shape")
{
    const auto res =
        run_cli("entanglement --delta 0.5 --chi 1 --t-max 1 --t-points 11 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "t,y,y_closed,y_covariance");
    double prev_t = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 4);
        const double t = std::stod(cells[0]);
        const double y = std::stod(cells[1]);
        CHECK(t > prev_t);
        prev_t = t;
        CHECK(y >= 0.0);
        CHECK(y < 1.0);
    }
    CHECK(res.out.rfind("# tool parampli", 0) == 0);
}

TEST_CASE("intensity first row matches the coherent seed")
{
    const auto res =
        run_cli("intensity --delta 0.5 --chi 1 --t-max 2 --t-points 5 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,i_atom,i_light,log10_i_light");
    const auto first = split(lines[1], ',');
    REQUIRE(first.size() == 4);
    CHECK(std::stod(first[0]) == 0.0);
    CHECK(std::stod(first[1]) <= 1e-24);
    CHECK(std::abs(std::stod(first[2]) - 4.0) <= 1e-12);
    CHECK(std::abs(std::stod(first[3]) - std::log10(4.0)) <= 1e-12);
}

TEST_CASE("stability map regenerates the Region I line")
{
    const auto res = run_cli(
        "stability-map --kappa 0 --delta-min 0.1 --delta-max 1 --delta-points 10 --format csv");
    REQUIRE(res.exit_code == 0);
    const auto lines = data_lines(res.out);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "kappa,delta,chi2_analytic,chi2_bisect,regime_at_probe");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i], ',');
        REQUIRE(cells.size() == 5);
        const double delta = std::stod(cells[1]);
        const double analytic = std::stod(cells[2]);
        const double bisect = std::stod(cells[3]);
        CHECK(std::abs(analytic - delta / 4.0) <= 1e-15);
        CHECK(std::abs(bisect - analytic) <= 1e-6);
        CHECK(cells[4] == "region_i");
    }
    const auto last = split(lines.back(), ',');
    CHECK(std::stod(last[1]) == 1.0);
    CHECK(std::stod(last[2]) == 0.25);
}

TEST_CASE("config file fills gaps and CLI flags win")
{
    const std::string cfg = "/tmp/parampli_test_cfg.json";
    write_file(cfg, "{\"delta\": 0.5, \"chi\": 1.0, \"kappa\": 0.4}\n");

    const auto from_cfg = run_cli("spectrum --config " + cfg);
    REQUIRE(from_cfg.exit_code == 0);
    const auto doc = nlohmann::json::parse(from_cfg.out);
    CHECK(doc.at("config").at("kappa") == 0.4);
    const double gamma_cfg =
        doc.at("rows").at(0).at(column_of(doc, "gamma")).get<double>();
    CHECK(std::abs(gamma_cfg - 0.7677703058036167) <= 1e-9);

    const auto overridden = run_cli("spectrum --config " + cfg + " --kappa 0");
    REQUIRE(overridden.exit_code == 0);
    const auto doc2 = nlohmann::json::parse(overridden.out);
    CHECK(doc2.at("config").at("kappa") == 0.0);
    const double gamma_cli =
        doc2.at("rows").at(0).at(column_of(doc2, "gamma")).get<double>();
    CHECK(std::abs(gamma_cli - 0.91547118405767047) <= 1e-9);
}

TEST_CASE("config file rejects unknown keys and wrong types")
{
    const std::string bogus = "/tmp/parampli_test_bogus.json";
    write_file(bogus, "{\"bogus\": 1}\n");
    CHECK(run_cli("spectrum --delta 0.5 --chi 1 --config " + bogus).exit_code == 2);

    const std::string typed = "/tmp/parampli_test_typed.json";
    write_file(typed, "{\"delta\": \"half\", \"chi\": 1.0}\n");
    CHECK(run_cli("spectrum --config " + typed).exit_code == 2);

    CHECK(run_cli("spectrum --delta 0.5 --chi 1 --config /tmp/does_not_exist.json").exit_code ==
          2);
}

TEST_CASE("the echoed config reproduces identical rows")
{
    const auto res =
        run_cli("entanglement --delta -1 --chi 1 --t-max 3 --t-points 31 --format json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);

    const std::string cfg = "/tmp/parampli_test_echo.json";
    write_file(cfg, doc.at("config").dump());
    const auto replay = run_cli("entanglement --config " + cfg);
    REQUIRE(replay.exit_code == 0);
    const auto doc2 = nlohmann::json::parse(replay.out);
    CHECK(doc.at("rows") == doc2.at("rows"));
}

TEST_CASE("output bytes do not depend on the worker count")
{
    const std::string args =
        "entanglement --delta -1 --chi 1 --t-max 5 --t-points 101 --format csv";
    const auto serial = run_cli(args + " --threads 1");
    const auto pooled = run_cli(args + " --threads 4");
    REQUIRE(serial.exit_code == 0);
    REQUIRE(pooled.exit_code == 0);
    CHECK(serial.out == pooled.out);

    const auto env = run_shell("PARAMPLI_THREADS=2 " + std::string(PARAMPLI_BIN) + " " + args +
                               " 2>/dev/null");
    REQUIRE(env.exit_code == 0);
    CHECK(env.out == serial.out);

    CHECK(run_shell("PARAMPLI_THREADS=abc " + std::string(PARAMPLI_BIN) + " " + args +
                    " 2>/dev/null")
              .exit_code == 2);

    const auto map1 = run_cli("stability-map --delta-points 21 --threads 3 --format csv");
    const auto map2 = run_cli("stability-map --delta-points 21 --threads 3 --format csv");
    REQUIRE(map1.exit_code == 0);
    CHECK(map1.out == map2.out);
}

TEST_CASE("--out and --svg write the artifact files")
{
    const std::string out = "/tmp/parampli_test_out.csv";
    const std::string svg = "/tmp/parampli_test_plot.svg";
    const std::string args = "intensity --delta -1 --chi 1 --t-max 5 --t-points 51 --format csv";
    const auto direct = run_cli(args);
    REQUIRE(direct.exit_code == 0);
    const auto filed = run_cli(args + " --out " + out + " --svg " + svg);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());

    const std::string written = read_file(out);
    // Only the config echo differs (it records the out/svg paths); rows match.
    CHECK(data_lines(written) == data_lines(direct.out));
    const std::string plot = read_file(svg);
    CHECK(plot.rfind("<svg", 0) == 0);
    CHECK(plot.find("polyline") != std::string::npos);
    CHECK(plot.find("I_light") != std::string::npos);
}

TEST_CASE("validate with a corrupted tolerance fails with exit code 1")
{
    const auto res = run_cli("validate --tol 1e-30 --seed 3 --format csv");
    CHECK(res.exit_code == 1);
    CHECK(res.out.find("FAIL") != std::string::npos);
    CHECK(res.out.find("property,status,worst,tolerance,detail") != std::string::npos);
}
