#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#ifndef ZETA_CLI_PATH
#error "ZETA_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ZETA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("teich subcommand") {
    auto r = run("teich --p 5 --precision 3 --a 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "57\n");
}

TEST_CASE("count subcommand") {
    auto r = run("count --p 5 --s 2 --poly \"x1^3+x2^3+x3^3\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "36\n");

    auto t = run("count --p 5 --s 1 --poly \"x1^3+x2^3+x3^3\" --torus --json");
    CHECK(t.exit_code == 0);
    auto j = nlohmann::json::parse(t.out);
    CHECK(j["torus"] == true);
    CHECK(j["count"].is_number_integer());
}

TEST_CASE("zeta-direct on the Fermat cubic") {
    auto r = run("zeta-direct --p 5 --poly \"x1^3+x2^3+x3^3\" --precision 8 --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["numerator"] == nlohmann::json::array({1, 0, 5}));
    CHECK(j["numerator_is_inverted"] == false);
    CHECK(j["counts"] == nlohmann::json::array({{1, 6}, {2, 36}}));
    CHECK(j["checks"]["weil_moduli"] == true);
    CHECK(j["checks"]["functional_equation"] == true);
}

TEST_CASE("zeta-diagonal cubic") {
    auto r = run("zeta-diagonal --p 5 --d 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1 + 5*T^2") != std::string::npos);
}

TEST_CASE("zeta-dwork4 JSON schema") {
    auto r = run("zeta-dwork4 --p 13 --gamma 2 --skip-n2 --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 13);
    CHECK(j["n"] == 4);
    CHECK(j["gamma"] == 2);
    CHECK(j["method"] == "deformation");
    CHECK(j["numerator"].size() == 22);
    CHECK(j["numerator_is_inverted"] == true);
    CHECK(j["denominator_factors"] ==
          nlohmann::json::array({{1, 0}, {1, 1}, {1, 2}}));
    CHECK(j["checks"]["oracle_n1"] == true);
    CHECK(j["checks"]["newton_symmetric"] == true);
}

TEST_CASE("gamma and newton-polygon subcommands") {
    // Gamma_13(1/2)^2 = -1: value v satisfies v^2 + 1 = 0 mod 13^4
    auto r = run("gamma --p 13 --precision 4 --num 1 --den 2");
    CHECK(r.exit_code == 0);
    long long v = std::stoll(r.out);
    CHECK((v * v + 1) % (13LL * 13 * 13 * 13) == 0);

    auto np = run("newton-polygon --p 5 --coeffs 1,0,5 --json");
    CHECK(np.exit_code == 0);
    auto j = nlohmann::json::parse(np.out);
    REQUIRE(j["slopes"].size() == 1);
    CHECK(j["slopes"][0][0] == 0.5);
    CHECK(j["slopes"][0][1] == 2);
}

TEST_CASE("exit codes") {
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("teich --p 5").exit_code == 2);          // missing required flags
    CHECK(run("zeta-dwork4 --p 13 --gamma 5").exit_code == 1);  // 5^4 = 1 mod 13
    CHECK(run("--help").exit_code == 0);
}
