#include <sstream>
#include <string>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "survtheta/csv_io.hpp"
#include "survtheta/json_io.hpp"
#include "survtheta/theta_test.hpp"

using namespace survtheta;

TEST_CASE("csv round trip") {
    const Dataset ds = load_dataset(SURVTHETA_LUNG_CSV);
    std::stringstream buf;
    write_csv(buf, ds);
    const Dataset back = load_dataset(buf);
    CHECK(back == ds);
}

TEST_CASE("csv column order, quotes and unknown columns") {
    std::istringstream in(
        "\xEF\xBB\xBFpopulation,\"time\",extra,cohort,censor\n"
        "1,5,x,\"ecog 1\",0\n"
        "2,7.5,y,ecog 1,1\n");
    std::vector<std::string> warnings;
    const Dataset ds = load_dataset(in, &warnings);
    CHECK(ds.size() == 2);
    CHECK(ds.cohort_name(0) == "ecog 1");
    CHECK(ds.observations()[1].time == 7.5);
    CHECK_FALSE(ds.observations()[1].event);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("extra") != std::string::npos);
}

TEST_CASE("malformed rows name the file line") {
    std::string text = "time,censor,cohort,population\n";
    for (int i = 2; i < 17; ++i) text += std::to_string(i) + ",0,a," + std::to_string(1 + i % 2) + "\n";
    text += "17,maybe,a,1\n";
    std::istringstream in(text);
    try {
        read_csv(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.row() == 17);
        CHECK(std::string(e.what()).find("row 17") != std::string::npos);
    }

    std::istringstream missing("time,censor,population\n1,0,1\n");
    CHECK_THROWS_AS(read_csv(missing), ParseError);
    std::istringstream short_row("time,censor,cohort,population\n1,0,a\n");
    CHECK_THROWS_AS(read_csv(short_row), ParseError);
    std::istringstream bad_pop("time,censor,cohort,population\n1,0,a,3\n");
    CHECK_THROWS_AS(read_csv(bad_pop), ParseError);
}

TEST_CASE("step function json round trip") {
    const StepFunction f(1.0, {1.0, 2.5}, {0.5, 0.125});
    const nlohmann::json j = f;
    CHECK(j["initial_value"] == 1.0);
    CHECK(j["steps"].size() == 2);
    CHECK(j.get<StepFunction>() == f);
}

TEST_CASE("theta report json") {
    const ThetaReport r = theta_test(load_dataset(SURVTHETA_LUNG_CSV));
    const nlohmann::json j = r;
    for (const char* key : {"theta", "sigma2", "ci_lower", "ci_upper", "p_value", "tau", "cohorts"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["cohorts"].size() == 3);
}
