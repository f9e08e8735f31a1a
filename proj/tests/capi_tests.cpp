// Surface tests for the shared-library C API: status codes, report
// accessors, the JSON envelope, and determinism of repeated calls.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "roughforms.h"

using nlohmann::json;

namespace {

// Runs a driver call and hands back the parsed JSON envelope.
json envelope_of(rf_report* rep) {
  char* text = rf_report_json(rep);
  REQUIRE(text != nullptr);
  json j = json::parse(text);
  rf_string_free(text);
  return j;
}

rf_sew_options tight() {
  rf_sew_options o;
  rf_sew_options_init(&o);
  o.extrapolate = 1;
  o.abs_tol = 1e-9;
  o.max_level = 18;
  return o;
}

}  // namespace

TEST_CASE("abi version and status names") {
  CHECK(rf_abi_version() == RF_ABI_VERSION);
  CHECK(std::strcmp(rf_status_name(RF_OK), "RF_OK") == 0);
  CHECK(std::strcmp(rf_status_name(RF_ERROR_SYNTAX), "RF_ERROR_SYNTAX") == 0);
  CHECK(std::strcmp(rf_status_name(RF_ERROR_NONCONVERGENT),
                    "RF_ERROR_NONCONVERGENT") == 0);
  CHECK(std::strcmp(rf_status_name(RF_ERROR_INTERNAL), "RF_ERROR_INTERNAL") ==
        0);
}

TEST_CASE("suggested exit codes follow the documented contract") {
  CHECK(rf_suggested_exit_code(RF_OK) == 0);
  CHECK(rf_suggested_exit_code(RF_ERROR_SYNTAX) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_UNKNOWN_IDENTIFIER) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_ARITY) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_DOMAIN) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_DIMENSION) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_DEGREE) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_PERMUTATION) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_PARAMETER) == 2);
  CHECK(rf_suggested_exit_code(RF_ERROR_NONCONVERGENT) == 3);
  CHECK(rf_suggested_exit_code(RF_ERROR_BUDGET) == 4);
  CHECK(rf_suggested_exit_code(RF_ERROR_ORACLE) == 4);
  CHECK(rf_suggested_exit_code(RF_ERROR_INTERNAL) == 4);
}

TEST_CASE("sew options initialize to the documented defaults") {
  rf_sew_options o;
  rf_sew_options_init(&o);
  CHECK(o.max_level == -1);
  CHECK(o.abs_tol == 1e-10);
  CHECK(o.rel_tol == 1e-8);
  CHECK(o.variant == 0);
  CHECK(o.extrapolate == 0);
  CHECK(o.divergence_ratio == 0.95);
  CHECK(o.divergence_window == 4);
  CHECK(o.threads == 1);
  CHECK(o.kahan == 0);
  CHECK(o.symmetrize == 0);
}

TEST_CASE("young driver computes x d(x^2) and fills the report") {
  const rf_sew_options o = tight();
  rf_report* rep = nullptr;
  rf_status st = rf_young("x", "x^2", "0;1", nullptr, &o, &rep);
  REQUIRE(st == RF_OK);
  REQUIRE(rep != nullptr);
  CHECK(rf_report_value(rep) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK(rf_report_converged(rep) == 1);
  CHECK(std::string(rf_report_status(rep)) == "converged");
  CHECK(rf_report_error(rep) >= 0.0);

  json j = envelope_of(rep);
  CHECK(j["schema"] == "roughforms/1");
  CHECK(j["command"] == "young");
  CHECK(j["config"]["f"] == "x");
  CHECK(j["config"]["g"] == "x^2");
  CHECK(j["result"]["provenance"] == "young");
  CHECK(j["result"]["outer"]["levels"].is_array());

  char* csv = rf_report_csv(rep);
  REQUIRE(csv != nullptr);
  CHECK(std::string(csv).rfind("level,n_leaves,partial_sum,increment,"
                               "rate_estimate",
                               0) == 0);
  rf_string_free(csv);
  rf_report_free(rep);
}

TEST_CASE("identical configs give byte-identical json") {
  const rf_sew_options o = tight();
  rf_report* a = nullptr;
  rf_report* b = nullptr;
  REQUIRE(rf_young("x", "x^2", "0;1", "", &o, &a) == RF_OK);
  REQUIRE(rf_young("x", "x^2", "0;1", "", &o, &b) == RF_OK);
  char* ja = rf_report_json(a);
  char* jb = rf_report_json(b);
  CHECK(std::strcmp(ja, jb) == 0);
  rf_string_free(ja);
  rf_string_free(jb);
  rf_report_free(a);
  rf_report_free(b);
}

TEST_CASE("invalid inputs map to parameter and syntax statuses") {
  rf_report* rep = nullptr;

  CHECK(rf_young(nullptr, "x", "0;1", nullptr, nullptr, &rep) ==
        RF_ERROR_PARAMETER);
  CHECK(rep == nullptr);
  CHECK(std::strlen(rf_last_error()) > 0);

  CHECK(rf_young("x+", "x", "0;1", nullptr, nullptr, &rep) ==
        RF_ERROR_SYNTAX);
  CHECK(rep == nullptr);

  CHECK(rf_young("x", "x", "0;1;2", nullptr, nullptr, &rep) ==
        RF_ERROR_DEGREE);
  CHECK(std::string(rf_last_error()).find("segment") != std::string::npos);

  CHECK(rf_young("x", "x", "0,0;1", nullptr, nullptr, &rep) ==
        RF_ERROR_PARAMETER);

  CHECK(rf_young("x", "x", "0;1", "no-such-germ", nullptr, &rep) ==
        RF_ERROR_PARAMETER);

  CHECK(rf_zust("1", "x", "y", "0;1", nullptr, &rep) == RF_ERROR_DEGREE);

  CHECK(rf_pure_area_1d("4,notanumber", "1", "0;1", nullptr, &rep) ==
        RF_ERROR_PARAMETER);

  CHECK(rf_pure_area_2d("4", 1.5, "0,0;1,0;0,1", nullptr, &rep) ==
        RF_ERROR_PARAMETER);
}

TEST_CASE("zust driver recovers the signed area") {
  rf_report* rep = nullptr;
  REQUIRE(rf_zust("1", "x", "y", "0,0;1,0;0,1", nullptr, &rep) == RF_OK);
  CHECK(rf_report_value(rep) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rf_report_converged(rep) == 1);
  json j = envelope_of(rep);
  CHECK(j["command"] == "zust");
  rf_report_free(rep);
}

TEST_CASE("stokes driver reports both sides and their defect") {
  const rf_sew_options o = tight();
  rf_report* rep = nullptr;
  REQUIRE(rf_stokes("x", "y", "0,0;1,0;0,1", &o, &rep) == RF_OK);
  json j = envelope_of(rep);
  CHECK(j["result"]["lhs"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(j["result"]["rhs"].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(rf_report_value(rep) <= 1e-6);
  rf_report_free(rep);
}

TEST_CASE("curve pullback driver matches substitution") {
  const rf_sew_options o = tight();
  rf_report* rep = nullptr;
  REQUIRE(rf_pullback_curve("x", "y", "2*x+1;3*x", "0;1", &o, &rep) == RF_OK);
  json j = envelope_of(rep);
  CHECK(j["result"]["pulled"]["value"].get<double>() ==
        doctest::Approx(6.0).epsilon(1e-8));
  CHECK(j["result"]["pulled_vs_direct"].get<double>() <= 1e-8);
  rf_report_free(rep);
}

TEST_CASE("pure area tables carry one row per frequency") {
  rf_report* rep = nullptr;
  REQUIRE(rf_pure_area_1d("10,100", "1", "0;1", nullptr, &rep) == RF_OK);
  json j = envelope_of(rep);
  REQUIRE(j["result"]["rows"].size() == 2);
  CHECK(j["result"]["rows"][0]["abs_error"].get<double>() <= 0.1);
  CHECK(j["result"]["rows"][1]["abs_error"].get<double>() <= 0.01);
  char* csv = rf_report_csv(rep);
  CHECK(std::string(csv).rfind(
            "n,value,corrected,reference,abs_error,corrected_defect", 0) == 0);
  rf_string_free(csv);
  rf_report_free(rep);
}

TEST_CASE("gauge seminorm is reproducible for a fixed seed") {
  rf_report* a = nullptr;
  rf_report* b = nullptr;
  REQUIRE(rf_gauge_seminorm("x", "x^2", "0;1", 1.5, 0.0, 7, &a) == RF_OK);
  REQUIRE(rf_gauge_seminorm("x", "x^2", "0;1", 1.5, 0.0, 7, &b) == RF_OK);
  CHECK(rf_report_value(a) > 0.0);
  CHECK(rf_report_value(a) == rf_report_value(b));
  json j = envelope_of(a);
  CHECK(j["result"]["samples"].get<long long>() > 1000);
  CHECK(j["config"]["seed"] == 7);
  rf_report_free(a);
  rf_report_free(b);
}

TEST_CASE("abs-increment hook sews to the total variation") {
  rf_report* rep = nullptr;
  REQUIRE(rf_young("x", "abs(x)", "-1;1", "abs-increment", nullptr, &rep) ==
          RF_OK);
  CHECK(rf_report_value(rep) == doctest::Approx(2.0).epsilon(1e-9));
  rf_report_free(rep);
}

TEST_CASE("certification passes honest germs and rejects the hook") {
  rf_sew_options o;
  rf_sew_options_init(&o);
  rf_report* rep = nullptr;
  REQUIRE(rf_certify("x", "abs(x)", "-1;1", "", &o, 1e-3, &rep) == RF_OK);
  CHECK(rf_report_converged(rep) == 1);
  json j = envelope_of(rep);
  CHECK(j["result"]["pass"] == true);
  rf_report_free(rep);

  rep = nullptr;
  REQUIRE(rf_certify("x", "abs(x)", "-1;1", "abs-increment", &o, 1e-3,
                     &rep) == RF_OK);
  CHECK(rf_report_converged(rep) == 0);
  json h = envelope_of(rep);
  CHECK(h["result"]["pass"] == false);
  char* csv = rf_report_csv(rep);
  CHECK(std::string(csv).rfind("name,defect,pass", 0) == 0);
  rf_string_free(csv);
  rf_report_free(rep);
}

TEST_CASE("divergent sewing surfaces as a nonconvergent status") {
  rf_sew_options o;
  rf_sew_options_init(&o);
  o.divergence_window = 1;
  rf_report* rep = nullptr;
  // Quadratic-increment hookless proxy: integrating against a germ whose
  // level sums keep growing. The coordinate pair with a huge relative
  // tolerance disabled converges, so use the certified-diverging pair of
  // matched low regularity instead.
  rf_status st = rf_young("weierstrass(0.5, 8, 30, x)",
                          "weierstrass(0.5, 8, 30, x)", "0;1", nullptr, &o,
                          &rep);
  CHECK(st == RF_ERROR_NONCONVERGENT);
  CHECK(rep == nullptr);
  CHECK(rf_suggested_exit_code(st) == 3);
}
