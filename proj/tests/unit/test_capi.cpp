#include <gtest/gtest.h>

#include <string>

#include "dioph/dioph.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dioph_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, StatusStrings) {
  EXPECT_STREQ(dioph_status_string(DIOPH_OK), "ok");
  EXPECT_STREQ(dioph_status_string(DIOPH_ODD_N), "n must be even");
}

TEST(CApi, PresetsAndDescribe) {
  char* names = nullptr;
  ASSERT_EQ(dioph_preset_names(&names), DIOPH_OK);
  EXPECT_NE(take(names).find("liouville2"), std::string::npos);
  dioph_number* z = nullptr;
  ASSERT_EQ(dioph_number_preset("cbrt2", &z), DIOPH_OK);
  char* js = nullptr;
  ASSERT_EQ(dioph_number_describe(z, &js), DIOPH_OK);
  EXPECT_NE(take(js).find("\"minpoly\""), std::string::npos);
  char *lo = nullptr, *hi = nullptr;
  ASSERT_EQ(dioph_refine(z, 20, &lo, &hi), DIOPH_OK);
  EXPECT_FALSE(take(lo).empty());
  EXPECT_FALSE(take(hi).empty());
  dioph_number_free(z);
}

TEST(CApi, ErrorsCarryMessages) {
  dioph_number* z = nullptr;
  EXPECT_EQ(dioph_number_preset("nope", &z), DIOPH_INVALID_ARGUMENT);
  EXPECT_NE(std::string(dioph_last_error()), "");
  EXPECT_EQ(dioph_number_from_json("{\"kind\":\"cf\"}", &z), DIOPH_INVALID_DESCRIPTOR);
  EXPECT_EQ(dioph_number_from_json(nullptr, &z), DIOPH_INVALID_ARGUMENT);
  int64_t h[12] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};
  char* js = nullptr;
  EXPECT_EQ(dioph_lambda_det(3, h, 12, &js), DIOPH_ODD_N);
  double w = 0;
  EXPECT_EQ(dioph_dbound(4, 3.0, &w), DIOPH_DOMAIN_ERROR);
  EXPECT_GT(w, 0.0);
  ASSERT_EQ(dioph_number_preset("sqrt2", &z), DIOPH_OK);
  int64_t p[] = {-2, 0, 1};
  int zero = 0;
  ASSERT_EQ(dioph_is_zero_at(p, 3, z, &zero), DIOPH_OK);
  EXPECT_EQ(zero, 1);
  EXPECT_EQ(std::string(dioph_last_error()), "");
  dioph_number_free(z);
}

TEST(CApi, BestApproxRoundTrip) {
  dioph_number* z = nullptr;
  ASSERT_EQ(dioph_number_preset("liouville2", &z), DIOPH_OK);
  dioph_sequence* s = nullptr;
  dioph_best_approx_options o{};
  o.jobs = 2;
  ASSERT_EQ(dioph_best_approx(z, 1, 100, &o, &s), DIOPH_OK);
  EXPECT_GT(dioph_sequence_size(s), 3u);
  char* jl = nullptr;
  ASSERT_EQ(dioph_sequence_jsonl(s, &jl), DIOPH_OK);
  std::string text = take(jl);
  EXPECT_NE(text.find("64*T - 49"), std::string::npos);
  EXPECT_NE(text.find("dioph.bestapprox.v1"), std::string::npos);
  dioph_sequence* again = nullptr;
  ASSERT_EQ(dioph_best_approx(z, 1, 100, nullptr, &again), DIOPH_OK);
  char* jl2 = nullptr;
  ASSERT_EQ(dioph_sequence_jsonl(again, &jl2), DIOPH_OK);
  EXPECT_EQ(take(jl2), text);
  char* ex = nullptr;
  ASSERT_EQ(dioph_exponents(s, 1, &ex), DIOPH_OK);
  EXPECT_NE(take(ex).find("\"w_lower_text\": \"3\""), std::string::npos);
  dioph_sequence_free(again);
  dioph_sequence_free(s);
  dioph_number_free(z);
}

TEST(CApi, CompareAbs) {
  dioph_number* z = nullptr;
  ASSERT_EQ(dioph_number_preset("sqrt2", &z), DIOPH_OK);
  int64_t p[] = {0, 1}, q[] = {0, -1}, r[] = {-1, 1};
  int out = 5;
  ASSERT_EQ(dioph_compare_abs(p, 2, q, 2, z, 0, &out), DIOPH_OK);
  EXPECT_EQ(out, 0);
  ASSERT_EQ(dioph_compare_abs(r, 2, p, 2, z, 0, &out), DIOPH_OK);
  EXPECT_EQ(out, -1);
  dioph_number_free(z);
}

TEST(CApi, ReportsAndAudit) {
  char* csv = nullptr;
  ASSERT_EQ(dioph_bounds_csv(2, 10, nullptr, 0, &csv), DIOPH_OK);
  EXPECT_NE(take(csv).find("6.30277563773"), std::string::npos);
  dioph_number* z = nullptr;
  ASSERT_EQ(dioph_number_preset("cbrt2", &z), DIOPH_OK);
  dioph_sequence *s = nullptr, *lower = nullptr;
  ASSERT_EQ(dioph_best_approx(z, 2, 200, nullptr, &s), DIOPH_OK);
  ASSERT_EQ(dioph_best_approx(z, 1, 200, nullptr, &lower), DIOPH_OK);
  char *sc = nullptr, *sj = nullptr;
  ASSERT_EQ(dioph_span_scan(s, 3, 0, 3, &sc, &sj), DIOPH_OK);
  EXPECT_NE(take(sj).find("\"psi_hat\""), std::string::npos);
  EXPECT_NE(take(sc).find("k,m,rank"), std::string::npos);
  char *aj = nullptr, *at = nullptr;
  int violation = -1;
  ASSERT_EQ(dioph_audit(s, lower, 0, 0, 3, 1, &aj, &at, &violation), DIOPH_OK);
  EXPECT_EQ(violation, 0);
  EXPECT_NE(take(aj).find("dioph.audit.v1"), std::string::npos);
  EXPECT_NE(take(at).find("wmono"), std::string::npos);
  char* lj = nullptr;
  ASSERT_EQ(dioph_lambda_det_sequence(s, 2, &lj), DIOPH_OK);
  EXPECT_NE(take(lj).find("\"agree\": true"), std::string::npos);
  char *gc = nullptr, *gm = nullptr;
  ASSERT_EQ(dioph_ss_graph(z, 1, "0", "5/2", 10, 40, 2, &gc, &gm), DIOPH_OK);
  EXPECT_NE(take(gm).find("minkowski_constant"), std::string::npos);
  EXPECT_EQ(take(gc).substr(0, 2), "q,");
  EXPECT_EQ(dioph_ss_graph(z, 1, "3", "1", 10, 40, 1, &gc, &gm), DIOPH_INVALID_ARGUMENT);
  char* gf = nullptr;
  ASSERT_EQ(dioph_gelfond(2, 5, 1000, 1, &gf), DIOPH_OK);
  EXPECT_NE(take(gf).find("\"within\": true"), std::string::npos);
  dioph_sequence_free(lower);
  dioph_sequence_free(s);
  dioph_number_free(z);
}
