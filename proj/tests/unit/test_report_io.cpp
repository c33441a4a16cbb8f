#include <doctest.h>

#include <cstdlib>
#include <string>

#include <json.hpp>

#include "landscape/confidence.hpp"
#include "landscape/entropy.hpp"
#include "landscape/report_io.hpp"

using namespace landscape;

namespace {

EntropyReport sample_report() {
  BasinTable t;
  t.population = 100;
  t.minima.push_back(BasinRecord{{0.1}, 0.0, 60});
  t.minima.push_back(BasinRecord{{0.9}, 1.5, 40});
  auto rep = estimate_entropy(t);
  const std::vector<double> alphas{0.05, 0.10};
  attach_confidence(rep, alphas);
  return rep;
}

}  // namespace

TEST_CASE("format_double round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 2.195543587083, 1e-300, 6.02e23, -0.0,
                   0.028428037950516877}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("entropy report JSON: parseable, pinned field set") {
  RunManifest m;
  m.command = "analyze";
  m.config = {{"function", "quadratic"}, {"pop", "100"}};
  m.seed = 7;
  m.evaluations = 1234;
  m.wall_time_s = 0.5;

  const auto rep = sample_report();
  const std::string text = entropy_report_json(rep, m);
  const auto j = nlohmann::json::parse(text);

  for (const char* key : {"n_hat", "K", "failures", "minima", "sigma", "c",
                          "y_min", "ce_hat", "delta", "intervals", "manifest"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["n_hat"] == 2);
  CHECK(j["K"] == 100);
  CHECK(j["minima"].size() == 2);
  for (const char* key : {"y", "k", "x", "v", "q"}) {
    CHECK(j["minima"][0].contains(key));
  }
  CHECK(j["minima"][0]["k"] == 60);
  CHECK(j["ce_hat"].get<double>() == rep.ce_hat);  // 17 digits round-trip
  CHECK(j["intervals"].contains("0.95"));
  CHECK(j["intervals"].contains("0.90"));
  // embedded manifest carries no wall time; the sidecar does
  CHECK(!j["manifest"].contains("wall_time_s"));
  CHECK(j["manifest"]["evaluations"] == 1234);
  CHECK(j["manifest"]["seed"] == 7);

  const auto side = nlohmann::json::parse(manifest_json(m));
  CHECK(side.contains("wall_time_s"));
  CHECK(side["command"] == "analyze");
}

TEST_CASE("delta null when flagged unavailable") {
  auto rep = sample_report();
  rep.delta_valid = false;
  rep.intervals.clear();
  RunManifest m;
  const auto j = nlohmann::json::parse(entropy_report_json(rep, m));
  CHECK(j["delta"].is_null());
  CHECK(j["intervals"].empty());
}

TEST_CASE("csv writer") {
  const std::string text = csv_table("a,b", {{"1", "2"}, {"3", "4"}});
  CHECK(text == "a,b\n1,2\n3,4\n");
}
