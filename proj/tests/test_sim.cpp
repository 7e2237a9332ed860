#include <algorithm>
#include <sstream>

#include "aec/block_store.hpp"
#include "aec/lattice.hpp"
#include "aec/repair.hpp"
#include "aec/scenario.hpp"
#include "doctest.h"

using namespace aec;

namespace {

bool same_metrics(const ScenarioMetrics& a, const ScenarioMetrics& b) {
  return a.initially_unavailable_data == b.initially_unavailable_data &&
         a.repaired_data == b.repaired_data && a.data_loss == b.data_loss &&
         a.vulnerable_data == b.vulnerable_data &&
         a.single_failure_fraction == b.single_failure_fraction &&
         a.round_repairs == b.round_repairs &&
         a.round_data_repairs == b.round_data_repairs && a.rounds == b.rounds &&
         a.reads_histogram == b.reads_histogram;
}

}  // namespace

TEST_CASE("splitmix64 stream is pinned to the reference sequence") {
  Rng rng(0);
  CHECK(rng.next_u64() == 0xe220a8397b1dcdafull);
  CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ull);
  CHECK(rng.next_u64() == 0x06c45d188009454full);
}

TEST_CASE("placement is deterministic, uniform and stream-separated") {
  const Placement a = place(5000, 25, 42);
  const Placement b = place(5000, 25, 42);
  CHECK(a.location == b.location);
  CHECK(place(5000, 25, 43).location != a.location);

  const auto counts = location_counts(a);
  std::int64_t total = 0;
  for (const std::int64_t c : counts) {
    CHECK(c > 0);
    total += c;
  }
  CHECK(total == 5000);
  CHECK(location_stats(a).mean == doctest::Approx(200.0));

  CHECK_THROWS_AS(place(10, 1, 1), std::invalid_argument);

  const std::vector<bool> down = sample_disaster(25, 0.2, 42);
  CHECK(std::count(down.begin(), down.end(), true) == 5);
  CHECK(sample_disaster(25, 0.2, 42) == down);
  const std::vector<bool> none = sample_disaster(25, 0.0, 42);
  CHECK(std::count(none.begin(), none.end(), true) == 0);
}

TEST_CASE("RS stripe spread matches the independent-collision estimate") {
  const SchemeSpec scheme = SchemeSpec::make_rs(10, 4);
  const std::int64_t data = 100'000;
  const RsLayout layout = rs_layout(data, 10, 4);
  const Placement placement =
      place(static_cast<std::size_t>(total_blocks(scheme, data)), 100, 7);
  const auto histogram = stripe_spread_histogram(layout, placement);
  std::int64_t stripes = 0;
  for (const std::int64_t h : histogram) stripes += h;
  CHECK(stripes == layout.num_stripes);
  // P(14 independent uniform draws from 100 all distinct) = 0.3852...
  const double spread = static_cast<double>(histogram[14]) /
                        static_cast<double>(layout.num_stripes);
  CHECK(spread == doctest::Approx(0.385).epsilon(0.04));
}

TEST_CASE("scenarios are deterministic per seed") {
  ScenarioConfig config;
  config.scheme = SchemeSpec::make_ae(CodeParams::validate(2, 2, 5));
  config.num_data_blocks = 4000;
  config.n_locations = 40;
  config.fraction = 0.3;
  config.seed = 11;
  const ScenarioMetrics a = run_scenario(config);
  const ScenarioMetrics b = run_scenario(config);
  CHECK(same_metrics(a, b));
  config.seed = 12;
  CHECK(!same_metrics(a, run_scenario(config)));
}

TEST_CASE("conservation: recovered plus lost equals the initial damage") {
  for (const char* label : {"ae(3,2,5)", "ae(1)", "rs(5,5)", "rep(3)"}) {
    ScenarioConfig config;
    config.scheme = *SchemeSpec::parse(label);
    config.num_data_blocks = 20'000;
    config.n_locations = 50;
    config.fraction = 0.4;
    config.seed = 3;
    const ScenarioMetrics m = run_scenario(config);
    CHECK(m.repaired_data + m.data_loss == m.initially_unavailable_data);
    CHECK(m.initially_unavailable_data > 0);
  }
}

TEST_CASE("a zero-fraction disaster is a no-op") {
  ScenarioConfig config;
  config.scheme = *SchemeSpec::parse("ae(2,2,5)");
  config.num_data_blocks = 5000;
  config.fraction = 0.0;
  const ScenarioMetrics m = run_scenario(config);
  CHECK(m.initially_unavailable_data == 0);
  CHECK(m.data_loss == 0);
  CHECK(m.repaired_data == 0);
  CHECK(m.rounds == 0);
  CHECK(m.single_failure_fraction == 0.0);
}

TEST_CASE("every lattice repair reads two blocks (or one at a strand head)") {
  ScenarioConfig config;
  config.scheme = *SchemeSpec::parse("ae(3,2,5)");
  config.num_data_blocks = 10'000;
  config.n_locations = 50;
  config.fraction = 0.3;
  config.seed = 9;
  const ScenarioMetrics m = run_scenario(config);
  std::int64_t repairs = 0;
  for (const auto& [reads, count] : m.reads_histogram) {
    CHECK((reads == 1 || reads == 2));
    repairs += count;
  }
  std::int64_t round_total = 0;
  for (const std::int64_t r : m.round_repairs) round_total += r;
  CHECK(repairs == round_total);
  CHECK(m.reads_histogram.at(2) > 0);
}

TEST_CASE("the dense simulation engine matches the reference decoder") {
  const CodeParams params = CodeParams::validate(2, 2, 5);
  const std::int64_t nodes = 60;
  const std::uint32_t n_loc = 10;
  const double fraction = 0.3;
  const std::uint64_t seed = 5;

  // Mirror the scenario's world into a payload-less BlockStore.
  const SchemeSpec scheme = SchemeSpec::make_ae(params);
  const Placement placement =
      place(static_cast<std::size_t>(total_blocks(scheme, nodes)), n_loc, seed);
  const std::vector<bool> down = sample_disaster(n_loc, fraction, seed);

  const auto mirror = [&](RepairMode mode) {
    BlockStore store(params, 0);
    std::size_t slot = 0;
    for (BlockIndex i = 1; i <= nodes; ++i) {
      store.put_placeholder(BlockId::node(i), !down[placement.location[slot++]]);
    }
    for (StrandClass cls : params.classes()) {
      for (BlockIndex i = 1; i <= nodes; ++i) {
        store.put_placeholder(make_output_edge(i, cls, params),
                              !down[placement.location[slot++]]);
      }
    }
    store.set_counter(nodes);
    return std::pair{repair_all(store, params, mode), std::move(store)};
  };

  for (const RepairMode mode :
       {RepairMode::FullMaintenance, RepairMode::MinimalMaintenance}) {
    ScenarioConfig config;
    config.scheme = scheme;
    config.num_data_blocks = nodes;
    config.n_locations = n_loc;
    config.fraction = fraction;
    config.seed = seed;
    config.maintenance = mode;
    const ScenarioMetrics metrics = run_scenario(config);
    const auto [report, store] = mirror(mode);

    CHECK(metrics.repaired_data == report.total_data_repaired());
    CHECK(metrics.data_loss == report.unrecovered_data);
    std::vector<std::int64_t> reference_rounds;
    for (const RoundStats& r : report.rounds) {
      reference_rounds.push_back(r.repaired_blocks);
    }
    CHECK(metrics.round_repairs == reference_rounds);

    // Vulnerable recomputed from the reference store: an available node with
    // no live incident parity.
    std::int64_t vulnerable = 0;
    for (BlockIndex i = 1; i <= nodes; ++i) {
      if (!store.available(BlockId::node(i))) continue;
      bool protected_ = false;
      for (const IncidentTuple& t : incident_tuples(i, params)) {
        if (t.input && store.available(*t.input)) protected_ = true;
        if (store.available(t.output)) protected_ = true;
      }
      if (!protected_) ++vulnerable;
    }
    CHECK(metrics.vulnerable_data == vulnerable);
  }
}

TEST_CASE("data loss does not depend on the maintenance mode") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    ScenarioConfig config;
    config.scheme = *SchemeSpec::parse("ae(2,2,5)");
    config.num_data_blocks = 15'000;
    config.n_locations = 50;
    config.fraction = 0.4;
    config.seed = seed;
    config.maintenance = RepairMode::FullMaintenance;
    const ScenarioMetrics full = run_scenario(config);
    config.maintenance = RepairMode::MinimalMaintenance;
    const ScenarioMetrics minimal = run_scenario(config);
    CHECK(full.data_loss == minimal.data_loss);
    CHECK(full.rounds == minimal.rounds);
    CHECK(full.vulnerable_data <= minimal.vulnerable_data);
  }
}

TEST_CASE("expected data loss grows with the disaster fraction") {
  const std::vector<double> fractions = {0.1, 0.3, 0.5};
  double previous = -1.0;
  for (const double fraction : fractions) {
    double mean = 0.0;
    for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
      ScenarioConfig config;
      config.scheme = *SchemeSpec::parse("ae(2,2,5)");
      config.num_data_blocks = 20'000;
      config.n_locations = 100;
      config.fraction = fraction;
      config.seed = seed;
      mean += static_cast<double>(run_scenario(config).data_loss) / 3.0;
    }
    CHECK(mean >= previous);
    previous = mean;
  }
}

TEST_CASE("sweep produces ordered rows and stable CSV") {
  const std::vector<SchemeSpec> schemes = {*SchemeSpec::parse("ae(1)"),
                                           *SchemeSpec::parse("rs(5,5)")};
  std::vector<SweepRow> rows =
      sweep(schemes, 2000, 20, {0.1, 0.3}, {1, 2}, RepairMode::FullMaintenance, 2);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].config.scheme.label() == "ae(1,-,-)");
  CHECK(rows[0].config.fraction == 0.1);
  CHECK(rows[0].config.seed == 1);
  CHECK(rows[7].config.scheme.label() == "rs(5,5)");

  std::vector<SweepRow> again =
      sweep(schemes, 2000, 20, {0.1, 0.3}, {1, 2}, RepairMode::FullMaintenance, 1);
  for (SweepRow& row : rows) row.metrics.wall_time_ms = 0.0;
  for (SweepRow& row : again) row.metrics.wall_time_ms = 0.0;

  std::ostringstream a, b;
  write_sweep_csv(a, rows);
  write_sweep_csv(b, again);
  CHECK(a.str() == b.str());
  CHECK(a.str().starts_with(
      "scheme,alpha,s,p,k,m,n_locations,fraction,seed,data_loss,vulnerable,"
      "sf_fraction,rounds,wall_time_ms\n"));
  CHECK(a.str().find("ae(1,-,-),1,1,0,,,20,0.10,1,") != std::string::npos);
  CHECK(a.str().find("rs(5,5),,,,5,5,20,0.30,2,") != std::string::npos);
}

TEST_CASE("scheme spec parsing") {
  CHECK(SchemeSpec::parse("ae(3,2,5)")->label() == "ae(3,2,5)");
  CHECK(SchemeSpec::parse("ae(1)")->label() == "ae(1,-,-)");
  CHECK(SchemeSpec::parse("ae(1,-,-)")->label() == "ae(1,-,-)");
  CHECK(SchemeSpec::parse("rs(10,4)")->label() == "rs(10,4)");
  CHECK(SchemeSpec::parse("rep(3)")->label() == "rep(3)");
  CHECK(SchemeSpec::parse("replication(2)")->label() == "rep(2)");
  CHECK(!SchemeSpec::parse("ae(2,5,2)").has_value());  // deformed lattice
  CHECK(!SchemeSpec::parse("lrc(4,2)").has_value());
  CHECK(!SchemeSpec::parse("ae[3,2,5]").has_value());
  CHECK(SchemeSpec::parse("ae(3,2,5)")->additional_storage_percent() == 300.0);
}

TEST_CASE("single-chain loss sits above RS(5,5) and the gap narrows") {
  const auto mean_loss = [&](const char* scheme, double fraction) {
    double mean = 0.0;
    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
      ScenarioConfig config;
      config.scheme = *SchemeSpec::parse(scheme);
      config.num_data_blocks = 100'000;
      config.n_locations = 100;
      config.fraction = fraction;
      config.seed = seed;
      mean += static_cast<double>(run_scenario(config).data_loss) / 4.0;
    }
    return mean;
  };
  const double ratio_small = mean_loss("ae(1)", 0.1) / mean_loss("rs(5,5)", 0.1);
  const double ratio_large = mean_loss("ae(1)", 0.5) / mean_loss("rs(5,5)", 0.5);
  CHECK(ratio_small > ratio_large);
  CHECK(ratio_small > 4.0);
  CHECK(ratio_large >= 1.0);
}
