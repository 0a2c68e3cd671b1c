#include <doctest.h>

#include <random>
#include <stdexcept>

#include "chembalance/error.hpp"
#include "chembalance/refmap/refmap.hpp"

using namespace chembalance;
using namespace chembalance::refmap;
using chembalance::kinetics::CompositionVector;

namespace {

RefMapConfig loose(int bins) {
  RefMapConfig c;
  c.z_bins = bins;
  c.eps_z = 1.0;
  c.eps_t = 1e9;
  return c;
}

}  // namespace

TEST_SUITE("refmap") {
  TEST_CASE("zone index clamps to the bin range") {
    CHECK(zone_index(0.0, 20) == 0);
    CHECK(zone_index(0.049, 20) == 0);
    CHECK(zone_index(0.05, 20) == 1);
    CHECK(zone_index(1.0, 20) == 19);
    CHECK(zone_index(-1e-15, 20) == 0);
    CHECK(zone_index(0.7, 1) == 0);
  }

  TEST_CASE("identical cells with zero tolerances: one explicit solve") {
    std::vector<CellSample> cells;
    for (CellId id = 0; id < 12; ++id) cells.push_back({id, 0.3, 1100.0});
    RefMapConfig c;
    c.eps_z = 0.0;
    c.eps_t = 0.0;
    const auto a = assign_zones(cells, c);
    CHECK(a.explicit_count() == 1);
    CHECK(a.mapped_count() == 11);
    CHECK(a.disposition[0] == Disposition::solve_explicit);
  }

  TEST_CASE("distinct mixture fractions with zero tolerance: all explicit") {
    std::vector<CellSample> cells;
    for (CellId id = 0; id < 12; ++id) cells.push_back({id, 0.3 + 1e-6 * id, 1100.0});
    RefMapConfig c;
    c.eps_z = 0.0;
    const auto a = assign_zones(cells, c);
    CHECK(a.explicit_count() == 12);
  }

  TEST_CASE("two populated zones give two references") {
    std::vector<CellSample> cells;
    for (CellId id = 0; id < 10; ++id) cells.push_back({id, id < 5 ? 0.1 : 0.9, 1000.0});
    const auto a = assign_zones(cells, loose(2));
    CHECK(a.explicit_count() == 2);
    CHECK(a.mapped_count() == 8);
    REQUIRE(a.zone_reference.size() == 2);
    CHECK(a.zone_reference[0] == CellId{0});
    CHECK(a.zone_reference[1] == CellId{5});
  }

  TEST_CASE("reference is the lowest cell id, not the first listed") {
    const std::vector<CellSample> cells{{9, 0.5, 1000.0}, {4, 0.5, 1000.0}, {7, 0.5, 1000.0}};
    const auto a = assign_zones(cells, loose(1));
    CHECK(a.zone_reference[0] == CellId{4});
    CHECK(a.disposition[1] == Disposition::solve_explicit);
    CHECK(a.reference_of[0] == 1);
    CHECK(a.reference_of[2] == 1);
  }

  TEST_CASE("empty zones have no reference") {
    const std::vector<CellSample> cells{{0, 0.05, 1000.0}};
    const auto a = assign_zones(cells, loose(4));
    CHECK(a.zone_reference[0].has_value());
    for (int z = 1; z < 4; ++z) CHECK_FALSE(a.zone_reference[z].has_value());
  }

  TEST_CASE("temperature criterion separates burnt from fresh") {
    const std::vector<CellSample> cells{{0, 0.5, 1000.0}, {1, 0.5, 1005.0}, {2, 0.5, 1020.0}};
    RefMapConfig c;
    c.z_bins = 1;
    c.eps_t = 10.0;
    const auto a = assign_zones(cells, c);
    CHECK(a.disposition[1] == Disposition::map_from_reference);
    CHECK(a.disposition[2] == Disposition::solve_explicit);
  }

  TEST_CASE("disabled mapping solves every cell") {
    std::vector<CellSample> cells(5, {0, 0.5, 1000.0});
    for (CellId id = 0; id < 5; ++id) cells[id].cell_id = id;
    RefMapConfig c;
    c.enabled = false;
    CHECK(assign_zones(cells, c).explicit_count() == 5);
  }

  TEST_CASE("invalid configuration is rejected") {
    RefMapConfig c;
    c.z_bins = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.eps_z = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.eps_t = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("enlarging tolerances never adds explicit solves") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uz(0.0, 1.0);
    std::normal_distribution<double> ut(1200.0, 30.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<CellSample> cells;
      for (CellId id = 0; id < 200; ++id) cells.push_back({id, uz(rng), ut(rng)});
      std::size_t previous = cells.size() + 1;
      for (double scale : {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        RefMapConfig c;
        c.z_bins = 10;
        c.eps_z = scale;
        c.eps_t = 100.0 * scale;
        const auto n = assign_zones(cells, c).explicit_count();
        CHECK(n <= previous);
        previous = n;
      }
    }
  }

  TEST_CASE("mapping a state equal to the reference copies its result") {
    const CompositionVector before{1000.0, {0.1, 0.2, 0.3}};
    const CompositionVector after{1234.5678, {0.05, 0.25, 0.31}};
    CHECK(map_state(before, {before, after}) == after);
  }

  TEST_CASE("zero reference increment leaves the cell unchanged") {
    const CompositionVector ref{1000.0, {0.1, 0.2, 0.3}};
    const CompositionVector own{1003.0, {0.11, 0.19, 0.3}};
    CHECK(map_state(own, {ref, ref}) == own);
  }

  TEST_CASE("mapped states stay valid") {
    // Own and reference states differ by at most what the criteria admit.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_state = [&] {
      CompositionVector c{800.0 + 1500.0 * u(rng), std::vector<double>(4)};
      double budget = 1.0;
      for (auto& y : c.mass_fractions) {
        y = budget * u(rng);
        budget -= y;
      }
      return c;
    };
    for (int trial = 0; trial < 1000; ++trial) {
      const auto before = random_state();
      auto own = random_state();
      own.temperature = before.temperature + 20.0 * (u(rng) - 0.5);
      const auto mapped = map_state(own, {before, random_state()});
      CHECK(mapped.is_valid());
    }
  }

  TEST_CASE("apply_mapping fills explicit and mapped cells") {
    const std::vector<CellSample> cells{{0, 0.2, 1000.0}, {1, 0.2, 1000.0}, {2, 0.9, 1000.0}};
    const std::vector<CompositionVector> own{
        {1000.0, {0.2}}, {1000.0, {0.2}}, {1000.0, {0.6}}};
    const auto a = assign_zones(cells, loose(2));
    std::map<CellId, CompositionVector> solved{{0, {1500.0, {0.1}}}, {2, {900.0, {0.7}}}};
    const auto out = apply_mapping(a, cells, own, solved);
    CHECK(out[0] == solved[0]);
    CHECK(out[1] == solved[0]);
    CHECK(out[2] == solved[2]);
    solved.erase(0);
    CHECK_THROWS_AS(apply_mapping(a, cells, own, solved), std::logic_error);
  }
}
