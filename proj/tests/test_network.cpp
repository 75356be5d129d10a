#include <catch_amalgamated.hpp>

#include "asc/io.hpp"
#include "asc/network.hpp"

using namespace asc;

namespace {

Vector vec(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("units and edges", "[network]") {
  Network net(2);
  const auto a = net.add_unit(vec(0, 0));
  const auto b = net.add_unit(vec(1, 0));
  const auto c = net.add_unit(vec(0, 1));
  CHECK(a == 0);
  CHECK(c == 2);

  net.connect(a, b, 3);
  net.connect(b, c);
  CHECK(net.edge_count() == 2);
  CHECK(net.edge_age(b, a) == 3);
  net.connect(a, b);
  CHECK(net.edge_count() == 2);
  CHECK(net.edge_age(a, b) == 0);

  CHECK_THROWS(net.connect(a, a));
  CHECK_THROWS(net.add_unit(Vector::Zero(3)));

  net.age_edges_of(b);
  CHECK(net.edge_age(a, b) == 1);
  CHECK(net.edge_age(c, b) == 1);

  net.remove_unit(b);
  CHECK(net.unit_count() == 2);
  CHECK(net.edge_count() == 0);
  CHECK(net.ids() == std::vector<UnitId>{0, 2});
  CHECK_FALSE(net.invariant_violation());

  // Ids are never reused.
  CHECK(net.add_unit(vec(5, 5)) == 3);
}

TEST_CASE("drop_old_edges_of removes only expired edges at the unit", "[network]") {
  Network net(2);
  for (int i = 0; i < 4; ++i) net.add_unit(vec(i, 0));
  net.connect(0, 1, 5);
  net.connect(0, 2, 2);
  net.connect(2, 3, 9);
  const auto dropped = net.drop_old_edges_of(0, 3);
  CHECK(dropped == std::vector<UnitId>{1});
  CHECK(net.connected(0, 2));
  CHECK(net.connected(2, 3));
  CHECK(net.drop_old_edges_of(0, 2.5).empty());
  CHECK(net.drop_old_edges_of(0, 1.5) == std::vector<UnitId>{2});
  CHECK_FALSE(net.invariant_violation());
}

TEST_CASE("network JSON keeps ids, gaps and ages", "[network][io]") {
  Network net(2);
  for (int i = 0; i < 4; ++i) net.add_unit(vec(i, -i), 0.5 * i);
  net.connect(0, 3, 7);
  net.connect(1, 3, 1);
  net.remove_unit(2);

  const json j = to_json(net);
  CHECK(j.at("d") == 2);
  CHECK(j.at("units").size() == 3);
  CHECK(j.at("edges").size() == 2);

  const Network back = network_from_json(j);
  CHECK(back.ids() == net.ids());
  CHECK(back.edges() == net.edges());
  CHECK(back.unit(3).w == net.unit(3).w);
  CHECK(back.unit(3).error == net.unit(3).error);
  CHECK(to_json(back) == j);
}
