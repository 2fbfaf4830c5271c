#pragma once

// Bundled example graphs and colourings used across the test suites and the
// CLI walkthrough. Each entry is a graph document plus named colourings.

#include <map>
#include <string>

#include "periflex/io.hpp"

namespace periflex::fixtures {

struct Fixture {
  std::string name;
  std::string graph_json;
  std::map<std::string, std::string> colouring_json;
};

// Z-gain graph: two squares of parallel edges joined by three crossing edges.
// "fixed" keeps both gain-1 edges red; "flex1" moves them to blue.
inline Fixture z1_double_square() {
  Fixture f;
  f.name = "z1_double_square";
  f.graph_json = R"({
    "k": 1,
    "vertices": ["1", "2", "3", "4", "5", "6"],
    "edges": [
      {"id": "c13", "tail": "1", "head": "3", "gain": [0]},
      {"id": "c24", "tail": "2", "head": "4", "gain": [0]},
      {"id": "c56", "tail": "5", "head": "6", "gain": [0]},
      {"id": "l25", "tail": "2", "head": "5", "gain": [0]},
      {"id": "l15", "tail": "1", "head": "5", "gain": [0]},
      {"id": "l12a", "tail": "1", "head": "2", "gain": [0]},
      {"id": "l12b", "tail": "1", "head": "2", "gain": [1]},
      {"id": "r46", "tail": "4", "head": "6", "gain": [0]},
      {"id": "r36", "tail": "3", "head": "6", "gain": [0]},
      {"id": "r34a", "tail": "3", "head": "4", "gain": [1]},
      {"id": "r34b", "tail": "3", "head": "4", "gain": [0]}
    ]
  })";
  f.colouring_json["fixed"] = R"({
    "red": ["l25", "l15", "l12a", "l12b", "r46", "r36", "r34a", "r34b"],
    "blue": ["c13", "c24", "c56"]
  })";
  f.colouring_json["flex1"] = R"({
    "red": ["l25", "l15", "l12a", "r46", "r36", "r34b"],
    "blue": ["c13", "c24", "c56", "l12b", "r34a"]
  })";
  return f;
}

// Z^2-gain graph: blue K4 with a balanced red four-cycle on top (type 1).
inline Fixture z2_k4_square() {
  Fixture f;
  f.name = "z2_k4_square";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [
      {"id": "b12", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "b13", "tail": "1", "head": "3", "gain": [0, 0]},
      {"id": "b14", "tail": "1", "head": "4", "gain": [0, 0]},
      {"id": "b23", "tail": "2", "head": "3", "gain": [0, 0]},
      {"id": "b24", "tail": "2", "head": "4", "gain": [0, 0]},
      {"id": "b34", "tail": "3", "head": "4", "gain": [0, 0]},
      {"id": "r12", "tail": "1", "head": "2", "gain": [1, 0]},
      {"id": "r23", "tail": "2", "head": "3", "gain": [0, 1]},
      {"id": "r43", "tail": "4", "head": "3", "gain": [1, 0]},
      {"id": "r14", "tail": "1", "head": "4", "gain": [0, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r12", "r23", "r43", "r14"],
    "blue": ["b12", "b13", "b14", "b23", "b24", "b34"]
  })";
  return f;
}

// Z^2-gain graph: red/blue parallel pairs on a path plus one loop per colour
// at the middle vertex (type 2 with alpha=(1,0), beta=(0,1)).
inline Fixture z2_theta_loops() {
  Fixture f;
  f.name = "z2_theta_loops";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3"],
    "edges": [
      {"id": "r21", "tail": "2", "head": "1", "gain": [1, 1]},
      {"id": "b21", "tail": "2", "head": "1", "gain": [0, 0]},
      {"id": "r23", "tail": "2", "head": "3", "gain": [1, 1]},
      {"id": "b23", "tail": "2", "head": "3", "gain": [0, 0]},
      {"id": "rloop", "tail": "2", "head": "2", "gain": [1, 0]},
      {"id": "bloop", "tail": "2", "head": "2", "gain": [0, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r21", "r23", "rloop"],
    "blue": ["b21", "b23", "bloop"]
  })";
  return f;
}

// Z^2-gain graph on a square with both spans on the line Z(1,0) (type 3).
inline Fixture z2_square_diagonals() {
  Fixture f;
  f.name = "z2_square_diagonals";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [
      {"id": "b21", "tail": "2", "head": "1", "gain": [0, 0]},
      {"id": "b14a", "tail": "1", "head": "4", "gain": [0, 0]},
      {"id": "b24", "tail": "2", "head": "4", "gain": [0, 0]},
      {"id": "b14b", "tail": "1", "head": "4", "gain": [1, 0]},
      {"id": "r13", "tail": "1", "head": "3", "gain": [0, 0]},
      {"id": "r23", "tail": "2", "head": "3", "gain": [0, 1]},
      {"id": "r34", "tail": "3", "head": "4", "gain": [0, 1]},
      {"id": "r21", "tail": "2", "head": "1", "gain": [-1, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r13", "r23", "r34", "r21"],
    "blue": ["b21", "b14a", "b24", "b14b"]
  })";
  return f;
}

// Z^2-gain graph whose printed colouring is simultaneously a fixed-lattice and
// a type 2 colouring (beta = (0,0)).
inline Fixture z2_loop_corner() {
  Fixture f;
  f.name = "z2_loop_corner";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [
      {"id": "r14", "tail": "1", "head": "4", "gain": [0, 0]},
      {"id": "r12", "tail": "1", "head": "2", "gain": [1, 0]},
      {"id": "r24", "tail": "2", "head": "4", "gain": [0, 0]},
      {"id": "rloop", "tail": "3", "head": "3", "gain": [1, 0]},
      {"id": "b43", "tail": "4", "head": "3", "gain": [0, 1]},
      {"id": "b31", "tail": "3", "head": "1", "gain": [0, 0]},
      {"id": "b32", "tail": "3", "head": "2", "gain": [0, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r14", "r12", "r24", "rloop"],
    "blue": ["b43", "b31", "b32"]
  })";
  return f;
}

// Z^2 version of the double square with an apex vertex; the printed colouring
// is a fixed-lattice colouring whose construction places two vertices at the
// same point of the plane.
inline Fixture z2_double_square_apex() {
  Fixture f;
  f.name = "z2_double_square_apex";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4", "5", "6", "7"],
    "edges": [
      {"id": "r13", "tail": "1", "head": "3", "gain": [0, 0]},
      {"id": "r24", "tail": "2", "head": "4", "gain": [0, 0]},
      {"id": "r56", "tail": "5", "head": "6", "gain": [0, 0]},
      {"id": "r47", "tail": "4", "head": "7", "gain": [0, 0]},
      {"id": "b25", "tail": "2", "head": "5", "gain": [0, 0]},
      {"id": "b15", "tail": "1", "head": "5", "gain": [0, 0]},
      {"id": "b12a", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "b12b", "tail": "1", "head": "2", "gain": [1, 0]},
      {"id": "b46", "tail": "4", "head": "6", "gain": [0, 0]},
      {"id": "b36", "tail": "3", "head": "6", "gain": [0, 0]},
      {"id": "b34", "tail": "3", "head": "4", "gain": [0, 1]},
      {"id": "b27", "tail": "2", "head": "7", "gain": [1, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r13", "r24", "r56", "r47"],
    "blue": ["b25", "b15", "b12a", "b12b", "b46", "b36", "b34", "b27"]
  })";
  return f;
}

// Z-gain graph whose printed colouring is a flexible 1-lattice colouring; the
// construction lays the red components out on integer rows.
inline Fixture z1_row_grid() {
  Fixture f;
  f.name = "z1_row_grid";
  f.graph_json = R"({
    "k": 1,
    "vertices": ["1", "2", "3", "4", "5", "6"],
    "edges": [
      {"id": "r13", "tail": "1", "head": "3", "gain": [2]},
      {"id": "r24", "tail": "2", "head": "4", "gain": [2]},
      {"id": "r56", "tail": "5", "head": "6", "gain": [1]},
      {"id": "r12", "tail": "1", "head": "2", "gain": [1]},
      {"id": "r34", "tail": "3", "head": "4", "gain": [1]},
      {"id": "b25", "tail": "2", "head": "5", "gain": [0]},
      {"id": "b15", "tail": "1", "head": "5", "gain": [0]},
      {"id": "b12", "tail": "1", "head": "2", "gain": [0]},
      {"id": "b46", "tail": "4", "head": "6", "gain": [0]},
      {"id": "b36", "tail": "3", "head": "6", "gain": [0]},
      {"id": "b34", "tail": "3", "head": "4", "gain": [0]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r13", "r24", "r56", "r12", "r34"],
    "blue": ["b25", "b15", "b12", "b46", "b36", "b34"]
  })";
  return f;
}

// Z^2 analogue of the row grid (type 1).
inline Fixture z2_row_grid() {
  Fixture f;
  f.name = "z2_row_grid";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4", "5", "6"],
    "edges": [
      {"id": "r13", "tail": "1", "head": "3", "gain": [1, 0]},
      {"id": "r24", "tail": "2", "head": "4", "gain": [1, 0]},
      {"id": "r56", "tail": "5", "head": "6", "gain": [2, 0]},
      {"id": "r12", "tail": "1", "head": "2", "gain": [1, 1]},
      {"id": "r34", "tail": "3", "head": "4", "gain": [1, 1]},
      {"id": "b25", "tail": "2", "head": "5", "gain": [0, 0]},
      {"id": "b15", "tail": "1", "head": "5", "gain": [0, 0]},
      {"id": "b12", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "b46", "tail": "4", "head": "6", "gain": [0, 0]},
      {"id": "b36", "tail": "3", "head": "6", "gain": [0, 0]},
      {"id": "b34", "tail": "3", "head": "4", "gain": [0, 0]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r13", "r24", "r56", "r12", "r34"],
    "blue": ["b25", "b15", "b12", "b46", "b36", "b34"]
  })";
  return f;
}

// Mixed-gain row graph (type 2 with alpha=(1,0), beta=(0,1)); its construction
// merges two vertices onto one plane point and carries a scissor flex.
inline Fixture z2_row_scissor() {
  Fixture f;
  f.name = "z2_row_scissor";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4", "5", "6"],
    "edges": [
      {"id": "r13", "tail": "1", "head": "3", "gain": [1, 2]},
      {"id": "r24", "tail": "2", "head": "4", "gain": [1, 2]},
      {"id": "r56", "tail": "5", "head": "6", "gain": [2, 0]},
      {"id": "r12", "tail": "1", "head": "2", "gain": [1, 1]},
      {"id": "r34", "tail": "3", "head": "4", "gain": [2, 1]},
      {"id": "b25", "tail": "2", "head": "5", "gain": [0, 1]},
      {"id": "b15", "tail": "1", "head": "5", "gain": [0, 0]},
      {"id": "b12", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "b46", "tail": "4", "head": "6", "gain": [0, 2]},
      {"id": "b36", "tail": "3", "head": "6", "gain": [0, 0]},
      {"id": "b34", "tail": "3", "head": "4", "gain": [0, 0]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["r13", "r24", "r56", "r12", "r34"],
    "blue": ["b25", "b15", "b12", "b46", "b36", "b34"]
  })";
  return f;
}

// Small NBAC demonstrator: a four-vertex gadget with parallel red/blue edges,
// a blue loop and one non-trivial red diagonal gain.
inline Fixture z2_parallel_loop() {
  Fixture f;
  f.name = "z2_parallel_loop";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2", "3", "4"],
    "edges": [
      {"id": "ra", "tail": "1", "head": "2", "gain": [1, 0]},
      {"id": "b12", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "b14", "tail": "1", "head": "4", "gain": [0, 0]},
      {"id": "b24", "tail": "2", "head": "4", "gain": [0, 0]},
      {"id": "rg", "tail": "1", "head": "3", "gain": [0, 1]},
      {"id": "r23", "tail": "2", "head": "3", "gain": [0, 0]},
      {"id": "bloop", "tail": "2", "head": "2", "gain": [0, 1]}
    ]
  })";
  f.colouring_json["printed"] = R"({
    "red": ["ra", "rg", "r23"],
    "blue": ["b12", "b14", "b24", "bloop"]
  })";
  return f;
}

// Two vertices joined by a parallel pair differing by (1,0) plus a loop with
// gain (0,1): the smallest rank-2 example.
inline Fixture z2_loop_pair() {
  Fixture f;
  f.name = "z2_loop_pair";
  f.graph_json = R"({
    "k": 2,
    "vertices": ["1", "2"],
    "edges": [
      {"id": "g0", "tail": "1", "head": "2", "gain": [0, 0]},
      {"id": "g1", "tail": "1", "head": "2", "gain": [1, 0]},
      {"id": "loop", "tail": "1", "head": "1", "gain": [0, 1]}
    ]
  })";
  return f;
}

inline std::vector<Fixture> all() {
  return {z1_double_square(),  z2_k4_square(),   z2_theta_loops(), z2_square_diagonals(),
          z2_loop_corner(),    z2_double_square_apex(), z1_row_grid(),   z2_row_grid(),
          z2_row_scissor(),    z2_parallel_loop(), z2_loop_pair()};
}

inline GraphDocument doc_of(const Fixture& f) { return parse_graph_document(f.graph_json); }

inline Colouring colouring_of(const Fixture& f, const std::string& name) {
  GraphDocument d = doc_of(f);
  return colouring_from_json(d, Json::parse(f.colouring_json.at(name)));
}

}  // namespace periflex::fixtures
