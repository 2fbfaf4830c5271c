// Regenerates the bundled fixture files in canonical serialized form.
#include <filesystem>
#include <iostream>

#include "../tests/fixtures.hpp"

int main(int argc, char** argv) {
  using namespace periflex;
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const auto& f : fixtures::all()) {
    GraphDocument doc = fixtures::doc_of(f);
    write_file(dir + "/" + f.name + ".json", serialize_graph_document(doc));
    for (const auto& [name, json] : f.colouring_json) {
      Colouring col = colouring_from_json(doc, Json::parse(json));
      write_file(dir + "/" + f.name + "_" + name + ".json",
                 colouring_to_json(doc, col).dump(2) + "\n");
    }
    std::cout << f.name << "\n";
  }
  return 0;
}
