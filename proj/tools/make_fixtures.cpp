// Regenerates the checked-in sparse checkpoint fixtures.

#include <iostream>

#include "core/dom/reference_policies.hpp"
#include "core/net/checkpoint.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  asnets::net::save_checkpoint(
      asnets::dom::ttw_sparse_store(), dir + "/ttw-sparse.json",
      "hand-written 8-weight triangle-tire policy; regenerate with tools/make_fixtures");
  asnets::net::save_checkpoint(
      asnets::dom::cn_sparse_store(), dir + "/cn-sparse.json",
      "hand-written compact cosanostra policy; regenerate with tools/make_fixtures");
  std::cout << "wrote " << dir << "/ttw-sparse.json and " << dir << "/cn-sparse.json\n";
  return 0;
}
