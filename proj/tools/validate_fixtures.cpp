// Checks the shipped SRG fixtures: parameters, power identity, and the
// non-isomorphism certificate. Exits non-zero on any mismatch.
#include "qpe/gdwl.hpp"
#include "qpe/srg_fixtures.hpp"

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: qpe_validate_fixtures DATA_DIR\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  try {
    const qpe::Graph rook = qpe::load_graph_file(dir / qpe::rook_fixture_name);
    const qpe::Graph shri = qpe::load_graph_file(dir / qpe::shrikhande_fixture_name);
    const qpe::SrgParameters expected{16, 6, 2, 2};
    for (const qpe::Graph* g : {&rook, &shri}) {
      std::string why;
      const auto p = qpe::srg_parameters(*g, &why);
      if (!p || !(*p == expected)) {
        std::cerr << "fixture is not SRG(16,6,2,2): " << why << "\n";
        return 2;
      }
      for (const auto& f : qpe::srg_power_identity_check(*g, 10))
        if (f.residual > 1e-8) {
          std::cerr << "power identity residual " << f.residual << " at n=" << f.power << "\n";
          return 2;
        }
    }
    if (!(rook == qpe::rook_4x4_graph()) || !(shri == qpe::shrikhande_graph())) {
      std::cerr << "fixture files differ from their constructions\n";
      return 2;
    }
    if (!qpe::certify_non_isomorphic(rook, shri).certified) {
      std::cerr << "fixtures are not certified non-isomorphic\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "fixture validation failed: " << e.what() << "\n";
    return 2;
  }
  std::cout << "SRG fixtures valid\n";
  return 0;
}
