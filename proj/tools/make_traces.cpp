#include <filesystem>
#include <fstream>
#include <iostream>

#include "qceq/traces.hpp"

// Writes every shipped trace, replay-checked, plus a manifest into the given directory.
int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  const fs::path dir = argc > 1 ? argv[1] : "traces";
  fs::create_directories(dir);
  try {
    const auto traces = qceq::build_traces();
    qceq::ReplayOptions opts;
    opts.allow_lemmas = true;
    for (const auto& t : traces) {
      const auto r = qceq::replay_checked(t.derivation, opts);
      if (!qceq::proves_claim(t)) {
        std::cerr << t.file << ": endpoints are not the sides of " << t.derivation.proves << "\n";
        return 1;
      }
      std::ofstream(dir / t.file) << qceq::derivation_to_json(t.derivation).dump(2) << "\n";
      std::cerr << t.file << ": " << t.derivation.steps.size() << " steps, drift " << r.max_drift << "\n";
    }
    std::ofstream(dir / "manifest.json") << qceq::traces_manifest(traces).dump(2) << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
