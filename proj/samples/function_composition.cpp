// Encodes two lookup tables as FHRR bundles, composes them, and checks every
// input against the directly composed table.
#include <cstdio>
#include <string>
#include <vector>

#include "hyperrig/hyperrig.hpp"

using namespace hyperrig;

int main() {
  const auto p = AlgebraParams::make(AlgebraId::FHRR, 1024);
  const std::vector<std::string> animals{"cat", "dog", "owl", "eel"};
  const std::vector<std::string> sounds{"meow", "woof", "hoot", "zap"};
  const std::vector<std::string> letters{"m", "w", "h", "z"};

  auto sym = [&](const std::string& n) { return random_vector(p, name_seed(n)); };
  std::vector<FunctionRow> sound_of, first_letter;
  for (std::size_t i = 0; i < animals.size(); ++i) {
    sound_of.push_back({animals[i], sym(animals[i]), sounds[i], sym(sounds[i])});
    first_letter.push_back({sounds[i], sym(sounds[i]), letters[i], sym(letters[i])});
  }
  const auto f = encode_function(sound_of);
  const auto g = encode_function(first_letter);

  int correct = 0;
  for (std::size_t i = 0; i < animals.size(); ++i) {
    for (bool clean : {false, true}) {
      const auto out = compose_apply(f, g, sym(animals[i]), clean);
      const auto hit = g.range_memory.cleanup(out);
      std::printf("%-4s %-9s -> %-2s score %.3f\n", animals[i].c_str(), clean ? "cleaned" : "uncleaned", hit.name.c_str(),
                  hit.score);
      correct += hit.name == letters[i] ? 1 : 0;
    }
  }
  std::printf("%d of %zu lookups correct\n", correct, 2 * animals.size());
  return correct == static_cast<int>(2 * animals.size()) ? 0 : 1;
}
