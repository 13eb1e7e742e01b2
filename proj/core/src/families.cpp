#include "provel/families.hpp"

namespace provel {

AnnotatedTBox sword_tbox(int n) {
  if (n < 1) throw Error("sword_tbox requires n >= 1");
  std::vector<TBoxEntry> entries;
  auto A = [](int i) { return Concept::named("A" + std::to_string(i)); };
  for (int i = 1; i <= n; ++i) {
    Concept b = Concept::named("B" + std::to_string(i));
    Concept c = Concept::named("C" + std::to_string(i));
    std::string idx = std::to_string(i);
    entries.push_back({AtomicGci{A(i - 1), b}, "u" + idx});
    entries.push_back({AtomicGci{A(i - 1), c}, "w" + idx});
    entries.push_back({AtomicGci{b, A(i)}, "v" + idx});
    entries.push_back({AtomicGci{c, A(i)}, "x" + idx});
  }
  return AnnotatedTBox(std::move(entries));
}

}  // namespace provel
