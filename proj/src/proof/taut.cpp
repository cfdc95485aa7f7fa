#include "msml/proof/taut.hpp"

#include <cstdint>
#include <vector>

#include "msml/core/errors.hpp"

namespace msml {

namespace {

constexpr int kMaxAtoms = 20;

// Lane i of mask k holds bit (i >> k) & 1, so the six masks together run
// through all 64 assignments of the first six atoms.
constexpr uint64_t kLaneMask[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

struct Ins {
  enum Kind { Load, Not, Or } kind;
  int atom;
};

void compile(const Formula& f, FormulaSet& atoms, std::vector<Ins>& prog) {
  switch (f.kind()) {
    case FKind::Var:
    case FKind::App: {
      int idx = -1;
      for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] == f) {
          idx = static_cast<int>(i);
          break;
        }
      }
      if (idx < 0) {
        idx = static_cast<int>(atoms.size());
        atoms.push_back(f);
      }
      prog.push_back({Ins::Load, idx});
      return;
    }
    case FKind::Not:
      compile(f.arg(0), atoms, prog);
      prog.push_back({Ins::Not, 0});
      return;
    case FKind::Or:
      compile(f.arg(0), atoms, prog);
      compile(f.arg(1), atoms, prog);
      prog.push_back({Ins::Or, 0});
      return;
  }
  throw Error("taut_check: unreachable formula kind");
}

}  // namespace

int taut_atom_count(const Signature& sig, const Formula& phi) {
  sort_of(sig, phi);
  FormulaSet atoms;
  std::vector<Ins> prog;
  compile(phi, atoms, prog);
  return static_cast<int>(atoms.size());
}

bool taut_check(const Signature& sig, const Formula& phi) {
  sort_of(sig, phi);
  FormulaSet atoms;
  std::vector<Ins> prog;
  compile(phi, atoms, prog);
  const int n = static_cast<int>(atoms.size());
  if (n > kMaxAtoms)
    throw Error("taut_check: formula has " + std::to_string(n) +
                " boolean atoms, limit is " + std::to_string(kMaxAtoms));

  const int hi = n > 6 ? n - 6 : 0;
  uint64_t valid = ~0ull;
  if (n < 6) valid = (1ull << (1u << n)) - 1;

  std::vector<uint64_t> stack(prog.size() + 1);
  for (uint64_t block = 0; block < (1ull << hi); ++block) {
    size_t sp = 0;
    for (const Ins& ins : prog) {
      switch (ins.kind) {
        case Ins::Load:
          if (ins.atom < 6)
            stack[sp++] = kLaneMask[ins.atom];
          else
            stack[sp++] = (block >> (ins.atom - 6)) & 1 ? ~0ull : 0ull;
          break;
        case Ins::Not:
          stack[sp - 1] = ~stack[sp - 1];
          break;
        case Ins::Or:
          stack[sp - 2] |= stack[sp - 1];
          --sp;
          break;
      }
    }
    if ((stack[0] & valid) != valid) return false;
  }
  return true;
}

}  // namespace msml
