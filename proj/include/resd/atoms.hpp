#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace resd {

// Variable kinds across all supported contradiction families.
//   L   order relation L_{i,j}
//   S2  binary Skolem witness S_{i,j}
//   R   relativizing predicate R^p_i, stored as (p, i)
//   P1  unary property P_i
//   P2  doubly indexed property P_{i,j}
//   S4  4-ary Skolem witness S_{i,j,l,m}
//   T   auxiliary T_{i,j}
//   Q   second pigeonhole map Q_{i,j}
//   A / B / Bp  weight-gadget variables A, B_i, B'_i
enum class Kind : uint8_t { L, S2, R, P1, P2, S4, T, Q, A, B, Bp };

constexpr int kind_arity(Kind k) {
  switch (k) {
    case Kind::A: return 0;
    case Kind::P1:
    case Kind::B:
    case Kind::Bp: return 1;
    case Kind::L:
    case Kind::S2:
    case Kind::R:
    case Kind::P2:
    case Kind::T:
    case Kind::Q: return 2;
    case Kind::S4: return 4;
  }
  return 0;
}

const char* kind_name(Kind k);
bool kind_from_name(const std::string& s, Kind& out);

struct Atom {
  Kind kind = Kind::L;
  std::array<uint16_t, 4> idx{0, 0, 0, 0};

  auto operator<=>(const Atom&) const = default;

  uint64_t key() const {
    return (static_cast<uint64_t>(kind) << 56) | (static_cast<uint64_t>(idx[0]) << 42) |
           (static_cast<uint64_t>(idx[1]) << 28) | (static_cast<uint64_t>(idx[2]) << 14) |
           static_cast<uint64_t>(idx[3]);
  }

  std::string str() const;
};

inline Atom atom(Kind k) { return Atom{k, {0, 0, 0, 0}}; }
inline Atom atom(Kind k, int a) { return Atom{k, {static_cast<uint16_t>(a), 0, 0, 0}}; }
inline Atom atom(Kind k, int a, int b) {
  return Atom{k, {static_cast<uint16_t>(a), static_cast<uint16_t>(b), 0, 0}};
}
inline Atom atom(Kind k, int a, int b, int c, int d) {
  return Atom{k, {static_cast<uint16_t>(a), static_cast<uint16_t>(b), static_cast<uint16_t>(c),
                  static_cast<uint16_t>(d)}};
}

struct Literal {
  Atom atom;
  bool pos = true;

  auto operator<=>(const Literal&) const = default;
  Literal negated() const { return Literal{atom, !pos}; }
  std::string str() const;
};

inline Literal lit(Atom a, bool pos = true) { return Literal{a, pos}; }
inline Literal neg(Atom a) { return Literal{a, false}; }

}  // namespace resd
