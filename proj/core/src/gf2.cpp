#include "acprg/gf2.hpp"

#include <array>
#include <bit>

#include "acprg/error.hpp"

namespace acprg {

namespace {

constexpr std::array<std::uint64_t, 33> kPolys = {
    0,          0x3,        0x7,        0xB,        0x13,        0x25,       0x43,
    0x83,       0x11B,      0x211,      0x409,      0x805,       0x1053,     0x201B,
    0x4443,     0x8003,     0x1100B,    0x20009,    0x40009,     0x80027,    0x100009,
    0x200005,   0x400003,   0x800021,   0x100001B,  0x2000009,   0x400001B,  0x8000027,
    0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008D,
};

int degree_of(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t c, std::uint64_t poly) {
  const int d = degree_of(poly);
  std::uint64_t r = 0;
  while (c) {
    if (c & 1u) r ^= a;
    c >>= 1;
    a <<= 1;
    if ((a >> d) & 1u) a ^= poly;
  }
  return r;
}

std::uint64_t pmod(std::uint64_t a, std::uint64_t p) {
  const int dp = degree_of(p);
  for (int da = degree_of(a); da >= dp; da = degree_of(a)) a ^= p << (da - dp);
  return a;
}

std::uint64_t pgcd(std::uint64_t a, std::uint64_t c) {
  while (c) {
    a = pmod(a, c);
    std::swap(a, c);
  }
  return a;
}

}  // namespace

std::uint64_t irreducible_poly(unsigned degree) {
  if (degree == 0 || degree > Gf2Field::kMaxDegree) throw CapExceeded("field degree must be in [1, 32]");
  return kPolys[degree];
}

bool is_irreducible(std::uint64_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  if (d > 62) throw CapExceeded("polynomial degree above 62");
  std::uint64_t p = 2;
  for (int i = 1; i <= d / 2; ++i) {
    p = mulmod(p, p, poly);
    if (pgcd(poly, p ^ 2u) != 1) return false;
  }
  return true;
}

Gf2Field::Gf2Field(unsigned degree) : b_(degree), poly_(irreducible_poly(degree)) {}

std::uint32_t Gf2Field::mul(std::uint32_t a, std::uint32_t c) const noexcept {
  std::uint64_t x = a, r = 0;
  while (c) {
    if (c & 1u) r ^= x;
    c >>= 1;
    x <<= 1;
    if ((x >> b_) & 1u) x ^= poly_;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t Gf2Field::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t r = 1, base = a;
  while (e) {
    if (e & 1u) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace acprg
