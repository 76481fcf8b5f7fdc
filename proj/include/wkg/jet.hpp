#pragma once

#include <array>
#include <string>
#include <vector>

namespace wkg::jet {

constexpr int kSize = 35;

// derivatives d^m w at one spacetime point for multi-indices |m| <= 3 over (t, x1, x2, x3)
struct Jet {
    std::array<double, kSize> c{};
    int order = 3;
    double at(int m0, int m1, int m2, int m3) const;
};

int index(int m0, int m1, int m2, int m3);
std::array<int, 4> multi_index(int idx);

// Cartesian jet at (t, r, 0, 0) of a radial function with radial jet d[i][j] = dt^i dr^j
Jet from_radial(const double d[4][4], double r, int order);

Jet apply_d(const Jet& w, int alpha);
// L_a = x^a dt + t d_a at the point (t, x)
Jet apply_boost(const Jet& w, int a, double t, const std::array<double, 3>& x);

enum class Letter { T, X, L };

struct Word {
    std::string label;
    std::vector<Letter> letters;  // leftmost is applied last
};

// "", t, x, L, tt, tx, xx, tL, xL, LL
const std::vector<Word>& words_up_to_order2();

// all components of the word family applied to base (base order >= word length + 1 for energies)
std::vector<Jet> family(const Word& w, const Jet& base, double t, const std::array<double, 3>& x);

}  // namespace wkg::jet
