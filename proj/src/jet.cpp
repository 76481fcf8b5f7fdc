#include "wkg/jet.hpp"

#include <stdexcept>

namespace wkg::jet {

namespace {

struct Table {
    std::array<std::array<int, 4>, kSize> mi{};
    int idx[4][4][4][4];
    Table()
    {
        int n = 0;
        for (int total = 0; total <= 3; ++total)
            for (int a = total; a >= 0; --a)
                for (int b = total - a; b >= 0; --b)
                    for (int c = total - a - b; c >= 0; --c) {
                        const int d = total - a - b - c;
                        mi[n] = {a, b, c, d};
                        idx[a][b][c][d] = n++;
                    }
    }
};

const Table& table()
{
    static const Table t;
    return t;
}

int total(const std::array<int, 4>& m) { return m[0] + m[1] + m[2] + m[3]; }

}  // namespace

int index(int m0, int m1, int m2, int m3)
{
    if (m0 < 0 || m1 < 0 || m2 < 0 || m3 < 0 || m0 + m1 + m2 + m3 > 3)
        return -1;
    return table().idx[m0][m1][m2][m3];
}

std::array<int, 4> multi_index(int i) { return table().mi[i]; }

double Jet::at(int m0, int m1, int m2, int m3) const
{
    const int i = index(m0, m1, m2, m3);
    if (i < 0 || m0 + m1 + m2 + m3 > order)
        throw std::out_of_range("jet component beyond order");
    return c[i];
}

Jet from_radial(const double d[4][4], double r, int order)
{
    Jet J;
    J.order = order;
    for (int i = 0; i < kSize; ++i) {
        const auto m = multi_index(i);
        const int ti = m[0];
        const int s = m[1] + m[2] + m[3];
        if (ti + s > order)
            continue;
        double val = 0.0;
        if (s == 0) {
            val = d[ti][0];
        } else if (s == 1) {
            val = m[1] == 1 ? d[ti][1] : 0.0;
        } else if (s == 2) {
            const double fr = r > 0.0 ? d[ti][1] / r : d[ti][2];
            if (m[1] == 2)
                val = d[ti][2];
            else if (m[2] == 2 || m[3] == 2)
                val = fr;
        } else {
            const double q = r > 0.0 ? d[ti][2] / r - d[ti][1] / (r * r) : 0.0;
            if (m[1] == 3)
                val = r > 0.0 ? d[ti][3] : 0.0;
            else if (m[1] == 1 && (m[2] == 2 || m[3] == 2))
                val = q;
        }
        J.c[i] = val;
    }
    return J;
}

Jet apply_d(const Jet& w, int alpha)
{
    if (w.order < 1)
        throw std::invalid_argument("apply_d: order 0 jet");
    Jet o;
    o.order = w.order - 1;
    for (int i = 0; i < kSize; ++i) {
        auto m = multi_index(i);
        if (total(m) > o.order)
            continue;
        m[alpha] += 1;
        o.c[i] = w.c[index(m[0], m[1], m[2], m[3])];
    }
    return o;
}

namespace {

// jet of X g where X is the coordinate with index alpha and value p
Jet times_coordinate(const Jet& g, int alpha, double p)
{
    Jet o;
    o.order = g.order;
    for (int i = 0; i < kSize; ++i) {
        auto m = multi_index(i);
        if (total(m) > o.order)
            continue;
        double v = p * g.c[i];
        if (m[alpha] > 0) {
            auto mm = m;
            mm[alpha] -= 1;
            v += m[alpha] * g.c[index(mm[0], mm[1], mm[2], mm[3])];
        }
        o.c[i] = v;
    }
    return o;
}

}  // namespace

Jet apply_boost(const Jet& w, int a, double t, const std::array<double, 3>& x)
{
    const Jet wt = apply_d(w, 0);
    const Jet wa = apply_d(w, a);
    const Jet p = times_coordinate(wt, a, x[a - 1]);
    const Jet q = times_coordinate(wa, 0, t);
    Jet o;
    o.order = p.order;
    for (int i = 0; i < kSize; ++i)
        o.c[i] = p.c[i] + q.c[i];
    return o;
}

const std::vector<Word>& words_up_to_order2()
{
    using L = Letter;
    static const std::vector<Word> w{{"", {}},
                                     {"t", {L::T}},
                                     {"x", {L::X}},
                                     {"L", {L::L}},
                                     {"tt", {L::T, L::T}},
                                     {"tx", {L::T, L::X}},
                                     {"xx", {L::X, L::X}},
                                     {"tL", {L::T, L::L}},
                                     {"xL", {L::X, L::L}},
                                     {"LL", {L::L, L::L}}};
    return w;
}

std::vector<Jet> family(const Word& word, const Jet& base, double t, const std::array<double, 3>& x)
{
    std::vector<Jet> cur{base};
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
        std::vector<Jet> next;
        for (const Jet& j : cur) {
            if (*it == Letter::T) {
                next.push_back(apply_d(j, 0));
            } else {
                for (int a = 1; a <= 3; ++a)
                    next.push_back(*it == Letter::X ? apply_d(j, a) : apply_boost(j, a, t, x));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace wkg::jet
