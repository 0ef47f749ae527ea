#pragma once

// Frozen output of tests/oracles/distribution_table.py (mpmath, 50 digits).

namespace hs::testing {

struct FCase {
    double f, d1, d2, survival;
};
struct TCase {
    double t, nu, survival;
};

inline constexpr FCase kFTable[] = {
    {0.0, 2, 15, 1.0},
    {0.39473684210526315789, 2, 15, 0.68065500083357454611},
    {1.0, 2, 10, 0.40187757201646090535},
    {3.5, 2, 100, 0.033947759417621771994},
    {7.2, 2, 5000, 0.00075435169202217096767},
    {12.0, 2, 30, 0.00014822191618709903375},
    {0.5, 5, 3, 0.76737608199992144416},
    {2.75, 4, 40, 0.041228299223816262277},
};

inline constexpr TCase kTTable[] = {
    {0.0, 9, 0.5},
    {15.81138830084189666, 9, 3.5666444944765087519e-8},
    {1.833, 9, 0.050008970025291509405},
    {-1.2, 9, 0.86961340130476915874},
    {2.5, 4, 0.033383272405994072519},
    {-3.1, 20, 0.99717756153043790611},
    {0.7, 1, 0.30559988778578522},
    {4.0, 60, 0.000088161193531987062527},
};

}  // namespace hs::testing
