#pragma once

// Generated by tests/oracle/gen_oracles.py; do not edit by hand.

namespace oracle {

inline constexpr int kTableSign[8][8] = {
    { 1,  1,  1,  1,  1,  1,  1,  1},
    { 1, -1,  1, -1,  1, -1, -1,  1},
    { 1, -1, -1,  1,  1,  1, -1, -1},
    { 1,  1, -1, -1,  1, -1,  1, -1},
    { 1, -1, -1, -1, -1,  1,  1,  1},
    { 1,  1, -1,  1, -1, -1, -1,  1},
    { 1,  1,  1, -1, -1,  1, -1, -1},
    { 1, -1,  1,  1, -1, -1,  1, -1},
};
inline constexpr int kTableIndex[8][8] = {
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 0, 3, 2, 5, 4, 7, 6},
    {2, 3, 0, 1, 6, 7, 4, 5},
    {3, 2, 1, 0, 7, 6, 5, 4},
    {4, 5, 6, 7, 0, 1, 2, 3},
    {5, 4, 7, 6, 1, 0, 3, 2},
    {6, 7, 4, 5, 2, 3, 0, 1},
    {7, 6, 5, 4, 3, 2, 1, 0},
};

struct ProductCase {
  double x[8];
  double y[8];
  double xy[8];
};
inline constexpr ProductCase kProducts[] = {
    {{0.25, -0.25, -1.25, 0.5, 0.5, 0.25, -2.25, -0.5}, {0.0, -1.5, -2.0, 1.0, 0.5, 0.0, -1.75, -1.0}, {-8.0625, -2.125, -1.0, -0.9375, 2.0625, 1.75, -0.3125, 2.9375}},
    {{-1.5, -2.25, -0.75, 0.25, -2.25, -0.5, 0.0, 0.0}, {1.0, 0.75, -0.75, 1.25, 0.5, 1.0, -0.5, -2.0}, {0.9375, -6.125, 5.5, 4.875, -1.0, -3.0625, 2.3125, 3.6875}},
    {{2.25, -0.25, 0.5, -0.25, 0.75, -0.5, -0.75, 2.0}, {-1.25, 1.0, -2.0, 0.75, -2.25, 0.25, 1.75, 0.75}, {0.25, 5.5625, -6.4375, 7.75, -4.125, -3.25, 2.75, -2.0}},
    {{0.5, -1.5, 1.0, 1.25, 0.25, -2.0, -1.5, 2.25}, {-1.0, -2.0, 0.0, 0.25, -0.75, 1.75, -2.25, 0.25}, {-4.0625, -5.0, -9.25, -4.5, 8.5, 1.8125, 1.0625, -1.75}},
    {{2.0, -2.25, -0.5, -0.5, 0.5, 0.5, 1.75, 1.0}, {-2.0, 2.0, -1.25, -1.75, -0.25, -0.25, -2.25, 1.25}, {1.9375, 4.3125, -6.25, 2.875, -5.5, 1.625, -13.0625, 0.6875}},
    {{-0.25, -1.25, -1.75, -0.5, 0.25, 0.5, 1.25, 1.25}, {0.75, -2.0, -1.75, 0.0, -0.5, -1.0, 1.5, 1.0}, {-8.25, -0.6875, 2.875, -2.8125, -1.0, 0.5625, 2.625, 2.9375}},
};

struct SqrtCase {
  double alpha, beta;
  double u, v, u_alpha, u_beta, v_alpha, v_beta;
};
inline constexpr SqrtCase kSqrtStem[] = {
    {0.5, 1.5, -0.30339324037481823, 1.0184979658254656, 0.51792465801001244, 0.41679357788507303, -0.41679357788507303, -0.84007262975727502},
    {-0.69999999999999996, 2.6000000000000001, 0.3756829777453359, -0.12745858421315992, 0.1056432807802002, -0.33431210685652168, 0.33431210685652168, 0.20368834555955398},
    {1.0, 2.0, 0.0, 0.5, 0.0, 0.25, -0.25, -0.5},
    {0.25, 0.80000000000000004, -0.71229583992015375, 3.0587528269678902, 0.40906997605838085, 0.67880277827895741, -0.67880277827895741, -7.2378120913613442},
    {-1.3, 1.8999999999999999, -0.46058960034356128, 0.64983134688028235, -0.17558752788795442, 0.22210543995379127, -0.22210543995379127, -0.85962052460404113},
    {2.0, 3.5, 0.057142857142857143, 0.089795918367346939, -0.029714285714285714, 0.0042448979591836735, -0.0042448979591836735, -0.081026239067055394},
};

}  // namespace oracle
